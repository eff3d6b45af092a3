#include "ncpick/polynomial.hpp"

#include <algorithm>

namespace ncpick {

NcMatrixPolynomial::NcMatrixPolynomial(int d, int s, int r) : d_(d), s_(s), r_(r) {
  if (d < 1 || s < 1 || r < 1) throw DimensionError("polynomial dimensions must be positive");
}

NcMatrixPolynomial NcMatrixPolynomial::row_pencil(int d) {
  NcMatrixPolynomial q(d, 1, d);
  for (int i = 1; i <= d; ++i) {
    Matrix c = Matrix::Zero(1, d);
    c(0, i - 1) = 1.0;
    q.add_term(Word(d, {i}), c);
  }
  return q;
}

NcMatrixPolynomial NcMatrixPolynomial::univariate(const std::vector<cplx>& coeffs) {
  NcMatrixPolynomial q(1, 1, 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    q.add_term(Word(1, std::vector<int>(k, 1)), Matrix::Constant(1, 1, coeffs[k]));
  return q;
}

NcMatrixPolynomial NcMatrixPolynomial::constant(int d, const Matrix& m) {
  NcMatrixPolynomial q(d, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  q.add_term(Word::empty(d), m);
  return q;
}

int NcMatrixPolynomial::degree() const {
  int deg = 0;
  for (const auto& [w, c] : terms_) deg = std::max(deg, static_cast<int>(w.length()));
  return deg;
}

bool NcMatrixPolynomial::is_homogeneous_linear() const {
  for (const auto& [w, c] : terms_)
    if (w.length() != 1) return false;
  return true;
}

void NcMatrixPolynomial::add_term(const Word& w, const Matrix& m) {
  if (w.alphabet() != d_) throw DimensionError("add_term: word alphabet mismatch");
  if (m.rows() != s_ || m.cols() != r_) throw DimensionError("add_term: coefficient shape");
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (!m.isZero(0.0)) terms_.emplace(w, m);
    return;
  }
  it->second += m;
  if (it->second.isZero(0.0)) terms_.erase(it);
}

Matrix NcMatrixPolynomial::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Matrix::Zero(s_, r_) : it->second;
}

NcMatrixPolynomial NcMatrixPolynomial::pruned(double tol) const {
  NcMatrixPolynomial out(d_, s_, r_);
  for (const auto& [w, c] : terms_)
    if (operator_norm(c) > tol) out.terms_.emplace(w, c);
  return out;
}

bool NcMatrixPolynomial::operator==(const NcMatrixPolynomial& o) const {
  if (d_ != o.d_ || s_ != o.s_ || r_ != o.r_ || terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  for (auto b = o.terms_.begin(); b != o.terms_.end(); ++a, ++b)
    if (!(a->first == b->first) || a->second != b->second) return false;
  return true;
}

NcMatrixPolynomial operator*(const NcMatrixPolynomial& p, const NcMatrixPolynomial& q) {
  if (p.d() != q.d() || p.r() != q.s()) throw DimensionError("polynomial product: shapes");
  NcMatrixPolynomial out(p.d(), p.s(), q.r());
  for (const auto& [u, a] : p.terms())
    for (const auto& [v, b] : q.terms()) out.add_term(word_concat(u, v), a * b);
  return out;
}

NcMatrixPolynomial operator+(const NcMatrixPolynomial& p, const NcMatrixPolynomial& q) {
  if (p.d() != q.d() || p.s() != q.s() || p.r() != q.r())
    throw DimensionError("polynomial sum: shapes");
  NcMatrixPolynomial out = p;
  for (const auto& [w, c] : q.terms()) out.add_term(w, c);
  return out;
}

Matrix eval_nc_poly(const NcMatrixPolynomial& q, const MatrixTuple& z) {
  if (q.d() != z.d()) throw DimensionError("eval_nc_poly: variable count mismatch");
  const int n = z.n();
  Matrix out = Matrix::Zero(q.s() * n, q.r() * n);
  // terms are sorted lexicographically, so consecutive words share prefixes;
  // a prefix stack avoids recomputing common products
  std::vector<Matrix> stack{Matrix::Identity(n, n)};
  std::vector<int> prefix;
  for (const auto& [w, c] : q.terms()) {
    const auto& l = w.letters();
    std::size_t common = 0;
    while (common < prefix.size() && common < l.size() && prefix[common] == l[common]) ++common;
    prefix.resize(common);
    stack.resize(common + 1);
    for (std::size_t k = common; k < l.size(); ++k) {
      stack.push_back(stack.back() * z[l[k] - 1]);
      prefix.push_back(l[k]);
    }
    const Matrix& zw = stack.back();
    for (int i = 0; i < q.s(); ++i)
      for (int j = 0; j < q.r(); ++j)
        if (c(i, j) != 0.0) out.block(i * n, j * n, n, n) += c(i, j) * zw;
  }
  return out;
}

DomainStatus in_domain(const NcMatrixPolynomial& q, const MatrixTuple& z) {
  DomainStatus st;
  st.norm = operator_norm(eval_nc_poly(q, z));
  st.margin = 1.0 - st.norm;
  st.inside = st.norm < 1.0;
  return st;
}

}  // namespace ncpick
