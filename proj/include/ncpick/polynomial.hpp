#pragma once

#include <map>
#include <vector>

#include "ncpick/linalg.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/word.hpp"

namespace ncpick {

/// Finitely supported map from words to s x r coefficient matrices.
/// Terms with an exactly zero coefficient are never stored.
class NcMatrixPolynomial {
 public:
  NcMatrixPolynomial() = default;
  NcMatrixPolynomial(int d, int s, int r);

  /// Q(z) = [z_1 ... z_d], a 1 x d linear pencil.
  static NcMatrixPolynomial row_pencil(int d);
  /// Single-variable scalar polynomial sum_k c[k] z^k.
  static NcMatrixPolynomial univariate(const std::vector<cplx>& coeffs);
  static NcMatrixPolynomial constant(int d, const Matrix& m);

  int d() const { return d_; }
  int s() const { return s_; }
  int r() const { return r_; }
  const std::map<Word, Matrix>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int degree() const;
  bool is_homogeneous_linear() const;

  /// Adds m to the coefficient of w, dropping the term if it becomes zero.
  void add_term(const Word& w, const Matrix& m);
  /// Coefficient of w, zero if absent.
  Matrix coeff(const Word& w) const;
  /// Drops coefficients whose operator norm is at most tol.
  NcMatrixPolynomial pruned(double tol) const;

  bool operator==(const NcMatrixPolynomial& o) const;

 private:
  int d_ = 1, s_ = 1, r_ = 1;
  std::map<Word, Matrix> terms_;
};

/// Product with word concatenation; coefficient shapes must chain.
NcMatrixPolynomial operator*(const NcMatrixPolynomial& p, const NcMatrixPolynomial& q);
NcMatrixPolynomial operator+(const NcMatrixPolynomial& p, const NcMatrixPolynomial& q);

/// sum_a kron(Q_a, Z^a), an (s n) x (r n) matrix.
Matrix eval_nc_poly(const NcMatrixPolynomial& q, const MatrixTuple& z);

struct DomainStatus {
  bool inside = false;
  double norm = 0.0;
  double margin = 0.0;
};

/// inside iff ||Q(Z)|| < 1; margin = 1 - ||Q(Z)||.
DomainStatus in_domain(const NcMatrixPolynomial& q, const MatrixTuple& z);

}  // namespace ncpick
