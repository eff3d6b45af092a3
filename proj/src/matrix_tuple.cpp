#include "ncpick/matrix_tuple.hpp"

namespace ncpick {

MatrixTuple::MatrixTuple(std::vector<Matrix> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw DimensionError("matrix tuple needs at least one component");
  n_ = static_cast<int>(comps_[0].rows());
  if (n_ < 1) throw DimensionError("matrix tuple level must be at least 1");
  for (const Matrix& c : comps_)
    if (c.rows() != n_ || c.cols() != n_)
      throw DimensionError("matrix tuple components must share one square size");
}

MatrixTuple MatrixTuple::zero(int d, int n) {
  return MatrixTuple(std::vector<Matrix>(d, Matrix::Zero(n, n)));
}

MatrixTuple MatrixTuple::scalar(std::vector<cplx> values) {
  std::vector<Matrix> c;
  for (cplx v : values) c.push_back(Matrix::Constant(1, 1, v));
  return MatrixTuple(std::move(c));
}

MatrixTuple MatrixTuple::scaled(cplx t) const {
  std::vector<Matrix> c;
  for (const Matrix& m : comps_) c.push_back(t * m);
  return MatrixTuple(std::move(c));
}

bool MatrixTuple::commutes(double tol) const {
  for (int i = 0; i < d(); ++i)
    for (int j = i + 1; j < d(); ++j)
      if ((comps_[i] * comps_[j] - comps_[j] * comps_[i]).norm() > tol) return false;
  return true;
}

Matrix eval_word(const MatrixTuple& z, const Word& a) {
  Matrix out = Matrix::Identity(z.n(), z.n());
  for (int l : a.letters()) {
    if (l < 1 || l > z.d()) throw DimensionError("eval_word: letter out of range");
    out = out * z[l - 1];
  }
  return out;
}

MatrixTuple direct_sum(const MatrixTuple& z, const MatrixTuple& w) {
  if (z.d() != w.d()) throw DimensionError("direct_sum: variable count mismatch");
  std::vector<Matrix> c;
  for (int k = 0; k < z.d(); ++k) c.push_back(block_diag(z[k], w[k]));
  return MatrixTuple(std::move(c));
}

MatrixTuple similarity(const MatrixTuple& z, const Matrix& alpha, double cond_bound) {
  if (alpha.rows() != z.n() || alpha.cols() != z.n())
    throw DimensionError("similarity: alpha must be n x n");
  double c = condition_number(alpha);
  if (!(c <= cond_bound)) throw NumericalError("similarity: alpha singular or ill-conditioned");
  Eigen::PartialPivLU<Matrix> lu(alpha);
  Matrix inv = lu.inverse();
  std::vector<Matrix> out;
  for (const Matrix& m : z.components()) out.push_back(alpha * m * inv);
  return MatrixTuple(std::move(out));
}

IntertwiningCheck check_intertwining(const MatrixTuple& z, const MatrixTuple& ztilde,
                                     const Matrix& alpha, const Matrix& v, const Matrix& vtilde,
                                     double tol) {
  const int n = z.n(), m = ztilde.n();
  if (z.d() != ztilde.d()) throw DimensionError("check_intertwining: variable count mismatch");
  if (alpha.rows() != m || alpha.cols() != n)
    throw DimensionError("check_intertwining: alpha must be m x n");
  if (v.rows() % n || v.cols() % n || vtilde.rows() % m || vtilde.cols() % m)
    throw DimensionError("check_intertwining: values not over point blocks");
  const int s = static_cast<int>(v.rows() / n), r = static_cast<int>(v.cols() / n);
  if (vtilde.rows() / m != s || vtilde.cols() / m != r)
    throw DimensionError("check_intertwining: values have different coefficient shapes");

  IntertwiningCheck out;
  for (int k = 0; k < z.d(); ++k)
    out.tuple_residual =
        std::max(out.tuple_residual, operator_norm(alpha * z[k] - ztilde[k] * alpha));
  Matrix lhs = kron(Matrix::Identity(s, s), alpha) * v;
  Matrix rhs = vtilde * kron(Matrix::Identity(r, r), alpha);
  out.value_residual = operator_norm(lhs - rhs);
  out.tuple_intertwines = out.tuple_residual <= tol;
  out.values_intertwine = out.value_residual <= tol;
  return out;
}

}  // namespace ncpick
