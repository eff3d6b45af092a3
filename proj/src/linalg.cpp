#include "ncpick/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncpick {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

static RealVector singular_values(const Matrix& m) {
  if (!all_finite(m)) throw NumericalError("non-finite matrix entry");
  if (m.size() == 0) return RealVector();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const Matrix& m) {
  RealVector s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

double min_singular_value(const Matrix& m) {
  RealVector s = singular_values(m);
  if (s.size() == 0) return 0.0;
  return s(s.size() - 1);
}

double condition_number(const Matrix& m) {
  RealVector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  double lo = s(s.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix matrix_unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Matrix null_space(const Matrix& m, double rel_tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  double thr = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > thr) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int numerical_rank(const Matrix& m, double rel_tol) {
  RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++rank;
  return rank;
}

Matrix amplified_direct_sum(const Matrix& a, int na, const Matrix& b, int nb) {
  if (na < 1 || nb < 1 || a.rows() % na || a.cols() % na || b.rows() % nb || b.cols() % nb)
    throw DimensionError("amplified_direct_sum: sizes not divisible by level");
  const Eigen::Index w = a.rows() / na, v = a.cols() / na;
  if (b.rows() / nb != w || b.cols() / nb != v)
    throw DimensionError("amplified_direct_sum: coefficient spaces differ");
  const int n = na + nb;
  Matrix out = Matrix::Zero(w * n, v * n);
  for (Eigen::Index p = 0; p < w; ++p)
    for (Eigen::Index q = 0; q < v; ++q) {
      out.block(p * n, q * n, na, na) = a.block(p * na, q * na, na, na);
      out.block(p * n + na, q * n + na, nb, nb) = b.block(p * nb, q * nb, nb, nb);
    }
  return out;
}

Matrix amplified_repeat(const Matrix& a, int n, int k) {
  if (k < 1) throw DimensionError("amplified_repeat: k must be positive");
  if (n < 1 || a.rows() % n || a.cols() % n)
    throw DimensionError("amplified_repeat: sizes not divisible by level");
  const Eigen::Index w = a.rows() / n, v = a.cols() / n;
  const int N = n * k;
  Matrix out = Matrix::Zero(w * N, v * N);
  for (Eigen::Index p = 0; p < w; ++p)
    for (Eigen::Index q = 0; q < v; ++q)
      for (int c = 0; c < k; ++c)
        out.block(p * N + c * n, q * N + c * n, n, n) = a.block(p * n, q * n, n, n);
  return out;
}

}  // namespace ncpick
