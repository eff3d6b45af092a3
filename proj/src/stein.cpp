#include "ncpick/stein.hpp"

namespace ncpick {

SteinOperator::SteinOperator(std::vector<Matrix> left, std::vector<Matrix> right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.empty() || left_.size() != right_.size())
    throw DimensionError("SteinOperator: need matching nonempty coefficient lists");
  n_ = static_cast<int>(left_[0].rows());
  m_ = static_cast<int>(right_[0].rows());
  for (std::size_t k = 0; k < left_.size(); ++k)
    if (left_[k].rows() != n_ || left_[k].cols() != n_ || right_[k].rows() != m_ ||
        right_[k].cols() != m_)
      throw DimensionError("SteinOperator: coefficient shapes");
  super_ = Matrix::Zero(n_ * m_, n_ * m_);
  for (std::size_t k = 0; k < left_.size(); ++k) super_ += kron(right_[k].conjugate(), left_[k]);
  Matrix sys = Matrix::Identity(n_ * m_, n_ * m_) - super_;
  if (!all_finite(sys)) throw NumericalError("SteinOperator: non-finite coefficients");
  lu_.compute(sys);
  if (!(lu_.rcond() > 1e-13)) throw NumericalError("SteinOperator: singular Stein equation");
}

Matrix SteinOperator::apply_map(const Matrix& t) const {
  Matrix out = Matrix::Zero(n_, m_);
  for (std::size_t k = 0; k < left_.size(); ++k) out += left_[k] * t * right_[k].adjoint();
  return out;
}

Matrix SteinOperator::solve(const Matrix& p) const {
  if (p.rows() != n_ || p.cols() != m_) throw DimensionError("SteinOperator::solve: shape");
  Vector x = lu_.solve(p.reshaped());
  return x.reshaped(n_, m_);
}

Matrix stein_solve_doubling(const SteinOperator& op, const Matrix& p, double tol,
                            int max_squarings) {
  const int n = op.rows(), m = op.cols();
  if (p.rows() != n || p.cols() != m) throw DimensionError("stein_solve_doubling: shape");
  Vector x = p.reshaped();
  Matrix pw = op.superoperator();
  for (int k = 0; k < max_squarings; ++k) {
    x += pw * x;
    double nrm = pw.norm();
    if (nrm <= tol) return x.reshaped(n, m);
    if (!std::isfinite(nrm)) break;
    pw = pw * pw;
  }
  throw NumericalError("stein_solve_doubling: powers did not decay");
}

}  // namespace ncpick
