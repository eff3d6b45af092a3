#pragma once

// Stein equations T - sum_k L_k T R_k^* = P on n x m matrices.

#include <vector>

#include <Eigen/LU>

#include "ncpick/linalg.hpp"

namespace ncpick {

class SteinOperator {
 public:
  /// left[k] is n x n, right[k] is m x m. The LU factorization of the
  /// vectorized operator is computed once; throws NumericalError when it is
  /// numerically singular.
  SteinOperator(std::vector<Matrix> left, std::vector<Matrix> right);

  int rows() const { return n_; }
  int cols() const { return m_; }

  /// sum_k L_k T R_k^*.
  Matrix apply_map(const Matrix& t) const;
  /// T with T - map(T) = P.
  Matrix solve(const Matrix& p) const;
  /// Superoperator sum_k conj(R_k) (x) L_k acting on column-major vec(T).
  const Matrix& superoperator() const { return super_; }

 private:
  int n_, m_;
  std::vector<Matrix> left_, right_;
  Matrix super_;
  Eigen::PartialPivLU<Matrix> lu_;
};

/// Solves the same equation by repeated squaring of the superoperator,
/// sum_j M^j = prod_k (I + M^(2^k)). Independent of the LU path.
/// Throws NumericalError if the powers do not decay below tol.
Matrix stein_solve_doubling(const SteinOperator& op, const Matrix& p, double tol = 1e-15,
                            int max_squarings = 60);

}  // namespace ncpick
