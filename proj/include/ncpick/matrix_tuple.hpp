#pragma once

#include <vector>

#include "ncpick/linalg.hpp"
#include "ncpick/word.hpp"

namespace ncpick {

/// A d-tuple of n x n complex matrices.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  /// Throws DimensionError unless all components are square of one size n >= 1.
  explicit MatrixTuple(std::vector<Matrix> components);

  static MatrixTuple zero(int d, int n);
  static MatrixTuple scalar(std::vector<cplx> values);

  int d() const { return static_cast<int>(comps_.size()); }
  int n() const { return n_; }
  const Matrix& operator[](int k) const { return comps_[k]; }
  const std::vector<Matrix>& components() const { return comps_; }

  MatrixTuple scaled(cplx t) const;
  bool commutes(double tol) const;

 private:
  int n_ = 0;
  std::vector<Matrix> comps_;
};

/// Z^a = Z_{a1} ... Z_{ap}; the empty word gives I_n.
Matrix eval_word(const MatrixTuple& z, const Word& a);

/// Componentwise block-diagonal direct sum.
MatrixTuple direct_sum(const MatrixTuple& z, const MatrixTuple& w);

/// (alpha Z_k alpha^{-1})_k. Throws NumericalError when cond(alpha) > cond_bound.
MatrixTuple similarity(const MatrixTuple& z, const Matrix& alpha, double cond_bound = 1e12);

struct IntertwiningCheck {
  bool tuple_intertwines = false;
  bool values_intertwine = false;
  double tuple_residual = 0.0;
  double value_residual = 0.0;
  bool ok() const { return tuple_intertwines && values_intertwine; }
};

/// Tests alpha Z_k = Ztilde_k alpha for all k, and (I (x) alpha) V = Vtilde (I (x) alpha),
/// where V is an operator over n-blocks and Vtilde over m-blocks.
IntertwiningCheck check_intertwining(const MatrixTuple& z, const MatrixTuple& ztilde,
                                     const Matrix& alpha, const Matrix& v, const Matrix& vtilde,
                                     double tol);

}  // namespace ncpick
