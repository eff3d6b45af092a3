#pragma once

// Dense complex linear algebra shared by every module.
//
// Layout convention. An operator between spaces of the form V (x) C^n
// (a coefficient space V amplified to level n) is stored with the
// coefficient index outermost and the point index innermost:
// row/column (v, i) lives at v * n + i. Consequently the value of a
// polynomial Q(Z) = sum_a Q_a (x) Z^a is the ordinary Kronecker product
// kron(Q_a, Z^a), block (i, j) of size n x n equals sum_a (Q_a)_{ij} Z^a,
// and "P (x) I_V" in operator notation is kron(I_V, P) here.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ncpick {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Shapes of operands do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point lies outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite input, a singular system, or a conditioning bound exceeded.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity failed beyond tolerance. Signals a bug, never data.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Largest singular value. Throws NumericalError on non-finite entries.
double operator_norm(const Matrix& m);

/// Smallest singular value (0 for empty matrices).
double min_singular_value(const Matrix& m);

/// 2-norm condition number; +inf when singular.
double condition_number(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

/// Block-diagonal direct sum.
Matrix block_diag(const Matrix& a, const Matrix& b);

/// Matrix unit e_i e_j^* of size n x n.
Matrix matrix_unit(int n, int i, int j);

/// Orthonormal basis (columns) of the numerical null space of `m`.
/// Singular values at or below rel_tol * max(1, sigma_max) count as zero.
Matrix null_space(const Matrix& m, double rel_tol);

/// Numerical rank with threshold rel_tol * sigma_max.
int numerical_rank(const Matrix& m, double rel_tol);

bool all_finite(const Matrix& m);

/// Direct sum of two amplified operators. `a` acts V (x) C^na -> W (x) C^na
/// and `b` acts V (x) C^nb -> W (x) C^nb (same V, W); the result acts on
/// V (x) C^(na+nb) with the point index of `b` offset by na. This is the
/// value an nc function takes at a direct-sum point.
Matrix amplified_direct_sum(const Matrix& a, int na, const Matrix& b, int nb);

/// k-fold amplified direct sum of `a` (level n) with itself.
Matrix amplified_repeat(const Matrix& a, int n, int k);

}  // namespace ncpick
