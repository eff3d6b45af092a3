#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ncpick/linalg.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"
#include "ncpick/stein.hpp"

namespace ncpick {

/// Linear map on n x n matrices with out_dim x out_dim values. `apply` must
/// be safe to call concurrently.
struct CpMap {
  int n = 0;
  int out_dim = 0;
  std::function<Matrix(const Matrix&)> apply;
};

/// n x n grid of out-blocks; block (i, j) = M(E_ij).
struct ChoiMatrix {
  int n = 0;
  int block_dim = 0;
  Matrix matrix;

  Matrix block(int i, int j) const {
    return matrix.block(i * block_dim, j * block_dim, block_dim, block_dim);
  }
};

struct PsdCertificate {
  bool psd = false;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double tol = 1e-9;
  /// min_eig lies in the dead band [-tol * max(1, max_eig), 0).
  bool marginal = false;
};

/// Choi block (i, j) = blocks[i] * blocks[j]^*.
struct KolmogorovFactor {
  int rank = 0;
  std::vector<Matrix> blocks;

  /// H : X (x) C^n -> E (x) C^n with K(P) = H (I_X (x) P) H^*.
  Matrix as_operator() const;
  Matrix reconstruct() const;
};

/// [M(E_ij)] assembled with one OpenMP task per matrix unit.
ChoiMatrix choi_matrix(const CpMap& m);
/// Serial reference for choi_matrix.
ChoiMatrix choi_matrix_serial(const CpMap& m);

/// Symmetrizes, then decides psd iff min_eig >= -rel_tol * max(1, max_eig).
/// Throws NumericalError when the input is far from Hermitian.
PsdCertificate psd_check(const Matrix& m, double rel_tol = 1e-9);

/// Kernel K(Z, W)(P) for points of the same finite set.
using KernelFn = std::function<Matrix(const MatrixTuple&, const MatrixTuple&, const Matrix&)>;

/// Choi test of K at the direct sum of all points in omega.
PsdCertificate cp_check_finite(const KernelFn& k, const std::vector<MatrixTuple>& omega,
                               double rel_tol = 1e-9, ChoiMatrix* choi_out = nullptr);

/// Eigen-factorization of a PSD Choi matrix, dropping eigenvalues below
/// rank_tol * max_eig. Throws DomainError when C fails psd_check(psd_tol).
KolmogorovFactor kolmogorov_factor(const ChoiMatrix& c, double rank_tol = 1e-10,
                                   double psd_tol = 1e-9);

/// n x n blocks G_rho of Q0(Z) (a 1 x r polynomial), so Q0(Z) = [G_1 ... G_r].
std::vector<Matrix> q0_blocks(const NcMatrixPolynomial& q0, const MatrixTuple& z);

/// Q0(Z) (P (x) I_R) Q0(W)^*.
Matrix phi_map(const NcMatrixPolynomial& q0, const MatrixTuple& z, const MatrixTuple& w,
               const Matrix& p);

/// k_{Q0}(Z, W) with the Stein system factored once for repeated application.
class SzegoKernel {
 public:
  /// Throws DimensionError unless Q0 has one row, DomainError unless both
  /// points lie in the domain of Q0.
  SzegoKernel(const NcMatrixPolynomial& q0, const MatrixTuple& z, const MatrixTuple& w);

  Matrix operator()(const Matrix& p) const { return op_->solve(p); }
  Matrix phi(const Matrix& p) const { return op_->apply_map(p); }
  const SteinOperator& stein() const { return *op_; }

 private:
  std::shared_ptr<const SteinOperator> op_;
};

/// T with T - Phi_{Z,W}(T) = P, by a dense solve.
Matrix szego_kernel_solve(const NcMatrixPolynomial& q0, const MatrixTuple& z,
                          const MatrixTuple& w, const Matrix& p);

struct SeriesResult {
  Matrix value;
  int terms = 0;
  double tail_bound = 0.0;
};

/// sum_{k<=L} Phi^k(P), stopping once (rz rw)^{L+1} / (1 - rz rw) ||P|| <= tol.
SeriesResult szego_kernel_series(const NcMatrixPolynomial& q0, const MatrixTuple& z,
                                 const MatrixTuple& w, const Matrix& p, double tol,
                                 int max_terms = 1000000);

/// a(Z) (k(P) (x) I_Y) a(W)^* - b(Z) (k(P) (x) I_U) b(W)^*.
Matrix dbr_kernel(const NcMatrixPolynomial& q0, const MatrixTuple& z, const MatrixTuple& w,
                  const Matrix& p, const Matrix& az, const Matrix& aw, const Matrix& bz,
                  const Matrix& bw);

/// The dBR expression for a kernel value T that is already known.
Matrix dbr_from_kernel_value(const Matrix& t, const Matrix& az, const Matrix& aw,
                             const Matrix& bz, const Matrix& bw);

}  // namespace ncpick
