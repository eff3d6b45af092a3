#pragma once

#include <cstdint>
#include <vector>

#include "ncpick/kernels.hpp"
#include "ncpick/linalg.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"

namespace ncpick {

/// U = [A B; C D] : X (+) U -> (R (x) X) (+) Y, with R (x) X ordered R-major.
struct Colligation {
  int dimX = 0, dimU = 0, dimY = 0, r = 1;
  Matrix A, B, C, D;
  bool contractive = false;
  bool unitary = false;

  Colligation() = default;
  Colligation(int dimX, int dimU, int dimY, int r, Matrix A, Matrix B, Matrix C, Matrix D);

  /// Throws DimensionError on inconsistent block shapes.
  void validate() const;
  Matrix assembled() const;
};

struct AmplifiedColligation {
  Matrix A, B, C, D;
};

/// Blocks amplified to level n as kron(block, I_n).
AmplifiedColligation amplify(const Colligation& col, int n);

/// Transfer function of a colligation over the disk of Q0 (one row, r = col.r columns).
struct RealizedFunction {
  Colligation col;
  NcMatrixPolynomial q0;
};

/// "Q0(Z) (x) I_X" as an operator (R (x) X) (x) C^n -> X (x) C^n.
Matrix state_coupling(const NcMatrixPolynomial& q0, const MatrixTuple& z, int dimX);

/// S(Z) = D + C (I - G A)^{-1} G B with amplified blocks and G = state_coupling.
/// Throws DomainError when Z is outside the disk or ||A|| > 1 + 1e-10.
Matrix transfer_eval(const RealizedFunction& f, const MatrixTuple& z);

/// transfer_eval over a batch of points, one OpenMP iteration per point.
std::vector<Matrix> transfer_eval_batch(const RealizedFunction& f,
                                        const std::vector<MatrixTuple>& points);
/// Serial reference for transfer_eval_batch.
std::vector<Matrix> transfer_eval_batch_serial(const RealizedFunction& f,
                                               const std::vector<MatrixTuple>& points);

/// Certificate for I - U^*U >= 0.
PsdCertificate colligation_contraction_check(const Colligation& col, double tol = 1e-9);

struct ColligationDims {
  int dimX = 1, dimU = 1, dimY = 1, r = 1;
};

/// Deterministic under seed. Unitary draws need r dimX + dimY = dimX + dimU.
Colligation random_contractive_colligation(const ColligationDims& dims, std::uint64_t seed,
                                           bool unitary = false);

struct SynthesisOptions {
  double tol = 1e-9;
  /// relative eigenvalue cutoff for the Kolmogorov factor
  double kolmogorov_rank_tol = 1e-13;
  /// relative singular value cutoff on the D-family
  double span_rank_tol = 1e-10;
  bool unitary_completion = false;
};

struct SynthesisDiagnostics {
  PsdCertificate certificate;
  int state_dim = 0;
  int span_rank = 0;
  double gram_residual = 0.0;
  double gram_scale = 0.0;
  bool completed_unitary = false;
};

struct SynthesisResult {
  Colligation col;
  SynthesisDiagnostics diag;
};

/// Colligation whose transfer function S over the disk of Q0 satisfies
/// a0 S(Z0) = b0. a0 is (E n) x (Y n), b0 is (E n) x (U n).
/// Throws DomainError when the data are infeasible and ConsistencyError
/// when the D- and R-families fail the Gram identity.
SynthesisResult lurking_isometry_synthesize(const NcMatrixPolynomial& q0, const MatrixTuple& z0,
                                            const Matrix& a0, const Matrix& b0,
                                            const SynthesisOptions& opt = {});

/// Choi matrix of P -> dBR kernel at (Z0, Z0) with data (a0, b0).
ChoiMatrix dbr_choi(const NcMatrixPolynomial& q0, const MatrixTuple& z0, const Matrix& a0,
                    const Matrix& b0);

}  // namespace ncpick
