#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ncpick/kernels.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"
#include "ncpick/realization.hpp"

namespace ncpick {

/// Left-tangential data A0 S(Z0) = B0 over the disk of Q0.
struct PickProblem {
  NcMatrixPolynomial q0;
  MatrixTuple z0;
  Matrix a0;  // (E n) x (Y n)
  Matrix b0;  // (E n) x (U n)

  int level() const { return z0.n(); }
  int dim_e() const { return static_cast<int>(a0.rows()) / z0.n(); }
  int dim_y() const { return static_cast<int>(a0.cols()) / z0.n(); }
  int dim_u() const { return static_cast<int>(b0.cols()) / z0.n(); }

  /// Throws DimensionError on shape problems, DomainError if Z0 is outside the disk.
  void validate() const;
};

/// Direct sum of several problems sharing Q0 and coefficient dimensions.
PickProblem multi_point_to_single(const std::vector<PickProblem>& problems);

struct PickCertificate {
  PsdCertificate certificate;
  ChoiMatrix choi;
  int amplification = 1;
};

/// Choi test of the de Branges-Rovnyak kernel at the k-fold amplified point.
PickCertificate pick_certificate(const PickProblem& p, int amplification = 1, double tol = 1e-9);

struct SolveOptions {
  double tol = 1e-9;
  int amplification = 1;
  int samples = 100;
  std::uint64_t seed = 0;
  /// contractivity samples are drawn with ||Q0(Z)|| <= sample_radius
  double sample_radius = 0.95;
  std::vector<int> sample_levels{1, 2, 3};
  SynthesisOptions synthesis;
};

struct PickReport {
  PsdCertificate certificate;
  int amplification = 1;
  std::optional<Colligation> colligation;
  SynthesisDiagnostics synthesis;
  /// ||A0 S(Z0) - B0||
  double interp_residual = 0.0;
  int contractivity_samples = 0;
  double max_sample_norm = 0.0;
};

/// Certify, synthesize and verify. Infeasible data give a report without a colligation.
PickReport solve_pick(const PickProblem& p, const SolveOptions& opt = {});

/// sum_a Z^{a^T} X S_a for a polynomial S (d variables, dimY x dimU coefficients).
Matrix ltoa_eval(const NcMatrixPolynomial& s, const MatrixTuple& z0, const Matrix& x);
/// sum_a Z^a X S_a.
Matrix twisted_ltoa_eval(const NcMatrixPolynomial& s, const MatrixTuple& z0, const Matrix& x);

/// The same sums for a realized function whose Q0 is homogeneous linear,
/// computed exactly by a Stein solve (untwisted) or a resolvent (twisted).
/// Requires ||[Z_1 ... Z_d]|| < 1.
Matrix ltoa_eval(const RealizedFunction& f, const MatrixTuple& z0, const Matrix& x);
Matrix twisted_ltoa_eval(const RealizedFunction& f, const MatrixTuple& z0, const Matrix& x);

/// LTOA data (X S)^L(Z0) = Y; X is n x dimY, Y is n x dimU.
struct LtoaProblem {
  MatrixTuple z0;
  Matrix x;
  Matrix y;
};

struct LtoaCertificate {
  PsdCertificate certificate;
  /// T with T - sum_i Z_i T Z_i^* = X X^* - Y Y^*
  Matrix t;
};

LtoaCertificate ltoa_certificate(const LtoaProblem& p, double tol = 1e-9);

/// Complete-positivity test of P -> R(P) (x) I_Y - Lambda0 (R(P) (x) I_U) Lambda0^*,
/// where R(P) solves R - Q0(Z0)(R (x) I_R)Q0(Z0)^* = P, at amplification k
/// (0 selects k = n).
PsdCertificate stein_dominance_certificate(const NcMatrixPolynomial& q0, const MatrixTuple& z0,
                                           const Matrix& lambda0, int amplification = 0,
                                           double tol = 1e-9);

struct RefuterResult {
  std::optional<Matrix> counterexample;
  int amplification = 0;
  int trials_run = 0;
  /// most negative eigenvalue seen in the conclusion, over accepted samples
  double worst_eig = 0.0;
};

/// Random search for P >= 0 meeting both strict-Stein hypotheses at the
/// k = n dimY amplification while violating the conclusion. A returned
/// counterexample refutes solvability; absence proves nothing.
RefuterResult strict_stein_refuter(const NcMatrixPolynomial& q, const MatrixTuple& z0,
                                   const Matrix& lambda0, double delta, int trials,
                                   std::uint64_t seed, double tol = 1e-9);
/// Serial reference for strict_stein_refuter.
RefuterResult strict_stein_refuter_serial(const NcMatrixPolynomial& q, const MatrixTuple& z0,
                                          const Matrix& lambda0, double delta, int trials,
                                          std::uint64_t seed, double tol = 1e-9);

}  // namespace ncpick
