#pragma once

#include <cstddef>
#include <vector>

#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"
#include "ncpick/realization.hpp"

namespace ncpick {

/// q_L(Z) = D + sum_{j=0}^{L} C (G A)^j G B with amplified blocks.
Matrix partial_sum_eval(const RealizedFunction& f, const MatrixTuple& z, int L);

/// q_L as an nc polynomial, by word convolution of the coefficients of Q0.
/// Coefficients with norm <= coeff_tol are dropped. Throws DimensionError
/// once an intermediate expansion would exceed word_cap words.
NcMatrixPolynomial extract_nc_polynomial(const RealizedFunction& f, int L, double coeff_tol = 0.0,
                                         std::size_t word_cap = 4096);

struct TruncationReport {
  int L = 0;
  /// ||S(Z) - q_L(Z)|| per sample
  std::vector<double> errors;
  /// max ||Q0(Z)|| over the samples, a stand-in for the compact set
  double rho = 0.0;
  /// rho^{L+1} / (1 - rho) ||C|| ||B||
  double apriori_bound = 0.0;
  double observed_max = 0.0;
};

/// Compares q_L with the transfer function on every sample, one OpenMP
/// iteration per sample. Throws DomainError if a sample has ||Q0(Z)|| >= 1
/// or ||A|| > 1, ConsistencyError if the bound is violated.
TruncationReport uniform_error_report(const RealizedFunction& f,
                                      const std::vector<MatrixTuple>& samples, int L);
/// Serial reference for uniform_error_report.
TruncationReport uniform_error_report_serial(const RealizedFunction& f,
                                             const std::vector<MatrixTuple>& samples, int L);

}  // namespace ncpick
