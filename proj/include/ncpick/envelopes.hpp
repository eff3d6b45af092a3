#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncpick/linalg.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"

namespace ncpick {

enum class WitnessKind { DirectSum, Similarity, LeftInjectiveIntertwiner };

std::string to_string(WitnessKind k);

/// Certifies Ztilde against Z = direct sum of generators with the given
/// multiplicities: `matrix` is I with I Ztilde_k = Z_k I for every k. For
/// kind Similarity it is square and invertible, so Ztilde = I^{-1} Z I.
struct EnvelopeWitness {
  WitnessKind kind = WitnessKind::LeftInjectiveIntertwiner;
  std::vector<int> multiplicities;
  Matrix matrix;
};

/// Direct sum of generator j repeated multiplicities[j] times, in generator order.
MatrixTuple nc_envelope_point(const std::vector<MatrixTuple>& generators,
                              const std::vector<int>& multiplicities);

/// Basis (columns, column-major vec) of all I with I Ztilde_k = Z_k I.
Matrix intertwiner_space(const MatrixTuple& z, const MatrixTuple& ztilde, double rel_tol = 1e-9);

/// Searches direct sums with total multiplicity 1..max_multiplicity for an
/// injective intertwiner. Random combinations of a nullspace basis are tried
/// at least 20 times per candidate.
std::optional<EnvelopeWitness> full_envelope_membership(const MatrixTuple& ztilde,
                                                        const std::vector<MatrixTuple>& generators,
                                                        int max_multiplicity,
                                                        double rank_tol = 1e-8,
                                                        std::uint64_t seed = 0);

/// As above, restricted to square invertible intertwiners with condition
/// number at most cond_bound.
std::optional<EnvelopeWitness> similarity_envelope_membership(
    const MatrixTuple& ztilde, const std::vector<MatrixTuple>& generators, int max_multiplicity,
    double cond_bound = 1e12, std::uint64_t seed = 0);

struct JordanData {
  std::vector<cplx> eigenvalues;
  /// longest Jordan chain per eigenvalue
  std::vector<int> chain_lengths;
  /// algebraic multiplicity per eigenvalue
  std::vector<int> multiplicities;
  /// linkage radius used to group computed eigenvalues
  double radius = 0.0;
  /// two groups lie within 10 radii of each other
  bool ambiguous = false;
};

/// Eigenvalues grouped by single linkage at radius
/// max(cluster_tol, 100 (eps max(1, ||M||))^(1/dim)); chain lengths from
/// numerical nullities of (M - lambda I)^k.
JordanData jordan_spectral_data(const Matrix& m, double cluster_tol = 1e-8);

/// p^{(k)}(lambda) = 0 for k < vanish_orders, and, when set,
/// p^{(nonvanish_order)}(lambda) / nonvanish_order! = 1.
struct HermiteConstraint {
  cplx lambda = 0.0;
  int vanish_orders = 0;
  std::optional<int> nonvanish_order;
};

/// Minimal-degree scalar polynomial meeting the constraints (confluent
/// Vandermonde solve). A nonvanish order must equal the vanish count at its
/// node; at most one constraint may carry one.
NcMatrixPolynomial hermite_separating_poly(const std::vector<HermiteConstraint>& constraints);

struct ZariskiResult {
  bool member = false;
  /// vanishes on Omega but not at Ztilde; set only for non-members
  std::optional<NcMatrixPolynomial> separator;
  bool ambiguous = false;
};

/// Single-variable closure test: Ztilde is a member iff each of its
/// eigenvalues occurs in Omega with at least the same chain length.
ZariskiResult zariski_membership_d1(const Matrix& ztilde, const std::vector<Matrix>& omega,
                                    double cluster_tol = 1e-8);

}  // namespace ncpick
