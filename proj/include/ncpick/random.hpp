#pragma once

#include <cstdint>
#include <random>

#include "ncpick/linalg.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"

namespace ncpick {

/// Seeded generator; substream(k) gives an independent generator per trial
/// so results do not depend on how trials are scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), eng_(mix(seed, 0)) {}

  Rng substream(std::uint64_t k) const { return Rng(mix(seed_, k + 1), 0); }

  double uniform(double lo = 0.0, double hi = 1.0);
  int uniform_int(int lo, int hi);
  double normal();
  cplx complex_normal();
  /// Uniform in the complex disk of the given radius.
  cplx disk(double radius);

  Matrix gaussian(int rows, int cols);
  /// Haar-distributed unitary.
  Matrix unitary(int n);
  /// Matrix with the given operator norm.
  Matrix with_norm(int rows, int cols, double norm);

  std::mt19937_64& engine() { return eng_; }

 private:
  Rng(std::uint64_t mixed, int) : seed_(mixed), eng_(mixed) {}
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

MatrixTuple random_tuple(Rng& rng, int d, int n);

/// Random direction scaled so that ||Q(Z)|| equals `target`.
/// Throws DomainError if ||Q(0)|| >= target.
MatrixTuple random_point_in_domain(Rng& rng, const NcMatrixPolynomial& q, int n, double target);

/// Random point with ||Q(Z)|| uniform in [0, max_norm].
MatrixTuple random_domain_sample(Rng& rng, const NcMatrixPolynomial& q, int n, double max_norm);

/// Well-conditioned invertible matrix with condition number at most `cond`.
Matrix random_invertible(Rng& rng, int n, double cond);

}  // namespace ncpick
