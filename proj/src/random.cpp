#include "ncpick/random.hpp"

#include <cmath>

namespace ncpick {

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng_);
}

int Rng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

cplx Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return cplx(re, im) / std::sqrt(2.0);
}

cplx Rng::disk(double radius) {
  double rad = radius * std::sqrt(uniform());
  double th = uniform(0.0, 2.0 * M_PI);
  return std::polar(rad, th);
}

Matrix Rng::gaussian(int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Matrix Rng::unitary(int n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    double a = std::abs(r(k, k));
    if (a > 0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

Matrix Rng::with_norm(int rows, int cols, double norm) {
  Matrix g = gaussian(rows, cols);
  double s = operator_norm(g);
  return s > 0 ? Matrix(g * (norm / s)) : g;
}

MatrixTuple random_tuple(Rng& rng, int d, int n) {
  std::vector<Matrix> c;
  for (int k = 0; k < d; ++k) c.push_back(rng.gaussian(n, n));
  return MatrixTuple(std::move(c));
}

MatrixTuple random_point_in_domain(Rng& rng, const NcMatrixPolynomial& q, int n, double target) {
  MatrixTuple dir = random_tuple(rng, q.d(), n);
  auto norm_at = [&](double t) { return operator_norm(eval_nc_poly(q, dir.scaled(t))); };
  if (norm_at(0.0) >= target) throw DomainError("random_point_in_domain: ||Q(0)|| >= target");
  double hi = 1.0;
  for (int it = 0; norm_at(hi) < target; ++it) {
    if (it > 60) throw DomainError("random_point_in_domain: polynomial bounded below target");
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (norm_at(mid) < target ? lo : hi) = mid;
  }
  return dir.scaled(lo);
}

MatrixTuple random_domain_sample(Rng& rng, const NcMatrixPolynomial& q, int n, double max_norm) {
  double floor_norm = operator_norm(eval_nc_poly(q, MatrixTuple::zero(q.d(), n)));
  double target = rng.uniform(floor_norm, max_norm);
  if (target <= floor_norm) return MatrixTuple::zero(q.d(), n);
  return random_point_in_domain(rng, q, n, target);
}

Matrix random_invertible(Rng& rng, int n, double cond) {
  Matrix u = rng.unitary(n), v = rng.unitary(n);
  Eigen::VectorXd s(n);
  for (int k = 0; k < n; ++k) s(k) = n == 1 ? 1.0 : std::pow(cond, -double(k) / (n - 1));
  return u * s.cast<cplx>().asDiagonal() * v.adjoint();
}

}  // namespace ncpick
