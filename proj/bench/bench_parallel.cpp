// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "ncpick/interpolation.hpp"
#include "ncpick/okaweil.hpp"
#include "ncpick/random.hpp"

using namespace ncpick;

namespace {

struct Fixture {
  NcMatrixPolynomial q{2, 1, 2};
  RealizedFunction f;
  std::vector<MatrixTuple> points;
  MatrixTuple z0;
  Matrix lambda;

  explicit Fixture(int npoints) {
    Rng rng(1);
    q.add_term(Word(2, {1}), rng.gaussian(1, 2));
    q.add_term(Word(2, {2}), rng.gaussian(1, 2));
    f = {random_contractive_colligation({8, 2, 2, 2}, 2), q};
    for (int i = 0; i < npoints; ++i) points.push_back(random_domain_sample(rng, q, 3, 0.9));
    z0 = random_point_in_domain(rng, q, 3, 0.7);
    lambda = transfer_eval(f, z0).topLeftCorner(3, 3);
  }

  CpMap dbr_map() const {
    Matrix a = Matrix::Identity(6, 6), b = transfer_eval(f, z0);
    return {3, 6, [=, this](const Matrix& p) { return dbr_kernel(q, z0, z0, p, a, a, b, b); }};
  }
};

const Fixture& fixture() {
  static const Fixture fx(256);
  return fx;
}

void BM_choi(benchmark::State& st) {
  CpMap m = fixture().dbr_map();
  for (auto _ : st) benchmark::DoNotOptimize(choi_matrix(m));
}
void BM_choi_serial(benchmark::State& st) {
  CpMap m = fixture().dbr_map();
  for (auto _ : st) benchmark::DoNotOptimize(choi_matrix_serial(m));
}

void BM_transfer_batch(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(transfer_eval_batch(fixture().f, fixture().points));
}
void BM_transfer_batch_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(transfer_eval_batch_serial(fixture().f, fixture().points));
}

void BM_error_report(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(uniform_error_report(fixture().f, fixture().points, 8));
}
void BM_error_report_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(uniform_error_report_serial(fixture().f, fixture().points, 8));
}

void BM_refuter(benchmark::State& st) {
  const Fixture& fx = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(strict_stein_refuter(fx.q, fx.z0, fx.lambda, 0.1, 200, 3));
}
void BM_refuter_serial(benchmark::State& st) {
  const Fixture& fx = fixture();
  for (auto _ : st)
    benchmark::DoNotOptimize(strict_stein_refuter_serial(fx.q, fx.z0, fx.lambda, 0.1, 200, 3));
}

}  // namespace

BENCHMARK(BM_choi)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_choi_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transfer_batch)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transfer_batch_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_error_report)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_error_report_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_refuter)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_refuter_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
