// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ncpick/envelopes.hpp"
#include "ncpick/interpolation.hpp"
#include "ncpick/okaweil.hpp"
#include "ncpick/random.hpp"

using namespace ncpick;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

NcMatrixPolynomial random_q0(Rng& rng, int d, int r, bool quadratic) {
  NcMatrixPolynomial q(d, 1, r);
  for (int i = 1; i <= d; ++i) q.add_term(Word(d, {i}), rng.gaussian(1, r));
  if (quadratic) q.add_term(Word(d, {d, 1}), 0.5 * rng.gaussian(1, r));
  return q;
}

Matrix jordan(int n, cplx lambda) {
  Matrix j = lambda * Matrix::Identity(n, n);
  for (int k = 0; k + 1 < n; ++k) j(k, k + 1) = 1.0;
  return j;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Kernel identities K - Phi(K) = P and k(P - Phi(P)) = P.
Outcome kernel_identities() {
  Rng rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int d = rng.uniform_int(1, 3), r = rng.uniform_int(1, 3);
    NcMatrixPolynomial q = random_q0(rng, d, r, t % 4 == 0);
    MatrixTuple z = random_point_in_domain(rng, q, rng.uniform_int(1, 4), rng.uniform(0.05, 0.95));
    MatrixTuple w = random_point_in_domain(rng, q, rng.uniform_int(1, 4), rng.uniform(0.05, 0.95));
    Matrix p = rng.gaussian(z.n(), w.n());
    const double scale = 1.0 + operator_norm(p);
    Matrix k = szego_kernel_solve(q, z, w, p);
    const double id1 = operator_norm(k - phi_map(q, z, w, k) - p);
    const double id2 = operator_norm(szego_kernel_solve(q, z, w, p - phi_map(q, z, w, p)) - p);
    worst = std::max(worst, std::max(id1, id2) / scale);
  }
  return {worst <= 1e-10, fmt("worst residual/(1+||P||) %.3e", worst)};
}

// Exact solve against the truncated series and its tail bound.
Outcome solve_vs_series() {
  Rng rng(1002);
  double worst_ratio = 0.0, worst_tail_only = 0.0;
  bool ok = true;
  for (int t = 0; t < 200; ++t) {
    const int d = rng.uniform_int(1, 3), r = rng.uniform_int(1, 3);
    NcMatrixPolynomial q = random_q0(rng, d, r, t % 3 == 0);
    MatrixTuple z = random_point_in_domain(rng, q, rng.uniform_int(1, 4), rng.uniform(0.05, 0.9));
    MatrixTuple w = random_point_in_domain(rng, q, rng.uniform_int(1, 4), rng.uniform(0.05, 0.9));
    Matrix p = rng.gaussian(z.n(), w.n());
    Matrix exact = szego_kernel_solve(q, z, w, p);
    SeriesResult s = szego_kernel_series(q, z, w, p, 1e-11 * operator_norm(p));
    // rounding in both evaluations: unit roundoff per term and per solve
    const double fp = 1e-13 * (1.0 + operator_norm(exact)) * (s.terms + 1);
    const double diff = operator_norm(s.value - exact);
    if (diff > s.tail_bound + fp) ok = false;
    worst_ratio = std::max(worst_ratio, diff / (s.tail_bound + fp));
    worst_tail_only = std::max(worst_tail_only, diff / s.tail_bound);
  }
  return {ok, fmt("max |series - solve| / (tail bound + rounding) %.3f, / tail bound alone %.3f", worst_ratio,
                  worst_tail_only)};
}

// Scalar one-variable data against the classical Pick matrix.
Outcome classical_pick() {
  Rng rng(1003);
  int checked = 0, mismatches = 0, banded = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform_int(1, 4);
    Matrix z = Matrix::Zero(n, n), l = Matrix::Zero(n, n);
    const double lmax = rng.uniform(0.6, 1.4);
    for (int i = 0; i < n; ++i) {
      z(i, i) = rng.disk(0.95);
      l(i, i) = rng.disk(lmax);
    }
    Matrix pick(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pick(i, j) = (1.0 - l(i, i) * std::conj(l(j, j))) / (1.0 - z(i, i) * std::conj(z(j, j)));
    const double oracle =
        Eigen::SelfAdjointEigenSolver<Matrix>(pick, Eigen::EigenvaluesOnly).eigenvalues()(0);
    PickProblem p{NcMatrixPolynomial::row_pencil(1), MatrixTuple({z}), Matrix::Identity(n, n), l};
    PsdCertificate c = pick_certificate(p).certificate;
    if (std::abs(oracle) <= 1e-9) {
      ++banded;
      continue;
    }
    ++checked;
    // signs compared outside the dead band; a feasible certificate may sit at 0
    const bool sign_ok = oracle > 0 ? c.min_eig >= -1e-9 : c.min_eig < -1e-9;
    if (c.psd != (oracle > 0) || !sign_ok) ++mismatches;
  }
  return {mismatches == 0, fmt("%.0f instances compared, %.0f mismatches, %.0f in dead band", checked,
                               mismatches, banded)};
}

// Certify, synthesize and verify data generated by a realized function.
Outcome round_trip() {
  double worst_res = 0.0, worst_norm = 0.0;
  int failures = 0;
  for (int t = 0; t < 50; ++t) {
    Rng rng(1004 + t);
    const int d = rng.uniform_int(1, 2), r = rng.uniform_int(1, 3);
    NcMatrixPolynomial q0 = random_q0(rng, d, r, false);
    ColligationDims dims{rng.uniform_int(1, 8), rng.uniform_int(1, 2), rng.uniform_int(1, 2), r};
    RealizedFunction f{random_contractive_colligation(dims, 5000 + t), q0};
    const int n = rng.uniform_int(1, 3);
    MatrixTuple z0 = random_point_in_domain(rng, q0, n, rng.uniform(0.1, 0.95));
    Matrix lam = transfer_eval(f, z0);
    PickProblem p{q0, z0, Matrix::Identity(dims.dimY * n, dims.dimY * n), lam};
    SolveOptions opt;
    opt.samples = 100;
    opt.sample_levels = {1, 2, 3};
    opt.seed = t;
    try {
      PickReport rep = solve_pick(p, opt);
      if (!rep.certificate.psd || !rep.colligation || rep.contractivity_samples != 300) {
        ++failures;
        continue;
      }
      worst_res = std::max(worst_res, rep.interp_residual);
      worst_norm = std::max(worst_norm, rep.max_sample_norm);
    } catch (const std::exception&) {
      ++failures;
    }
  }
  const bool ok = failures == 0 && worst_res <= 1e-8 && worst_norm <= 1.0 + 1e-9;
  return {ok, fmt("failures %.0f, worst ||S(Z0) - L0|| %.3e, worst sampled ||S|| - 1 = %.3e", failures,
                  worst_res, worst_norm - 1.0)};
}

// Values at this point are upper triangular, so a lower-left target is infeasible.
Outcome counterexample() {
  Matrix e12 = Matrix::Zero(2, 2), e22 = Matrix::Zero(2, 2), e21 = Matrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  e22(1, 1) = 1.0;
  e21(1, 0) = 1.0;
  MatrixTuple z0({Matrix(0.4 * e12), Matrix(0.4 * e22)});
  PickProblem p{NcMatrixPolynomial::row_pencil(2), z0, Matrix::Identity(2, 2), 0.1 * e21};
  PsdCertificate c = pick_certificate(p).certificate;
  return {!c.psd && c.min_eig < -1e-8, fmt("min eigenvalue %.6e", c.min_eig)};
}

// LTOA: scalar closed form, and twisted = untwisted on commuting tuples.
Outcome ltoa() {
  Rng rng(1006);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const cplx z = rng.disk(0.95), x = rng.complex_normal(), y = rng.complex_normal();
    LtoaCertificate c = ltoa_certificate({MatrixTuple::scalar({z}), Matrix::Constant(1, 1, x),
                                          Matrix::Constant(1, 1, y)});
    const double closed = (std::norm(x) - std::norm(y)) / (1.0 - std::norm(z));
    worst = std::max(worst, std::abs(c.t(0, 0) - closed));
  }
  // dyadic data keep every product and sum exact, so equality is bitwise
  auto dyadic = [&] { return cplx(rng.uniform_int(-4, 4) / 8.0, rng.uniform_int(-4, 4) / 8.0); };
  int unequal = 0;
  for (int t = 0; t < 100; ++t) {
    const int d = rng.uniform_int(1, 3), n = rng.uniform_int(1, 3);
    std::vector<Matrix> comps;
    for (int i = 0; i < d; ++i) {
      Matrix m = Matrix::Zero(n, n);
      if (t % 2 == 0) {
        for (int k = 0; k < n; ++k) m(k, k) = dyadic();
      } else {
        // upper triangular Toeplitz matrices commute
        for (int k = 0; k < n; ++k) {
          const cplx v = dyadic();
          for (int row = 0; row + k < n; ++row) m(row, row + k) = v;
        }
      }
      comps.push_back(m);
    }
    MatrixTuple z(comps);
    NcMatrixPolynomial s(d, 2, 1);
    for (int len = 0; len <= 3; ++len)
      for (const Word& w : words_of_length(d, len)) {
        Matrix c(2, 1);
        c << dyadic(), dyadic();
        s.add_term(w, c);
      }
    Matrix x(n, 2);
    for (int i = 0; i < n; ++i) x.row(i) << dyadic(), dyadic();
    if (ltoa_eval(s, z, x) != twisted_ltoa_eval(s, z, x)) ++unequal;
  }
  return {worst <= 1e-12 && unequal == 0,
          fmt("worst |T - closed form| %.3e, commuting instances with unequal evaluations %.0f", worst,
              unequal)};
}

// Stein dominance and the Pick certificate agree.
Outcome stein_vs_pick() {
  Rng rng(1007);
  int disagree = 0, infeasible = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = rng.uniform_int(1, 2), n = rng.uniform_int(1, 2);
    NcMatrixPolynomial q = NcMatrixPolynomial::row_pencil(d);
    MatrixTuple z0 = random_point_in_domain(rng, q, n, rng.uniform(0.1, 0.9));
    RealizedFunction f{random_contractive_colligation({rng.uniform_int(1, 4), 1, 1, d}, 7000 + t), q};
    Matrix lam = rng.uniform(0.5, 1.6) * transfer_eval(f, z0);
    if (t % 5 == 0) lam = rng.with_norm(n, n, rng.uniform(0.3, 1.5));
    const bool pick = pick_certificate({q, z0, Matrix::Identity(n, n), lam}).certificate.psd;
    const bool stein = stein_dominance_certificate(q, z0, lam).psd;
    if (pick != stein) ++disagree;
    if (!pick) ++infeasible;
  }
  return {disagree == 0, fmt("200 instances (%.0f infeasible), %.0f disagreements", infeasible, disagree)};
}

// Truncation error of a Moebius realization decays like rho^L.
Outcome okaweil() {
  const double a = 0.98, b = std::sqrt(1.0 - a * a);
  RealizedFunction f{Colligation(1, 1, 1, 1, Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, b),
                                 Matrix::Constant(1, 1, b), Matrix::Constant(1, 1, -a)),
                     NcMatrixPolynomial::row_pencil(1)};
  Rng rng(1008);
  std::vector<MatrixTuple> k;
  for (int i = 0; i < 16; ++i) k.push_back(MatrixTuple::scalar({0.5 * std::polar(1.0, 2.0 * M_PI * i / 16)}));
  for (int i = 0; i < 84; ++i) k.push_back(MatrixTuple::scalar({rng.disk(0.5)}));
  std::vector<double> ls, logs;
  bool bound_ok = true;
  double rho = 0.0;
  for (int L = 2; L <= 10; ++L) {
    TruncationReport r = uniform_error_report(f, k, L);
    bound_ok = bound_ok && r.observed_max <= r.apriori_bound + 1e-9;
    rho = r.rho;
    ls.push_back(L);
    logs.push_back(std::log(r.observed_max));
  }
  const double mx = std::accumulate(ls.begin(), ls.end(), 0.0) / ls.size();
  const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    sxy += (ls[i] - mx) * (logs[i] - my);
    sxx += (ls[i] - mx) * (ls[i] - mx);
  }
  const double slope = sxy / sxx, target = std::log(rho);
  const double rel = std::abs(slope - target) / std::abs(target);
  return {bound_ok && rel <= 0.10, fmt("slope %.4f vs log rho %.4f (relative gap %.3f)", slope, target, rel)};
}

// Zariski closure and full envelope coincide in one variable.
Outcome zariski_vs_envelope() {
  Rng rng(1009);
  const std::vector<cplx> pool{cplx(0.3, 0.0), cplx(-0.2, 0.1), cplx(0.0, 0.6)};
  auto random_matrix = [&](int size) {
    Matrix m = Matrix::Zero(size, size);
    int pos = 0;
    while (pos < size) {
      const int len = rng.uniform_int(1, size - pos);
      m.block(pos, pos, len, len) = jordan(len, pool[rng.uniform_int(0, 2)]);
      pos += len;
    }
    Matrix s = random_invertible(rng, size, 4.0);
    return Matrix(s * m * s.inverse());
  };
  int disagree = 0, members = 0, bad_separators = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<Matrix> omega;
    const int g = rng.uniform_int(1, 2);
    for (int i = 0; i < g; ++i) omega.push_back(random_matrix(rng.uniform_int(1, 4)));
    Matrix zt = random_matrix(rng.uniform_int(1, 4));
    ZariskiResult zr = zariski_membership_d1(zt, omega);
    std::vector<MatrixTuple> gens;
    for (const Matrix& w : omega) gens.push_back(MatrixTuple({w}));
    auto wit = full_envelope_membership(MatrixTuple({zt}), gens, static_cast<int>(zt.rows()), 1e-8, t);
    if (zr.member != wit.has_value()) ++disagree;
    if (zr.member) ++members;
    if (zr.separator) {
      bool good = operator_norm(eval_nc_poly(*zr.separator, MatrixTuple({zt}))) > 1e-6;
      for (const Matrix& w : omega) {
        const double scale = std::max(1.0, operator_norm(w));
        good = good && operator_norm(eval_nc_poly(*zr.separator, MatrixTuple({w}))) <= 1e-8 * scale;
      }
      if (!good) ++bad_separators;
    } else if (!zr.member) {
      ++bad_separators;
    }
  }
  return {disagree == 0 && bad_separators == 0,
          fmt("%.0f members of 100, %.0f disagreements, %.0f bad separators", members, disagree,
              bad_separators)};
}

// Realized functions respect direct sums and similarities.
Outcome nc_axioms() {
  Rng rng(1010);
  double worst_sum = 0.0, worst_sim = 0.0;
  int sim_count = 0;
  for (int t = 0; t < 100; ++t) {
    const int d = rng.uniform_int(1, 3), r = rng.uniform_int(1, 3);
    NcMatrixPolynomial q = random_q0(rng, d, r, false);
    ColligationDims dims{rng.uniform_int(1, 6), rng.uniform_int(1, 3), rng.uniform_int(1, 3), r};
    RealizedFunction f{random_contractive_colligation(dims, 9000 + t), q};
    const int n = rng.uniform_int(1, 3), m = rng.uniform_int(1, 3);
    MatrixTuple z = random_point_in_domain(rng, q, n, 0.9), w = random_point_in_domain(rng, q, m, 0.9);
    Matrix sz = transfer_eval(f, z), sw = transfer_eval(f, w);
    Matrix whole = transfer_eval(f, direct_sum(z, w));
    const double scale = 1.0 + operator_norm(whole);
    worst_sum = std::max(worst_sum, operator_norm(whole - amplified_direct_sum(sz, n, sw, m)) / scale);
  }
  for (int t = 0; sim_count < 100; ++t) {
    const int d = rng.uniform_int(1, 3), r = rng.uniform_int(1, 3);
    NcMatrixPolynomial q = random_q0(rng, d, r, false);
    ColligationDims dims{rng.uniform_int(1, 6), rng.uniform_int(1, 3), rng.uniform_int(1, 3), r};
    RealizedFunction f{random_contractive_colligation(dims, 19000 + t), q};
    const int n = rng.uniform_int(1, 3);
    MatrixTuple z = random_point_in_domain(rng, q, n, rng.uniform(0.1, 0.6));
    Matrix alpha = random_invertible(rng, n, rng.uniform(1.0, 4.0));
    MatrixTuple za = similarity(z, alpha);
    if (!in_domain(q, za).inside) continue;
    ++sim_count;
    Matrix sz = transfer_eval(f, z);
    Matrix expect = kron(Matrix::Identity(dims.dimY, dims.dimY), alpha) * sz *
                    kron(Matrix::Identity(dims.dimU, dims.dimU), Matrix(alpha.inverse()));
    const double scale = condition_number(alpha) * (1.0 + operator_norm(sz));
    worst_sim = std::max(worst_sim, operator_norm(transfer_eval(f, za) - expect) / scale);
  }
  return {worst_sum <= 1e-10 && worst_sim <= 1e-8,
          fmt("direct sums: worst %.3e (bound 1e-10); similarities: worst %.3e (bound 1e-8)", worst_sum,
              worst_sim)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no runtime requirement
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "kernel identities", 30, kernel_identities},
      {2, "exact solve vs series", 20, solve_vs_series},
      {3, "classical Pick equivalence", 20, classical_pick},
      {4, "realization round trip", 120, round_trip},
      {5, "negative certificate", 0, counterexample},
      {6, "LTOA closed form", 0, ltoa},
      {7, "Stein dominance vs Pick", 0, stein_vs_pick},
      {8, "Oka-Weil decay", 0, okaweil},
      {9, "Zariski vs full envelope", 0, zariski_vs_envelope},
      {10, "nc-function axioms", 0, nc_axioms},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d: %s  %s; %s (%.2f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs, c.budget_s > 0 ? fmt(", budget %.0f s", c.budget_s).c_str() : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
