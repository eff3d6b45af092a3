#include "ncpick/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <Eigen/Eigenvalues>

#include "ncpick/random.hpp"

namespace ncpick {

void PickProblem::validate() const {
  if (q0.s() != 1) throw DimensionError("pick problem: Q0 must have one row");
  if (q0.d() != z0.d()) throw DimensionError("pick problem: variable count mismatch");
  const int n = z0.n();
  if (a0.rows() != b0.rows()) throw DimensionError("pick problem: A0 and B0 row counts differ");
  if (a0.rows() % n || a0.cols() % n || b0.cols() % n || a0.rows() == 0 || a0.cols() == 0 ||
      b0.cols() == 0)
    throw DimensionError("pick problem: A0, B0 must be nonempty operators over point blocks");
  if (!in_domain(q0, z0).inside) throw DomainError("pick problem: Z0 outside the disk of Q0");
}

PickProblem multi_point_to_single(const std::vector<PickProblem>& problems) {
  if (problems.empty()) throw DimensionError("multi_point_to_single: no problems");
  PickProblem out = problems[0];
  out.validate();
  for (std::size_t k = 1; k < problems.size(); ++k) {
    const PickProblem& p = problems[k];
    p.validate();
    if (!(p.q0 == out.q0)) throw DimensionError("multi_point_to_single: Q0 differs");
    if (p.dim_e() != out.dim_e() || p.dim_y() != out.dim_y() || p.dim_u() != out.dim_u())
      throw DimensionError("multi_point_to_single: coefficient dimensions differ");
    const int na = out.z0.n(), nb = p.z0.n();
    out.a0 = amplified_direct_sum(out.a0, na, p.a0, nb);
    out.b0 = amplified_direct_sum(out.b0, na, p.b0, nb);
    out.z0 = direct_sum(out.z0, p.z0);
  }
  return out;
}

static MatrixTuple repeat_point(const MatrixTuple& z, int k) {
  MatrixTuple out = z;
  for (int c = 1; c < k; ++c) out = direct_sum(out, z);
  return out;
}

PickCertificate pick_certificate(const PickProblem& p, int amplification, double tol) {
  p.validate();
  if (amplification < 1) throw DimensionError("pick_certificate: amplification must be positive");
  const int n = p.z0.n(), k = amplification;
  PickCertificate out;
  out.amplification = k;
  MatrixTuple zk = repeat_point(p.z0, k);
  out.choi = dbr_choi(p.q0, zk, amplified_repeat(p.a0, n, k), amplified_repeat(p.b0, n, k));
  out.certificate = psd_check(out.choi.matrix, tol);
  return out;
}

PickReport solve_pick(const PickProblem& p, const SolveOptions& opt) {
  PickCertificate pc = pick_certificate(p, opt.amplification, opt.tol);
  PickReport rep;
  rep.certificate = pc.certificate;
  rep.amplification = pc.amplification;
  if (!pc.certificate.psd) return rep;

  const int n = p.z0.n(), k = pc.amplification;
  SynthesisOptions so = opt.synthesis;
  so.tol = opt.tol;
  SynthesisResult syn =
      lurking_isometry_synthesize(p.q0, repeat_point(p.z0, k), amplified_repeat(p.a0, n, k),
                                  amplified_repeat(p.b0, n, k), so);
  rep.synthesis = syn.diag;
  RealizedFunction f{syn.col, p.q0};
  rep.interp_residual = operator_norm(p.a0 * transfer_eval(f, p.z0) - p.b0);

  Rng rng(opt.seed);
  std::vector<MatrixTuple> pts;
  int idx = 0;
  for (int level : opt.sample_levels)
    for (int s = 0; s < opt.samples; ++s) {
      Rng sub = rng.substream(static_cast<std::uint64_t>(idx++));
      pts.push_back(random_domain_sample(sub, p.q0, level, opt.sample_radius));
    }
  for (const Matrix& v : transfer_eval_batch(f, pts))
    rep.max_sample_norm = std::max(rep.max_sample_norm, operator_norm(v));
  rep.contractivity_samples = static_cast<int>(pts.size());
  rep.colligation = std::move(syn.col);
  return rep;
}

Matrix ltoa_eval(const NcMatrixPolynomial& s, const MatrixTuple& z0, const Matrix& x) {
  if (s.d() != z0.d()) throw DimensionError("ltoa_eval: variable count mismatch");
  if (x.rows() != z0.n() || x.cols() != s.s()) throw DimensionError("ltoa_eval: X must be n x dimY");
  Matrix out = Matrix::Zero(z0.n(), s.r());
  for (const auto& [w, c] : s.terms()) out += eval_word(z0, word_transpose(w)) * x * c;
  return out;
}

Matrix twisted_ltoa_eval(const NcMatrixPolynomial& s, const MatrixTuple& z0, const Matrix& x) {
  if (s.d() != z0.d()) throw DimensionError("twisted_ltoa_eval: variable count mismatch");
  if (x.rows() != z0.n() || x.cols() != s.s())
    throw DimensionError("twisted_ltoa_eval: X must be n x dimY");
  Matrix out = Matrix::Zero(z0.n(), s.r());
  for (const auto& [w, c] : s.terms()) out += eval_word(z0, w) * x * c;
  return out;
}

static Matrix row_of(const MatrixTuple& z) {
  Matrix row(z.n(), static_cast<Eigen::Index>(z.n()) * z.d());
  for (int i = 0; i < z.d(); ++i) row.middleCols(i * z.n(), z.n()) = z[i];
  return row;
}

namespace {

// Per-letter state and input operators kron(q_i, I_X) A and kron(q_i, I_X) B.
struct LetterOperators {
  std::vector<Matrix> a, b;
};

LetterOperators letter_operators(const RealizedFunction& f, const MatrixTuple& z0,
                                 const Matrix& x) {
  const Colligation& c = f.col;
  c.validate();
  if (!f.q0.is_homogeneous_linear() || f.q0.s() != 1 || f.q0.r() != c.r)
    throw DimensionError("LTOA of a realized function needs a homogeneous linear 1 x r Q0");
  if (f.q0.d() != z0.d()) throw DimensionError("LTOA: variable count mismatch");
  if (x.rows() != z0.n() || x.cols() != c.dimY) throw DimensionError("LTOA: X must be n x dimY");
  const int d = z0.d();
  Matrix qmat = Matrix::Zero(d, c.r);
  for (int i = 1; i <= d; ++i) qmat.row(i - 1) = f.q0.coeff(Word(d, {i}));
  if (operator_norm(row_of(z0)) * operator_norm(qmat) * std::max(1.0, operator_norm(c.A)) >= 1.0)
    throw DomainError("LTOA: row norm of Z0 too large for a convergent expansion");
  LetterOperators ops;
  Matrix ix = Matrix::Identity(c.dimX, c.dimX);
  for (int i = 0; i < d; ++i) {
    Matrix sel = kron(Matrix(qmat.row(i)), ix);
    ops.a.push_back(sel * c.A);
    ops.b.push_back(sel * c.B);
  }
  return ops;
}

}  // namespace

Matrix ltoa_eval(const RealizedFunction& f, const MatrixTuple& z0, const Matrix& x) {
  LetterOperators ops = letter_operators(f, z0, x);
  const Colligation& c = f.col;
  Matrix out = x * c.D;
  if (c.dimX == 0) return out;
  // Y = sum_w Z^{w^T} X C A_w solves Y - sum_j Z_j Y A_j = X C
  std::vector<Matrix> right;
  for (const Matrix& a : ops.a) right.push_back(a.adjoint());
  SteinOperator op(z0.components(), std::move(right));
  Matrix y = op.solve(x * c.C);
  for (int i = 0; i < z0.d(); ++i) out += z0[i] * y * ops.b[i];
  return out;
}

Matrix twisted_ltoa_eval(const RealizedFunction& f, const MatrixTuple& z0, const Matrix& x) {
  LetterOperators ops = letter_operators(f, z0, x);
  const Colligation& c = f.col;
  Matrix out = x * c.D;
  if (c.dimX == 0) return out;
  const int n = z0.n(), dx = c.dimX;
  // K = sum_w Z^w (x) A_w, then (sum_w Z^w M A_w)_{pq} = sum_{s,t} K[(p,t),(s,q)] M_{st}
  Matrix sys = Matrix::Identity(n * dx, n * dx);
  for (int j = 0; j < z0.d(); ++j) sys -= kron(z0[j], ops.a[j]);
  Eigen::PartialPivLU<Matrix> lu(sys);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("twisted_ltoa_eval: singular resolvent");
  Matrix k = lu.inverse();
  for (int i = 0; i < z0.d(); ++i) {
    Matrix m = z0[i] * x * c.C;
    Matrix t = Matrix::Zero(n, dx);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < dx; ++q) {
        cplx acc = 0.0;
        for (int s = 0; s < n; ++s)
          for (int tt = 0; tt < dx; ++tt) acc += k(p * dx + tt, s * dx + q) * m(s, tt);
        t(p, q) = acc;
      }
    out += t * ops.b[i];
  }
  return out;
}

LtoaCertificate ltoa_certificate(const LtoaProblem& p, double tol) {
  const int n = p.z0.n();
  if (p.x.rows() != n || p.y.rows() != n) throw DimensionError("ltoa_certificate: X, Y need n rows");
  if (operator_norm(row_of(p.z0)) >= 1.0)
    throw DomainError("ltoa_certificate: Z0 outside the row-ball");
  SteinOperator op(p.z0.components(), p.z0.components());
  LtoaCertificate out;
  out.t = op.solve(p.x * p.x.adjoint() - p.y * p.y.adjoint());
  out.certificate = psd_check(out.t, tol);
  return out;
}

PsdCertificate stein_dominance_certificate(const NcMatrixPolynomial& q0, const MatrixTuple& z0,
                                           const Matrix& lambda0, int amplification,
                                           double tol) {
  const int n = z0.n();
  const int k = amplification == 0 ? n : amplification;
  if (k < 1) throw DimensionError("stein_dominance: amplification must be positive");
  if (!in_domain(q0, z0).inside) throw DomainError("stein_dominance: Z0 outside the disk");
  if (lambda0.rows() % n || lambda0.cols() % n)
    throw DimensionError("stein_dominance: Lambda0 not over point blocks");
  MatrixTuple zk = repeat_point(z0, k);
  Matrix lk = amplified_repeat(lambda0, n, k);
  const int N = zk.n();
  const int dy = static_cast<int>(lambda0.rows() / n), du = static_cast<int>(lambda0.cols() / n);
  std::vector<Matrix> g = q0_blocks(q0, zk);
  SteinOperator op(g, g);
  Matrix iy = Matrix::Identity(dy, dy), iu = Matrix::Identity(du, du);
  CpMap m{N, dy * N, [&](const Matrix& p) {
            Matrix r = stein_solve_doubling(op, p);
            return Matrix(kron(iy, r) - lk * kron(iu, r) * lk.adjoint());
          }};
  return psd_check(choi_matrix(m).matrix, tol);
}

namespace {

double min_eig(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

struct RefuterSetup {
  int n, k, N, s, r, dy, du;
  MatrixTuple zk;
  Matrix qk, lk;
  double delta2;
};

RefuterSetup refuter_setup(const NcMatrixPolynomial& q, const MatrixTuple& z0,
                           const Matrix& lambda0, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DimensionError("strict_stein_refuter: delta in (0,1)");
  if (q.d() != z0.d()) throw DimensionError("strict_stein_refuter: variable count mismatch");
  RefuterSetup st;
  st.n = z0.n();
  if (lambda0.rows() % st.n || lambda0.cols() % st.n)
    throw DimensionError("strict_stein_refuter: Lambda0 not over point blocks");
  st.dy = static_cast<int>(lambda0.rows() / st.n);
  st.du = static_cast<int>(lambda0.cols() / st.n);
  st.k = st.n * st.dy;
  st.zk = repeat_point(z0, st.k);
  st.N = st.zk.n();
  st.s = q.s();
  st.r = q.r();
  st.qk = amplified_repeat(eval_nc_poly(q, z0), st.n, st.k);
  st.lk = amplified_repeat(lambda0, st.n, st.k);
  st.delta2 = delta * delta;
  return st;
}

struct TrialOutcome {
  bool accepted = false;
  double conclusion_eig = 0.0;
  Matrix p;
};

TrialOutcome refuter_trial(const RefuterSetup& st, Rng rng, double tol) {
  const int N = st.N;
  const double c = 1.0 - st.delta2;
  auto hyp = [&](const Matrix& p) {
    Matrix h1 = p;
    for (int i = 0; i < st.zk.d(); ++i) h1 -= c * st.zk[i] * p * st.zk[i].adjoint();
    Matrix h2 = c * kron(Matrix::Identity(st.s, st.s), p) -
                st.qk * kron(Matrix::Identity(st.r, st.r), p) * st.qk.adjoint();
    return std::min(min_eig(h1), min_eig(h2));
  };
  const int rank = rng.uniform_int(1, N);
  Matrix g = rng.gaussian(N, rank);
  Matrix p = g * g.adjoint();
  p /= operator_norm(p);
  Matrix id = Matrix::Identity(N, N);
  const double hyp_tol = -tol;
  TrialOutcome out;
  if (hyp(p) < hyp_tol) {
    double hi = 1.0;
    int it = 0;
    while (hyp(p + hi * id) < hyp_tol && it++ < 40) hi *= 2.0;
    if (it > 40) return out;
    double lo = 0.0;
    for (int b = 0; b < 50; ++b) {
      double mid = 0.5 * (lo + hi);
      (hyp(p + mid * id) < hyp_tol ? lo : hi) = mid;
    }
    p += hi * id;
  }
  out.accepted = true;
  Matrix concl = kron(Matrix::Identity(st.dy, st.dy), p) -
                 st.lk * kron(Matrix::Identity(st.du, st.du), p) * st.lk.adjoint();
  out.conclusion_eig = min_eig(concl) / operator_norm(p);
  out.p = p;
  return out;
}

RefuterResult collect(std::vector<TrialOutcome>& outs, int k, double tol) {
  RefuterResult res;
  res.amplification = k;
  res.trials_run = static_cast<int>(outs.size());
  for (TrialOutcome& o : outs) {
    if (!o.accepted) continue;
    res.worst_eig = std::min(res.worst_eig, o.conclusion_eig);
    if (!res.counterexample && o.conclusion_eig < -tol) res.counterexample = std::move(o.p);
  }
  return res;
}

}  // namespace

RefuterResult strict_stein_refuter_serial(const NcMatrixPolynomial& q, const MatrixTuple& z0,
                                          const Matrix& lambda0, double delta, int trials,
                                          std::uint64_t seed, double tol) {
  RefuterSetup st = refuter_setup(q, z0, lambda0, delta);
  Rng root(seed);
  std::vector<TrialOutcome> outs(std::max(trials, 0));
  for (int t = 0; t < trials; ++t) outs[t] = refuter_trial(st, root.substream(t), tol);
  return collect(outs, st.k, tol);
}

RefuterResult strict_stein_refuter(const NcMatrixPolynomial& q, const MatrixTuple& z0,
                                   const Matrix& lambda0, double delta, int trials,
                                   std::uint64_t seed, double tol) {
  RefuterSetup st = refuter_setup(q, z0, lambda0, delta);
  Rng root(seed);
  std::vector<TrialOutcome> outs(std::max(trials, 0));
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    try {
      outs[t] = refuter_trial(st, root.substream(t), tol);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return collect(outs, st.k, tol);
}

}  // namespace ncpick
