#include "ncpick/realization.hpp"

#include <cmath>
#include <exception>

#include <Eigen/SVD>

#include "ncpick/random.hpp"

namespace ncpick {

Colligation::Colligation(int dimX_, int dimU_, int dimY_, int r_, Matrix A_, Matrix B_, Matrix C_,
                         Matrix D_)
    : dimX(dimX_), dimU(dimU_), dimY(dimY_), r(r_), A(std::move(A_)), B(std::move(B_)),
      C(std::move(C_)), D(std::move(D_)) {
  validate();
}

void Colligation::validate() const {
  if (dimX < 0 || dimU < 1 || dimY < 1 || r < 1)
    throw DimensionError("colligation: dimensions must be positive");
  const Eigen::Index rx = static_cast<Eigen::Index>(r) * dimX;
  if (A.rows() != rx || A.cols() != dimX || B.rows() != rx || B.cols() != dimU ||
      C.rows() != dimY || C.cols() != dimX || D.rows() != dimY || D.cols() != dimU)
    throw DimensionError("colligation: block shapes inconsistent with (dimX, dimU, dimY, r)");
}

Matrix Colligation::assembled() const {
  const Eigen::Index rx = static_cast<Eigen::Index>(r) * dimX;
  Matrix u(rx + dimY, dimX + dimU);
  u << A, B, C, D;
  return u;
}

AmplifiedColligation amplify(const Colligation& col, int n) {
  if (n < 1) throw DimensionError("amplify: level must be positive");
  Matrix id = Matrix::Identity(n, n);
  return {kron(col.A, id), kron(col.B, id), kron(col.C, id), kron(col.D, id)};
}

Matrix state_coupling(const NcMatrixPolynomial& q0, const MatrixTuple& z, int dimX) {
  if (q0.s() != 1) throw DimensionError("state_coupling: Q0 must have one row");
  Matrix m = eval_nc_poly(q0, z);
  const int n = z.n(), r = q0.r();
  Matrix g = Matrix::Zero(static_cast<Eigen::Index>(dimX) * n,
                          static_cast<Eigen::Index>(r) * dimX * n);
  for (int rho = 0; rho < r; ++rho)
    for (int x = 0; x < dimX; ++x)
      g.block(x * n, (rho * dimX + x) * n, n, n) = m.block(0, rho * n, n, n);
  return g;
}

static void check_realized(const RealizedFunction& f, const MatrixTuple& z) {
  f.col.validate();
  if (f.q0.s() != 1 || f.q0.r() != f.col.r)
    throw DimensionError("transfer_eval: Q0 must be 1 x r with r matching the colligation");
  if (f.q0.d() != z.d()) throw DimensionError("transfer_eval: variable count mismatch");
  if (!in_domain(f.q0, z).inside) throw DomainError("transfer_eval: point outside the disk");
}

static Matrix transfer_eval_unchecked(const RealizedFunction& f, const MatrixTuple& z) {
  const int n = z.n();
  const Colligation& c = f.col;
  AmplifiedColligation amp = amplify(c, n);
  if (c.dimX == 0) return amp.D;
  Matrix g = state_coupling(f.q0, z, c.dimX);
  Matrix sys = Matrix::Identity(static_cast<Eigen::Index>(c.dimX) * n,
                                static_cast<Eigen::Index>(c.dimX) * n) -
               g * amp.A;
  Eigen::PartialPivLU<Matrix> lu(sys);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("transfer_eval: singular resolvent");
  Matrix y = lu.solve(g * amp.B);
  return amp.D + amp.C * y;
}

Matrix transfer_eval(const RealizedFunction& f, const MatrixTuple& z) {
  check_realized(f, z);
  if (operator_norm(f.col.A) > 1.0 + 1e-10)
    throw DomainError("transfer_eval: state operator A is not contractive");
  return transfer_eval_unchecked(f, z);
}

std::vector<Matrix> transfer_eval_batch_serial(const RealizedFunction& f,
                                               const std::vector<MatrixTuple>& points) {
  if (operator_norm(f.col.A) > 1.0 + 1e-10)
    throw DomainError("transfer_eval: state operator A is not contractive");
  std::vector<Matrix> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    check_realized(f, points[k]);
    out[k] = transfer_eval_unchecked(f, points[k]);
  }
  return out;
}

std::vector<Matrix> transfer_eval_batch(const RealizedFunction& f,
                                        const std::vector<MatrixTuple>& points) {
  if (operator_norm(f.col.A) > 1.0 + 1e-10)
    throw DomainError("transfer_eval: state operator A is not contractive");
  std::vector<Matrix> out(points.size());
  std::exception_ptr err;
  const long total = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < total; ++k) {
    try {
      check_realized(f, points[k]);
      out[k] = transfer_eval_unchecked(f, points[k]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

PsdCertificate colligation_contraction_check(const Colligation& col, double tol) {
  col.validate();
  Matrix u = col.assembled();
  Matrix defect = Matrix::Identity(u.cols(), u.cols()) - u.adjoint() * u;
  return psd_check(defect, tol);
}

static Colligation split_blocks(const Matrix& u, int dimX, int dimU, int dimY, int r) {
  const int rx = r * dimX;
  return Colligation(dimX, dimU, dimY, r, u.block(0, 0, rx, dimX), u.block(0, dimX, rx, dimU),
                     u.block(rx, 0, dimY, dimX), u.block(rx, dimX, dimY, dimU));
}

Colligation random_contractive_colligation(const ColligationDims& dims, std::uint64_t seed,
                                           bool unitary) {
  if (dims.dimX < 1 || dims.dimU < 1 || dims.dimY < 1 || dims.r < 1)
    throw DimensionError("random_contractive_colligation: dimensions must be positive");
  Rng rng(seed);
  const int rows = dims.r * dims.dimX + dims.dimY, cols = dims.dimX + dims.dimU;
  Matrix u;
  if (unitary) {
    if (rows != cols)
      throw DimensionError("random_contractive_colligation: unitary needs r dimX + dimY = dimX + dimU");
    u = rng.unitary(rows);
  } else {
    u = rng.with_norm(rows, cols, (1.0 - 1e-6) * rng.uniform(0.5, 1.0));
  }
  Colligation c = split_blocks(u, dims.dimX, dims.dimU, dims.dimY, dims.r);
  c.contractive = true;
  c.unitary = unitary;
  return c;
}

ChoiMatrix dbr_choi(const NcMatrixPolynomial& q0, const MatrixTuple& z0, const Matrix& a0,
                    const Matrix& b0) {
  const int n = z0.n();
  SzegoKernel k(q0, z0, z0);
  CpMap m{n, static_cast<int>(a0.rows()), [&](const Matrix& p) {
            return dbr_from_kernel_value(k(p), a0, a0, b0, b0);
          }};
  return choi_matrix(m);
}

// Rows of the slice of v at point index i: entry c of the result is v[c * n + i].
static Vector point_slice(const Eigen::Ref<const Vector>& v, int n, int i) {
  const Eigen::Index len = v.size() / n;
  Vector out(len);
  for (Eigen::Index c = 0; c < len; ++c) out(c) = v(c * n + i);
  return out;
}

SynthesisResult lurking_isometry_synthesize(const NcMatrixPolynomial& q0, const MatrixTuple& z0,
                                            const Matrix& a0, const Matrix& b0,
                                            const SynthesisOptions& opt) {
  if (q0.s() != 1) throw DimensionError("synthesis: Q0 must have one row");
  if (q0.d() != z0.d()) throw DimensionError("synthesis: variable count mismatch");
  const int n = z0.n(), r = q0.r();
  if (a0.rows() != b0.rows() || a0.rows() % n || a0.cols() % n || b0.cols() % n)
    throw DimensionError("synthesis: a0, b0 must be operators over point blocks with equal rows");
  const int dimE = static_cast<int>(a0.rows() / n);
  const int dimY = static_cast<int>(a0.cols() / n), dimU = static_cast<int>(b0.cols() / n);
  if (!in_domain(q0, z0).inside) throw DomainError("synthesis: Z0 outside the disk of Q0");

  SynthesisResult res;
  ChoiMatrix choi = dbr_choi(q0, z0, a0, b0);
  res.diag.certificate = psd_check(choi.matrix, opt.tol);
  if (!res.diag.certificate.psd)
    throw DomainError("synthesis: de Branges-Rovnyak Choi matrix is not positive semidefinite");
  KolmogorovFactor fac = kolmogorov_factor(choi, opt.kolmogorov_rank_tol, opt.tol);
  Matrix h = fac.as_operator();
  int dimX = std::max(fac.rank, 1);

  if (opt.unitary_completion && r * dimX + dimY != dimX + dimU) {
    const int gap = dimX + dimU - (r * dimX + dimY);
    if (r == 1 || gap < 0 || gap % (r - 1))
      throw DimensionError("synthesis: no unitary completion for these dimensions");
    dimX += gap / (r - 1);
  }
  if (h.cols() < static_cast<Eigen::Index>(dimX) * n) {
    Matrix padded = Matrix::Zero(a0.rows(), static_cast<Eigen::Index>(dimX) * n);
    padded.leftCols(h.cols()) = h;
    h = std::move(padded);
  }
  res.diag.state_dim = dimX;

  const Matrix g = state_coupling(q0, z0, dimX);
  const Matrix hs = h.adjoint();
  const Matrix ghs = g.adjoint() * hs;
  const Matrix as = a0.adjoint(), bs = b0.adjoint();
  const int rx = r * dimX;
  const Eigen::Index fam = static_cast<Eigen::Index>(n) * dimE * n;
  Matrix dm(rx + dimY, fam), rm(dimX + dimU, fam);
  for (Eigen::Index e = 0; e < dimE * n; ++e)
    for (int i = 0; i < n; ++i) {
      const Eigen::Index col = e * n + i;
      dm.col(col) << point_slice(ghs.col(e), n, i), point_slice(as.col(e), n, i);
      rm.col(col) << point_slice(hs.col(e), n, i), point_slice(bs.col(e), n, i);
    }

  res.diag.gram_scale = std::max(1.0, dm.squaredNorm());
  res.diag.gram_residual = (dm.adjoint() * dm - rm.adjoint() * rm).norm();
  if (res.diag.gram_residual > 100.0 * opt.tol * res.diag.gram_scale)
    throw ConsistencyError("synthesis: Gram identity between D- and R-families fails");

  // V maps span{D} onto span{R} and vanishes on the complement
  Eigen::JacobiSVD<Matrix> svd(dm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  int rank = 0;
  const double thr = opt.span_rank_tol * (sv.size() ? sv(0) : 0.0);
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  res.diag.span_rank = rank;
  Matrix v = Matrix::Zero(dimX + dimU, rx + dimY);
  if (rank > 0) {
    RealVector inv = sv.head(rank).cwiseInverse();
    v = rm * svd.matrixV().leftCols(rank) * inv.cast<cplx>().asDiagonal() *
        svd.matrixU().leftCols(rank).adjoint();
  }

  // clip singular values of V at one so the colligation is contractive
  Eigen::JacobiSVD<Matrix> vs(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector s = vs.singularValues();
  const Eigen::Index ns = s.size();
  if (opt.unitary_completion) {
    if (v.rows() != v.cols()) throw DimensionError("synthesis: unitary completion shape mismatch");
    v = vs.matrixU() * vs.matrixV().adjoint();
    res.diag.completed_unitary = true;
  } else if (ns && s(0) > 1.0) {
    for (Eigen::Index k = 0; k < ns; ++k) s(k) = std::min(s(k), 1.0);
    v = vs.matrixU().leftCols(ns) * s.cast<cplx>().asDiagonal() *
        vs.matrixV().leftCols(ns).adjoint();
  }

  res.col = split_blocks(v.adjoint(), dimX, dimU, dimY, r);
  res.col.contractive = true;
  res.col.unitary = res.diag.completed_unitary;
  return res;
}

}  // namespace ncpick
