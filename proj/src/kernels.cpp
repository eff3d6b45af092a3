#include "ncpick/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ncpick {

Matrix KolmogorovFactor::as_operator() const {
  const int n = static_cast<int>(blocks.size());
  if (n == 0) return Matrix(0, 0);
  const Eigen::Index e = blocks[0].rows();
  Matrix h(e, rank * n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < rank; ++l) h.col(l * n + i) = blocks[i].col(l);
  return h;
}

Matrix KolmogorovFactor::reconstruct() const {
  const int n = static_cast<int>(blocks.size());
  if (n == 0) return Matrix(0, 0);
  const Eigen::Index b = blocks[0].rows();
  Matrix w(b * n, rank);
  for (int i = 0; i < n; ++i) w.middleRows(i * b, b) = blocks[i];
  return w * w.adjoint();
}

static ChoiMatrix choi_shell(const CpMap& m) {
  if (m.n < 1 || m.out_dim < 0 || !m.apply) throw DimensionError("CpMap not initialized");
  ChoiMatrix c;
  c.n = m.n;
  c.block_dim = m.out_dim;
  c.matrix = Matrix::Zero(static_cast<Eigen::Index>(m.n) * m.out_dim,
                          static_cast<Eigen::Index>(m.n) * m.out_dim);
  return c;
}

static void fill_unit(const CpMap& m, ChoiMatrix& c, int idx) {
  const int i = idx / m.n, j = idx % m.n;
  Matrix v = m.apply(matrix_unit(m.n, i, j));
  if (v.rows() != m.out_dim || v.cols() != m.out_dim)
    throw DimensionError("CpMap output has the wrong size");
  c.matrix.block(i * m.out_dim, j * m.out_dim, m.out_dim, m.out_dim) = v;
}

ChoiMatrix choi_matrix_serial(const CpMap& m) {
  ChoiMatrix c = choi_shell(m);
  for (int idx = 0; idx < m.n * m.n; ++idx) fill_unit(m, c, idx);
  return c;
}

ChoiMatrix choi_matrix(const CpMap& m) {
  ChoiMatrix c = choi_shell(m);
  const int total = m.n * m.n;
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int idx = 0; idx < total; ++idx) {
    try {
      fill_unit(m, c, idx);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return c;
}

PsdCertificate psd_check(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DimensionError("psd_check: matrix not square");
  if (!all_finite(m)) throw NumericalError("psd_check: non-finite entries");
  PsdCertificate cert;
  cert.tol = rel_tol;
  if (m.size() == 0) {
    cert.psd = true;
    return cert;
  }
  double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-6 * scale)
    throw NumericalError("psd_check: matrix is not Hermitian");
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  cert.min_eig = ev(0);
  cert.max_eig = ev(ev.size() - 1);
  double band = rel_tol * std::max(1.0, cert.max_eig);
  cert.psd = cert.min_eig >= -band;
  cert.marginal = cert.psd && cert.min_eig < 0.0;
  return cert;
}

PsdCertificate cp_check_finite(const KernelFn& k, const std::vector<MatrixTuple>& omega,
                               double rel_tol, ChoiMatrix* choi_out) {
  if (omega.empty()) throw DimensionError("cp_check_finite: empty point set");
  MatrixTuple z = omega[0];
  for (std::size_t i = 1; i < omega.size(); ++i) z = direct_sum(z, omega[i]);
  const int n = z.n();
  Matrix probe = k(z, z, Matrix::Zero(n, n));
  CpMap m{n, static_cast<int>(probe.rows()), [&](const Matrix& p) { return k(z, z, p); }};
  ChoiMatrix c = choi_matrix(m);
  PsdCertificate cert = psd_check(c.matrix, rel_tol);
  if (choi_out) *choi_out = std::move(c);
  return cert;
}

KolmogorovFactor kolmogorov_factor(const ChoiMatrix& c, double rank_tol, double psd_tol) {
  PsdCertificate cert = psd_check(c.matrix, psd_tol);
  if (!cert.psd) throw DomainError("kolmogorov_factor: Choi matrix is not positive semidefinite");
  KolmogorovFactor f;
  f.blocks.assign(c.n, Matrix(c.block_dim, 0));
  if (c.matrix.size() == 0 || cert.max_eig <= 0.0) return f;
  Matrix h = 0.5 * (c.matrix + c.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& ev = es.eigenvalues();
  const double thr = rank_tol * cert.max_eig;
  std::vector<int> keep;
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k)
    if (ev(k) > thr) keep.push_back(static_cast<int>(k));
  f.rank = static_cast<int>(keep.size());
  Matrix w(c.matrix.rows(), f.rank);
  for (int l = 0; l < f.rank; ++l) w.col(l) = std::sqrt(ev(keep[l])) * es.eigenvectors().col(keep[l]);
  for (int i = 0; i < c.n; ++i) f.blocks[i] = w.middleRows(i * c.block_dim, c.block_dim);
  return f;
}

std::vector<Matrix> q0_blocks(const NcMatrixPolynomial& q0, const MatrixTuple& z) {
  if (q0.s() != 1) throw DimensionError("Q0 must have exactly one row");
  if (q0.d() != z.d()) throw DimensionError("Q0 and point have different variable counts");
  Matrix v = eval_nc_poly(q0, z);
  const int n = z.n();
  std::vector<Matrix> g;
  for (int rho = 0; rho < q0.r(); ++rho) g.push_back(v.block(0, rho * n, n, n));
  return g;
}

Matrix phi_map(const NcMatrixPolynomial& q0, const MatrixTuple& z, const MatrixTuple& w,
               const Matrix& p) {
  if (p.rows() != z.n() || p.cols() != w.n()) throw DimensionError("phi_map: P shape");
  std::vector<Matrix> gz = q0_blocks(q0, z), gw = q0_blocks(q0, w);
  Matrix out = Matrix::Zero(z.n(), w.n());
  for (std::size_t rho = 0; rho < gz.size(); ++rho) out += gz[rho] * p * gw[rho].adjoint();
  return out;
}

SzegoKernel::SzegoKernel(const NcMatrixPolynomial& q0, const MatrixTuple& z,
                         const MatrixTuple& w) {
  std::vector<Matrix> gz = q0_blocks(q0, z), gw = q0_blocks(q0, w);
  if (!in_domain(q0, z).inside || !in_domain(q0, w).inside)
    throw DomainError("Szego kernel: point outside the domain of Q0");
  op_ = std::make_shared<const SteinOperator>(std::move(gz), std::move(gw));
}

Matrix szego_kernel_solve(const NcMatrixPolynomial& q0, const MatrixTuple& z,
                          const MatrixTuple& w, const Matrix& p) {
  if (p.rows() != z.n() || p.cols() != w.n()) throw DimensionError("szego_kernel_solve: P shape");
  return SzegoKernel(q0, z, w)(p);
}

SeriesResult szego_kernel_series(const NcMatrixPolynomial& q0, const MatrixTuple& z,
                                 const MatrixTuple& w, const Matrix& p, double tol,
                                 int max_terms) {
  if (p.rows() != z.n() || p.cols() != w.n())
    throw DimensionError("szego_kernel_series: P shape");
  std::vector<Matrix> gz = q0_blocks(q0, z), gw = q0_blocks(q0, w);
  const double rho = operator_norm(eval_nc_poly(q0, z)) * operator_norm(eval_nc_poly(q0, w));
  if (!(rho < 1.0)) throw DomainError("szego_kernel_series: no convergent bound");
  const double pn = operator_norm(p);
  SeriesResult res;
  res.value = p;
  Matrix term = p;
  double power = rho;  // rho^{L+1} with L = terms - 1
  res.terms = 1;
  while (true) {
    res.tail_bound = power / (1.0 - rho) * pn;
    if (res.tail_bound <= tol || res.terms >= max_terms) break;
    Matrix next = Matrix::Zero(z.n(), w.n());
    for (std::size_t k = 0; k < gz.size(); ++k) next += gz[k] * term * gw[k].adjoint();
    term = std::move(next);
    res.value += term;
    ++res.terms;
    power *= rho;
  }
  return res;
}

Matrix dbr_from_kernel_value(const Matrix& t, const Matrix& az, const Matrix& aw,
                             const Matrix& bz, const Matrix& bw) {
  const Eigen::Index n = t.rows(), m = t.cols();
  if (az.cols() % n || aw.cols() % m || bz.cols() % n || bw.cols() % m)
    throw DimensionError("dbr_kernel: operator columns not over point blocks");
  const Eigen::Index dy = az.cols() / n, du = bz.cols() / n;
  if (aw.cols() / m != dy || bw.cols() / m != du || az.rows() != bz.rows() ||
      aw.rows() != bw.rows())
    throw DimensionError("dbr_kernel: inconsistent a/b shapes");
  Matrix ty = kron(Matrix::Identity(dy, dy), t);
  Matrix tu = kron(Matrix::Identity(du, du), t);
  return az * ty * aw.adjoint() - bz * tu * bw.adjoint();
}

Matrix dbr_kernel(const NcMatrixPolynomial& q0, const MatrixTuple& z, const MatrixTuple& w,
                  const Matrix& p, const Matrix& az, const Matrix& aw, const Matrix& bz,
                  const Matrix& bw) {
  return dbr_from_kernel_value(szego_kernel_solve(q0, z, w, p), az, aw, bz, bw);
}

}  // namespace ncpick
