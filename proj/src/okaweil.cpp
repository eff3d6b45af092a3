#include "ncpick/okaweil.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace ncpick {

Matrix partial_sum_eval(const RealizedFunction& f, const MatrixTuple& z, int L) {
  if (L < 0) throw DimensionError("partial_sum_eval: L must be nonnegative");
  const Colligation& c = f.col;
  c.validate();
  if (f.q0.s() != 1 || f.q0.r() != c.r || f.q0.d() != z.d())
    throw DimensionError("partial_sum_eval: Q0 shape");
  if (!in_domain(f.q0, z).inside) throw DomainError("partial_sum_eval: point outside the disk");
  AmplifiedColligation amp = amplify(c, z.n());
  if (c.dimX == 0) return amp.D;
  Matrix g = state_coupling(f.q0, z, c.dimX);
  Matrix ga = g * amp.A;
  Matrix term = g * amp.B;
  Matrix acc = term;
  for (int j = 1; j <= L; ++j) {
    term = ga * term;
    acc += term;
  }
  return amp.D + amp.C * acc;
}

NcMatrixPolynomial extract_nc_polynomial(const RealizedFunction& f, int L, double coeff_tol,
                                         std::size_t word_cap) {
  if (L < 0) throw DimensionError("extract_nc_polynomial: L must be nonnegative");
  const Colligation& c = f.col;
  c.validate();
  const int d = f.q0.d();
  if (f.q0.s() != 1 || f.q0.r() != c.r) throw DimensionError("extract_nc_polynomial: Q0 shape");
  NcMatrixPolynomial out = NcMatrixPolynomial::constant(d, c.D);
  if (c.dimX == 0) return out.pruned(coeff_tol);

  // Qhat = sum_a kron(q_a, I_X) z^a, a dimX x (r dimX) polynomial
  NcMatrixPolynomial qhat(d, c.dimX, c.r * c.dimX);
  Matrix ix = Matrix::Identity(c.dimX, c.dimX);
  for (const auto& [w, q] : f.q0.terms()) qhat.add_term(w, kron(q, ix));
  NcMatrixPolynomial ap = NcMatrixPolynomial::constant(d, c.A);
  NcMatrixPolynomial qa = qhat * ap;

  auto check_cap = [&](std::size_t words) {
    if (words > word_cap)
      throw DimensionError("extract_nc_polynomial: expansion exceeds the word cap");
  };
  NcMatrixPolynomial term = qhat * NcMatrixPolynomial::constant(d, c.B);
  NcMatrixPolynomial acc = term;
  check_cap(acc.size());
  for (int j = 1; j <= L; ++j) {
    check_cap(term.size() * std::max<std::size_t>(qa.size(), 1));
    term = qa * term;
    acc = acc + term;
    check_cap(acc.size());
  }
  out = out + NcMatrixPolynomial::constant(d, c.C) * acc;
  return out.pruned(coeff_tol);
}

namespace {

double sample_error(const RealizedFunction& f, const MatrixTuple& z, int L) {
  return operator_norm(transfer_eval(f, z) - partial_sum_eval(f, z, L));
}

TruncationReport finish(const RealizedFunction& f, const std::vector<MatrixTuple>& samples,
                        int L, std::vector<double> errors) {
  TruncationReport rep;
  rep.L = L;
  rep.errors = std::move(errors);
  for (const MatrixTuple& z : samples)
    rep.rho = std::max(rep.rho, operator_norm(eval_nc_poly(f.q0, z)));
  rep.apriori_bound = std::pow(rep.rho, L + 1) / (1.0 - rep.rho) * operator_norm(f.col.C) *
                      operator_norm(f.col.B);
  for (double e : rep.errors) rep.observed_max = std::max(rep.observed_max, e);
  if (rep.observed_max > rep.apriori_bound + 1e-9)
    throw ConsistencyError("uniform_error_report: observed error exceeds the a priori bound");
  return rep;
}

void precheck(const RealizedFunction& f, const std::vector<MatrixTuple>& samples, int L) {
  if (L < 0) throw DimensionError("uniform_error_report: L must be nonnegative");
  if (samples.empty()) throw DimensionError("uniform_error_report: no samples");
  if (operator_norm(f.col.A) > 1.0 + 1e-10)
    throw DomainError("uniform_error_report: A is not contractive");
  for (const MatrixTuple& z : samples)
    if (!in_domain(f.q0, z).inside) throw DomainError("uniform_error_report: sample outside disk");
}

}  // namespace

TruncationReport uniform_error_report_serial(const RealizedFunction& f,
                                             const std::vector<MatrixTuple>& samples, int L) {
  precheck(f, samples, L);
  std::vector<double> errors(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) errors[k] = sample_error(f, samples[k], L);
  return finish(f, samples, L, std::move(errors));
}

TruncationReport uniform_error_report(const RealizedFunction& f,
                                      const std::vector<MatrixTuple>& samples, int L) {
  precheck(f, samples, L);
  std::vector<double> errors(samples.size());
  std::exception_ptr err;
  const long total = static_cast<long>(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < total; ++k) {
    try {
      errors[k] = sample_error(f, samples[k], L);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return finish(f, samples, L, std::move(errors));
}

}  // namespace ncpick
