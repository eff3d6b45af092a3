// ncpick: JSON in, certificates and colligations out.
//
// Exit codes: 0 success / feasible / member, 1 well-posed negative answer,
// 2 malformed input or runtime failure. stdout carries JSON only.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "ncpick/envelopes.hpp"
#include "ncpick/interpolation.hpp"
#include "ncpick/json_io.hpp"
#include "ncpick/kernels.hpp"
#include "ncpick/okaweil.hpp"
#include "ncpick/random.hpp"
#include "ncpick/realization.hpp"

using namespace ncpick;

namespace {

struct Flags {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::optional<int> max_multiplicity;
  std::optional<int> amplification;
  int truncation_L = 10;
  int samples = 100;
  std::string input = "-";
};

struct Outcome {
  json result;
  bool positive = true;
};

json flags_json(const Flags& f) {
  json j = {{"tol", f.tol}, {"seed", f.seed}, {"truncation_L", f.truncation_L}, {"samples", f.samples}};
  j["max_multiplicity"] = f.max_multiplicity ? json(*f.max_multiplicity) : json(nullptr);
  j["amplification"] = f.amplification ? json(*f.amplification) : json(nullptr);
  return j;
}

json read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

PickProblem pick_from_json(const json& in) {
  PickProblem p{polynomial_from_json(require(in, "Q0")), tuple_from_json(require(in, "Z0")),
                matrix_from_json(require(in, "A0")), matrix_from_json(require(in, "B0"))};
  p.validate();
  return p;
}

Outcome cmd_eval(const json& in, const Flags&) {
  NcMatrixPolynomial q = polynomial_from_json(require(in, "Q"));
  MatrixTuple z = tuple_from_json(require(in, "Z"));
  Matrix v = eval_nc_poly(q, z);
  return {{{"value", to_json(v)}, {"norm", operator_norm(v)}}, true};
}

Outcome cmd_domain(const json& in, const Flags&) {
  DomainStatus st = in_domain(polynomial_from_json(require(in, "Q")), tuple_from_json(require(in, "Z")));
  return {{{"in_domain", st.inside}, {"margin", st.margin}, {"norm", st.norm}}, st.inside};
}

Outcome cmd_envelope(const json& in, const Flags& f) {
  MatrixTuple zt = tuple_from_json(require(in, "Ztilde"));
  std::vector<MatrixTuple> gens;
  for (const json& g : require(in, "generators")) gens.push_back(tuple_from_json(g));
  std::string mode = in.value("mode", "full");
  int maxm = f.max_multiplicity.value_or(zt.n());
  std::optional<EnvelopeWitness> w;
  if (mode == "full")
    w = full_envelope_membership(zt, gens, maxm, 1e-8, f.seed);
  else if (mode == "similarity")
    w = similarity_envelope_membership(zt, gens, maxm, 1e12, f.seed);
  else
    throw SchemaError("envelope: mode must be \"full\" or \"similarity\"");
  json r = {{"member", w.has_value()}, {"mode", mode}, {"max_multiplicity", maxm}};
  if (w) r["witness"] = to_json(*w);
  return {r, w.has_value()};
}

Outcome cmd_zariski(const json& in, const Flags&) {
  Matrix zt = matrix_from_json(require(in, "Ztilde"));
  std::vector<Matrix> omega;
  for (const json& m : require(in, "Omega")) omega.push_back(matrix_from_json(m));
  double ctol = in.value("cluster_tol", 1e-8);
  ZariskiResult z = zariski_membership_d1(zt, omega, ctol);
  json r = {{"member", z.member}, {"ambiguous", z.ambiguous}};
  if (z.separator) r["separator"] = to_json(*z.separator);
  return {r, z.member};
}

Outcome cmd_cp(const json& in, const Flags& f) {
  PsdCertificate cert;
  json r;
  if (in.contains("choi")) {
    ChoiMatrix c = choi_from_json(in["choi"]);
    cert = psd_check(c.matrix, f.tol);
  } else {
    if (require(in, "kernel") != "szego") throw SchemaError("cp-check: kernel must be \"szego\"");
    NcMatrixPolynomial q0 = polynomial_from_json(require(in, "Q0"));
    std::vector<MatrixTuple> pts;
    for (const json& p : require(in, "points")) pts.push_back(tuple_from_json(p));
    KernelFn k = [&](const MatrixTuple& z, const MatrixTuple& w, const Matrix& p) {
      return szego_kernel_solve(q0, z, w, p);
    };
    cert = cp_check_finite(k, pts, f.tol);
  }
  r = to_json(cert);
  return {r, cert.psd};
}

Outcome cmd_pick_check(const json& in, const Flags& f) {
  PickProblem p = pick_from_json(in);
  PickCertificate pc = pick_certificate(p, f.amplification.value_or(1), f.tol);
  json r = to_json(pc.certificate);
  r["amplification"] = pc.amplification;
  return {r, pc.certificate.psd};
}

Outcome cmd_pick_solve(const json& in, const Flags& f) {
  PickProblem p = pick_from_json(in);
  SolveOptions opt;
  opt.tol = f.tol;
  opt.seed = f.seed;
  opt.samples = f.samples;
  opt.amplification = f.amplification.value_or(1);
  PickReport rep = solve_pick(p, opt);
  json r = to_json(rep.certificate);
  r["amplification"] = rep.amplification;
  if (rep.colligation) {
    r["colligation"] = to_json(*rep.colligation);
    r["interp_residual"] = rep.interp_residual;
    r["contractivity_samples"] = rep.contractivity_samples;
    r["max_sample_norm"] = rep.max_sample_norm;
    r["gram_residual"] = rep.synthesis.gram_residual;
    r["state_dim"] = rep.synthesis.state_dim;
  }
  return {r, rep.colligation.has_value()};
}

Outcome cmd_ltoa(const json& in, const Flags& f) {
  LtoaProblem p{tuple_from_json(require(in, "Z0")), matrix_from_json(require(in, "X")),
                matrix_from_json(require(in, "Y"))};
  LtoaCertificate c = ltoa_certificate(p, f.tol);
  json r = to_json(c.certificate);
  r["T"] = to_json(c.t);
  return {r, c.certificate.psd};
}

Outcome cmd_stein(const json& in, const Flags& f) {
  NcMatrixPolynomial q0 = polynomial_from_json(require(in, "Q0"));
  MatrixTuple z0 = tuple_from_json(require(in, "Z0"));
  Matrix lambda = matrix_from_json(require(in, "Lambda0"));
  PsdCertificate cert = stein_dominance_certificate(q0, z0, lambda, f.amplification.value_or(0), f.tol);
  json r = to_json(cert);
  if (in.contains("delta")) {
    RefuterResult rr = strict_stein_refuter(q0, z0, lambda, in["delta"].get<double>(),
                                            in.value("trials", f.samples), f.seed, f.tol);
    json jr = {{"amplification", rr.amplification}, {"trials", rr.trials_run},
               {"worst_eig", rr.worst_eig}, {"refuted", rr.counterexample.has_value()}};
    if (rr.counterexample) jr["counterexample"] = to_json(*rr.counterexample);
    r["refuter"] = jr;
  }
  return {r, cert.psd};
}

Outcome cmd_realize(const json& in, const Flags&) {
  RealizedFunction fn{colligation_from_json(require(in, "colligation")),
                      polynomial_from_json(require(in, "Q0"))};
  json r = json::object();
  if (in.contains("Z")) r["value"] = to_json(transfer_eval(fn, tuple_from_json(in["Z"])));
  if (in.contains("Z0")) {
    MatrixTuple z0 = tuple_from_json(in["Z0"]);
    Matrix a0 = matrix_from_json(require(in, "A0")), b0 = matrix_from_json(require(in, "B0"));
    r["interp_residual"] = operator_norm(a0 * transfer_eval(fn, z0) - b0);
  }
  r["contraction"] = to_json(colligation_contraction_check(fn.col));
  return {r, true};
}

Outcome cmd_okaweil(const json& in, const Flags& f) {
  RealizedFunction fn{colligation_from_json(require(in, "colligation")),
                      polynomial_from_json(require(in, "Q0"))};
  std::vector<MatrixTuple> pts;
  for (const json& p : require(in, "samples")) pts.push_back(tuple_from_json(p));
  TruncationReport rep = uniform_error_report(fn, pts, f.truncation_L);
  json r = {{"L", rep.L}, {"rho", rep.rho}, {"apriori_bound", rep.apriori_bound},
            {"observed_max", rep.observed_max}, {"errors", rep.errors}};
  if (in.value("extract", false))
    r["polynomial"] = to_json(extract_nc_polynomial(fn, f.truncation_L, in.value("coeff_tol", 0.0)));
  return {r, true};
}

Outcome cmd_selftest(const json&, const Flags& f) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"pass", ok}});
    all = all && ok;
  };
  NcMatrixPolynomial z = NcMatrixPolynomial::row_pencil(1);
  MatrixTuple half = MatrixTuple::scalar({0.5});
  record("geometric kernel",
         std::abs(szego_kernel_solve(z, half, half, Matrix::Ones(1, 1))(0, 0) - 4.0 / 3.0) < 1e-12);
  PickProblem p{z, half, Matrix::Ones(1, 1), Matrix::Constant(1, 1, 0.9)};
  PickReport rep = solve_pick(p, SolveOptions{f.tol, 1, 10, f.seed});
  record("scalar pick solve", rep.colligation && rep.interp_residual < 1e-8);
  PickProblem bad{z, MatrixTuple::scalar({0.0}), Matrix::Ones(1, 1), Matrix::Constant(1, 1, 1.5)};
  record("scalar pick infeasible", !pick_certificate(bad).certificate.psd);
  return {{{"checks", checks}}, all};
}

}  // namespace

static const char* describe(const std::string& name) {
  static const std::map<std::string, const char*> text = {
      {"eval", "evaluate an nc matrix polynomial at a tuple"},
      {"domain-check", "test ||Q(Z)|| < 1"},
      {"envelope", "full or similarity envelope membership with witness"},
      {"zariski", "one-variable nc-Zariski membership with separator"},
      {"cp-check", "Choi test of a given Choi matrix or the Szego kernel on points"},
      {"pick-check", "left-tangential Pick certificate"},
      {"pick-solve", "certify, synthesize a colligation and verify it"},
      {"ltoa-check", "LTOA interpolation certificate"},
      {"stein-check", "Stein dominance certificate, optional strict-Stein refuter"},
      {"realize-eval", "evaluate a colligation's transfer function"},
      {"okaweil", "truncation errors of the realization series"},
      {"selftest", "run built-in checks"}};
  return text.at(name);
}

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative Schur-Agler interpolation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--tol", f.tol, "relative PSD tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--max-multiplicity", f.max_multiplicity, "envelope search bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--amplification", f.amplification, "amplification level")
      ->check(CLI::PositiveNumber);
  app.add_option("--truncation-L", f.truncation_L, "Neumann truncation length")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--samples", f.samples, "random samples")->check(CLI::PositiveNumber);

  using Handler = Outcome (*)(const json&, const Flags&);
  const std::vector<std::pair<std::string, Handler>> commands = {
      {"eval", cmd_eval},           {"domain-check", cmd_domain},   {"envelope", cmd_envelope},
      {"zariski", cmd_zariski},     {"cp-check", cmd_cp},           {"pick-check", cmd_pick_check},
      {"pick-solve", cmd_pick_solve}, {"ltoa-check", cmd_ltoa},     {"stein-check", cmd_stein},
      {"realize-eval", cmd_realize}, {"okaweil", cmd_okaweil},      {"selftest", cmd_selftest}};
  std::string chosen;
  Handler handler = nullptr;
  for (const auto& [name, h] : commands) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    if (name != "selftest") sub->add_option("input", f.input, "input JSON path, - for stdin");
    sub->callback([&, name = name, h = h] {
      chosen = name;
      handler = h;
    });
  }

  auto fail = [](const std::string& type, const std::string& msg) {
    json err = {{"v", 1}, {"error", {{"type", type}, {"message", msg}}}};
    std::cout << err.dump() << "\n";
    std::cerr << "ncpick: " << msg << "\n";
    return 2;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    json in = chosen == "selftest" ? json::object() : read_input(f.input);
    Outcome out = handler(in, f);
    json payload = {{"v", 1}, {"command", chosen}, {"flags", flags_json(f)}, {"result", out.result}};
    std::cout << payload.dump() << "\n";
    return out.positive ? 0 : 1;
  } catch (const SchemaError& e) {
    return fail("schema", e.what());
  } catch (const DimensionError& e) {
    return fail("dimension", e.what());
  } catch (const DomainError& e) {
    return fail("domain", e.what());
  } catch (const NumericalError& e) {
    return fail("numerical", e.what());
  } catch (const ConsistencyError& e) {
    return fail("consistency", e.what());
  } catch (const std::exception& e) {
    return fail("runtime", e.what());
  }
}
