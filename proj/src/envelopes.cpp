#include "ncpick/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ncpick/random.hpp"

namespace ncpick {

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::DirectSum: return "direct-sum";
    case WitnessKind::Similarity: return "similarity";
    case WitnessKind::LeftInjectiveIntertwiner: return "left-injective-intertwiner";
  }
  return "unknown";
}

MatrixTuple nc_envelope_point(const std::vector<MatrixTuple>& generators,
                              const std::vector<int>& multiplicities) {
  if (generators.size() != multiplicities.size())
    throw DimensionError("nc_envelope_point: one multiplicity per generator");
  std::optional<MatrixTuple> out;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (multiplicities[j] < 0) throw DimensionError("nc_envelope_point: negative multiplicity");
    for (int c = 0; c < multiplicities[j]; ++c)
      out = out ? direct_sum(*out, generators[j]) : generators[j];
  }
  if (!out) throw DimensionError("nc_envelope_point: empty selection");
  return *out;
}

Matrix intertwiner_space(const MatrixTuple& z, const MatrixTuple& ztilde, double rel_tol) {
  if (z.d() != ztilde.d()) throw DimensionError("intertwiner_space: variable count mismatch");
  const int N = z.n(), m = ztilde.n();
  Matrix stacked(static_cast<Eigen::Index>(z.d()) * N * m, static_cast<Eigen::Index>(N) * m);
  Matrix in = Matrix::Identity(N, N), im = Matrix::Identity(m, m);
  for (int k = 0; k < z.d(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * N * m, N * m) =
        kron(ztilde[k].transpose(), in) - kron(im, z[k]);
  return null_space(stacked, rel_tol);
}

namespace {

void for_each_multiplicity(int g, int total, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> mult(g, 0);
  std::function<bool(int, int)> rec = [&](int j, int left) {
    if (j == g - 1) {
      mult[j] = left;
      return f(mult);
    }
    for (int c = left; c >= 0; --c) {
      mult[j] = c;
      if (rec(j + 1, left - c)) return true;
    }
    return false;
  };
  rec(0, total);
}

double witness_residual(const MatrixTuple& z, const MatrixTuple& zt, const Matrix& w) {
  double res = 0.0;
  for (int k = 0; k < z.d(); ++k) res = std::max(res, operator_norm(w * zt[k] - z[k] * w));
  return res;
}

double tuple_scale(const MatrixTuple& z) {
  double s = 1.0;
  for (const Matrix& c : z.components()) s = std::max(s, operator_norm(c));
  return s;
}

// Tries random elements of the intertwiner space; `accept` judges a
// normalized candidate.
std::optional<Matrix> random_search(const Matrix& basis, int rows, int cols, Rng& rng,
                                    const std::function<bool(const Matrix&)>& accept) {
  if (basis.cols() == 0) return std::nullopt;
  for (int trial = 0; trial < 24; ++trial) {
    Vector c = rng.gaussian(static_cast<int>(basis.cols()), 1).col(0);
    Vector v = basis * c;
    Matrix w = v.reshaped(rows, cols);
    double nrm = operator_norm(w);
    if (nrm == 0.0) continue;
    w /= nrm;
    if (accept(w)) return w;
  }
  return std::nullopt;
}

template <class Accept>
std::optional<EnvelopeWitness> envelope_search(const MatrixTuple& ztilde,
                                               const std::vector<MatrixTuple>& generators,
                                               int max_multiplicity, bool square,
                                               std::uint64_t seed, WitnessKind kind,
                                               Accept accept) {
  if (generators.empty()) throw DimensionError("envelope search: no generators");
  if (max_multiplicity < 1) throw DimensionError("envelope search: max_multiplicity must be >= 1");
  for (const MatrixTuple& g : generators)
    if (g.d() != ztilde.d()) throw DimensionError("envelope search: variable count mismatch");
  const int m = ztilde.n();
  const int ng = static_cast<int>(generators.size());
  Rng rng(seed);
  std::optional<EnvelopeWitness> found;
  for (int total = 1; total <= max_multiplicity && !found; ++total) {
    for_each_multiplicity(ng, total, [&](const std::vector<int>& mult) {
      int N = 0;
      for (int j = 0; j < ng; ++j) N += mult[j] * generators[j].n();
      if (N < m || (square && N != m)) return false;
      MatrixTuple z = nc_envelope_point(generators, mult);
      Matrix basis = intertwiner_space(z, ztilde);
      const double tol = 1e-9 * tuple_scale(z) * tuple_scale(ztilde);
      auto ok = [&](const Matrix& w) {
        return accept(w) && witness_residual(z, ztilde, w) <= tol;
      };
      if (auto w = random_search(basis, N, m, rng, ok)) {
        found = EnvelopeWitness{kind, mult, *w};
        return true;
      }
      return false;
    });
  }
  return found;
}

}  // namespace

std::optional<EnvelopeWitness> full_envelope_membership(const MatrixTuple& ztilde,
                                                        const std::vector<MatrixTuple>& generators,
                                                        int max_multiplicity, double rank_tol,
                                                        std::uint64_t seed) {
  return envelope_search(ztilde, generators, max_multiplicity, false, seed,
                         WitnessKind::LeftInjectiveIntertwiner,
                         [&](const Matrix& w) { return min_singular_value(w) > rank_tol; });
}

std::optional<EnvelopeWitness> similarity_envelope_membership(
    const MatrixTuple& ztilde, const std::vector<MatrixTuple>& generators, int max_multiplicity,
    double cond_bound, std::uint64_t seed) {
  return envelope_search(ztilde, generators, max_multiplicity, true, seed,
                         WitnessKind::Similarity,
                         [&](const Matrix& w) { return condition_number(w) <= cond_bound; });
}

JordanData jordan_spectral_data(const Matrix& m, double cluster_tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("jordan_spectral_data: square");
  if (!all_finite(m)) throw NumericalError("jordan_spectral_data: non-finite entries");
  const int dim = static_cast<int>(m.rows());
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  const Vector ev = es.eigenvalues();
  const double eps = std::numeric_limits<double>::epsilon();
  const double mnorm = std::max(1.0, operator_norm(m));
  JordanData jd;
  jd.radius = std::max(cluster_tol, 100.0 * std::pow(eps * mnorm, 1.0 / dim));

  // single linkage via union-find
  std::vector<int> parent(dim);
  for (int i = 0; i < dim; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (std::abs(ev(i) - ev(j)) <= jd.radius) parent[find(i)] = find(j);
  std::vector<int> roots;
  std::vector<std::vector<int>> members;
  for (int i = 0; i < dim; ++i) {
    int r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      members.push_back({i});
    } else {
      members[it - roots.begin()].push_back(i);
    }
  }

  Matrix id = Matrix::Identity(dim, dim);
  for (const auto& grp : members) {
    cplx mean = 0.0;
    for (int i : grp) mean += ev(i);
    mean /= static_cast<double>(grp.size());
    const int mult = static_cast<int>(grp.size());
    Matrix shifted = m - mean * id;
    const double snorm = std::max(1.0, operator_norm(shifted));
    Matrix power = id;
    int chain = mult, prev = 0;
    for (int k = 1; k <= mult; ++k) {
      power = power * shifted;
      RealVector sv = Eigen::BDCSVD<Matrix>(power).singularValues();
      const double thr = 1e-10 * std::pow(snorm, k);
      int nul = 0;
      for (Eigen::Index q = 0; q < sv.size(); ++q)
        if (sv(q) <= thr) ++nul;
      if (nul >= mult) {
        chain = k;
        break;
      }
      if (k > 1 && nul <= prev) {
        chain = k - 1;
        break;
      }
      prev = nul;
    }
    jd.eigenvalues.push_back(mean);
    jd.chain_lengths.push_back(chain);
    jd.multiplicities.push_back(mult);
  }
  for (std::size_t i = 0; i < jd.eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < jd.eigenvalues.size(); ++j)
      if (std::abs(jd.eigenvalues[i] - jd.eigenvalues[j]) < 10.0 * jd.radius) jd.ambiguous = true;
  return jd;
}

static double binomial(int j, int k) {
  double b = 1.0;
  for (int q = 1; q <= k; ++q) b = b * (j - k + q) / q;
  return b;
}

NcMatrixPolynomial hermite_separating_poly(const std::vector<HermiteConstraint>& constraints) {
  struct Row {
    cplx lambda;
    int order;
    cplx rhs;
  };
  std::vector<Row> rows;
  int nonvanish = 0;
  for (const HermiteConstraint& c : constraints) {
    if (c.vanish_orders < 0) throw DimensionError("hermite: negative vanish order count");
    for (int k = 0; k < c.vanish_orders; ++k) rows.push_back({c.lambda, k, 0.0});
    if (c.nonvanish_order) {
      if (++nonvanish > 1) throw DimensionError("hermite: at most one nonvanish condition");
      if (*c.nonvanish_order != c.vanish_orders)
        throw DimensionError("hermite: nonvanish order must follow the vanishing orders");
      rows.push_back({c.lambda, *c.nonvanish_order, 1.0});
    }
  }
  for (std::size_t i = 0; i < constraints.size(); ++i)
    for (std::size_t j = i + 1; j < constraints.size(); ++j)
      if (constraints[i].lambda == constraints[j].lambda)
        throw DimensionError("hermite: nodes must be distinct");
  const int N = static_cast<int>(rows.size());
  if (N == 0) return NcMatrixPolynomial(1, 1, 1);
  Matrix v = Matrix::Zero(N, N);
  Vector rhs(N);
  for (int i = 0; i < N; ++i) {
    rhs(i) = rows[i].rhs;
    for (int j = rows[i].order; j < N; ++j)
      v(i, j) = binomial(j, rows[i].order) * std::pow(rows[i].lambda, j - rows[i].order);
  }
  Eigen::FullPivLU<Matrix> lu(v);
  if (!lu.isInvertible()) throw NumericalError("hermite: confluent Vandermonde system singular");
  Vector c = lu.solve(rhs);
  const double cmax = c.cwiseAbs().maxCoeff();
  std::vector<cplx> coeffs(N);
  for (int j = 0; j < N; ++j) coeffs[j] = std::abs(c(j)) <= 1e-14 * cmax ? cplx(0.0) : c(j);
  return NcMatrixPolynomial::univariate(coeffs);
}

ZariskiResult zariski_membership_d1(const Matrix& ztilde, const std::vector<Matrix>& omega,
                                    double cluster_tol) {
  if (omega.empty()) throw DimensionError("zariski_membership_d1: empty set");
  JordanData jt = jordan_spectral_data(ztilde, cluster_tol);
  ZariskiResult res;
  res.ambiguous = jt.ambiguous;

  struct Node {
    cplx lambda;
    int chain;
    double radius;
  };
  std::vector<Node> nodes;
  for (const Matrix& w : omega) {
    JordanData jw = jordan_spectral_data(w, cluster_tol);
    res.ambiguous = res.ambiguous || jw.ambiguous;
    for (std::size_t i = 0; i < jw.eigenvalues.size(); ++i) {
      auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& nd) {
        return std::abs(nd.lambda - jw.eigenvalues[i]) <= nd.radius + jw.radius;
      });
      if (it == nodes.end())
        nodes.push_back({jw.eigenvalues[i], jw.chain_lengths[i], jw.radius});
      else
        it->chain = std::max(it->chain, jw.chain_lengths[i]);
    }
  }

  std::optional<std::pair<cplx, int>> offender;  // (eigenvalue, order); node index via match
  int offender_node = -1;
  for (std::size_t i = 0; i < jt.eigenvalues.size() && !offender; ++i) {
    int match = -1;
    for (std::size_t q = 0; q < nodes.size(); ++q)
      if (std::abs(nodes[q].lambda - jt.eigenvalues[i]) <= nodes[q].radius + jt.radius)
        match = static_cast<int>(q);
    if (match < 0) {
      offender = std::make_pair(jt.eigenvalues[i], 0);
    } else if (nodes[match].chain < jt.chain_lengths[i]) {
      offender = std::make_pair(nodes[match].lambda, nodes[match].chain);
      offender_node = match;
    }
  }
  res.member = !offender;
  if (res.member) return res;

  std::vector<HermiteConstraint> cons;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    HermiteConstraint c{nodes[q].lambda, nodes[q].chain, std::nullopt};
    if (static_cast<int>(q) == offender_node) c.nonvanish_order = nodes[q].chain;
    cons.push_back(c);
  }
  if (offender_node < 0) cons.push_back({offender->first, 0, 0});
  res.separator = hermite_separating_poly(cons);
  return res;
}

}  // namespace ncpick
