#include "ncpick/json_io.hpp"

namespace ncpick {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

static int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const MatrixTuple& z) {
  json comps = json::array();
  for (const Matrix& c : z.components()) comps.push_back(to_json(c));
  return {{"d", z.d()}, {"n", z.n()}, {"components", comps}};
}

json to_json(const NcMatrixPolynomial& q) {
  json terms = json::array();
  for (const auto& [w, c] : q.terms()) terms.push_back({{"word", w.letters()}, {"coeff", to_json(c)}});
  return {{"d", q.d()}, {"s", q.s()}, {"r", q.r()}, {"terms", terms}};
}

json to_json(const Colligation& c) {
  json flags = json::array();
  if (c.contractive) flags.push_back("contractive");
  if (c.unitary) flags.push_back("unitary");
  return {{"dimX", c.dimX}, {"dimU", c.dimU}, {"dimY", c.dimY}, {"r", c.r},
          {"A", to_json(c.A)},  {"B", to_json(c.B)},   {"C", to_json(c.C)}, {"D", to_json(c.D)},
          {"flags", flags}};
}

json to_json(const PsdCertificate& c) {
  return {{"verdict", c.psd ? "psd" : "not_psd"},
          {"min_eig", c.min_eig},
          {"max_eig", c.max_eig},
          {"tol", c.tol},
          {"marginal", c.marginal}};
}

json to_json(const ChoiMatrix& c) {
  return {{"n", c.n}, {"block_dim", c.block_dim}, {"matrix", to_json(c.matrix)}};
}

json to_json(const EnvelopeWitness& w) {
  return {{"kind", to_string(w.kind)}, {"multiplicities", w.multiplicities}, {"matrix", to_json(w.matrix)}};
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw SchemaError("complex scalar must be a number or [re, im]");
}

Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) throw SchemaError("matrix must be an array of rows");
  if (j.empty()) {
    if (rows != 0 && cols != 0) throw SchemaError("matrix is empty but its shape is not");
    return Matrix::Zero(rows, cols);
  }
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw SchemaError("matrix rows must be arrays");
  const Eigen::Index c = static_cast<Eigen::Index>(j[0].size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != c)
      throw SchemaError("matrix rows must have equal length");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  if (!all_finite(m)) throw SchemaError("matrix has non-finite entries");
  return m;
}

MatrixTuple tuple_from_json(const json& j) {
  const int d = require_int(j, "d"), n = require_int(j, "n");
  const json& comps = require(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != d)
    throw SchemaError("tuple: components must list d matrices");
  std::vector<Matrix> c;
  for (const json& m : comps) {
    Matrix x = matrix_from_json(m);
    if (x.rows() != n || x.cols() != n) throw SchemaError("tuple: components must be n x n");
    c.push_back(std::move(x));
  }
  return MatrixTuple(std::move(c));
}

NcMatrixPolynomial polynomial_from_json(const json& j) {
  const int d = require_int(j, "d"), s = require_int(j, "s"), r = require_int(j, "r");
  NcMatrixPolynomial q(d, s, r);
  const json& terms = require(j, "terms");
  if (!terms.is_array()) throw SchemaError("polynomial: terms must be an array");
  for (const json& t : terms) {
    const json& w = require(t, "word");
    if (!w.is_array()) throw SchemaError("polynomial: word must be an array of letters");
    std::vector<int> letters;
    for (const json& l : w) {
      if (!l.is_number_integer()) throw SchemaError("polynomial: letters must be integers");
      letters.push_back(l.get<int>());
    }
    Matrix c = matrix_from_json(require(t, "coeff"));
    if (c.rows() != s || c.cols() != r) throw SchemaError("polynomial: coefficient must be s x r");
    q.add_term(Word(d, letters), c);
  }
  return q;
}

Colligation colligation_from_json(const json& j) {
  const int x = require_int(j, "dimX"), u = require_int(j, "dimU"), y = require_int(j, "dimY"),
            r = require_int(j, "r");
  Colligation c;
  c.dimX = x;
  c.dimU = u;
  c.dimY = y;
  c.r = r;
  c.A = matrix_from_json(require(j, "A"), static_cast<Eigen::Index>(r) * x, x);
  c.B = matrix_from_json(require(j, "B"), static_cast<Eigen::Index>(r) * x, u);
  c.C = matrix_from_json(require(j, "C"), y, x);
  c.D = matrix_from_json(require(j, "D"), y, u);
  if (j.contains("flags") && j["flags"].is_array())
    for (const json& f : j["flags"]) {
      if (f == "contractive") c.contractive = true;
      if (f == "unitary") c.unitary = true;
    }
  c.validate();
  return c;
}

ChoiMatrix choi_from_json(const json& j) {
  ChoiMatrix c;
  c.n = require_int(j, "n");
  c.block_dim = require_int(j, "block_dim");
  c.matrix = matrix_from_json(require(j, "matrix"));
  if (c.n < 1 || c.matrix.rows() != static_cast<Eigen::Index>(c.n) * c.block_dim ||
      c.matrix.cols() != c.matrix.rows())
    throw SchemaError("Choi matrix: size must be (n block_dim) square");
  return c;
}

}  // namespace ncpick
