#pragma once

// JSON encodings shared by the command-line tool and the tests.
//   complex scalar  [re, im]   (a bare number is accepted on input)
//   matrix          row-major nested arrays of complex scalars
//   MatrixTuple     {"d", "n", "components": [matrix, ...]}
//   polynomial      {"d", "s", "r", "terms": [{"word": [ints], "coeff": matrix}, ...]}
//   colligation     {"dimX", "dimU", "dimY", "r", "A", "B", "C", "D", "flags"}
//   certificate     {"verdict", "min_eig", "max_eig", "tol", "marginal"}
//   Choi matrix     {"n", "block_dim", "matrix"}
//   witness         {"kind", "multiplicities", "matrix"}

#include <json.hpp>

#include "ncpick/envelopes.hpp"
#include "ncpick/kernels.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/polynomial.hpp"
#include "ncpick/realization.hpp"

namespace ncpick {

using json = nlohmann::json;

/// Raised for input that does not match a schema.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json to_json(cplx z);
json to_json(const Matrix& m);
json to_json(const MatrixTuple& z);
json to_json(const NcMatrixPolynomial& q);
json to_json(const Colligation& c);
json to_json(const PsdCertificate& c);
json to_json(const ChoiMatrix& c);
json to_json(const EnvelopeWitness& w);

cplx complex_from_json(const json& j);
/// rows/cols give the shape of an empty matrix written as [].
Matrix matrix_from_json(const json& j, Eigen::Index rows = 0, Eigen::Index cols = 0);
MatrixTuple tuple_from_json(const json& j);
NcMatrixPolynomial polynomial_from_json(const json& j);
Colligation colligation_from_json(const json& j);
ChoiMatrix choi_from_json(const json& j);

/// Member lookup that raises SchemaError when absent.
const json& require(const json& j, const char* key);

}  // namespace ncpick
