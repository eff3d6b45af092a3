#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ncpick/polynomial.hpp"

using namespace ncpick;
using testutil::jordan;
using testutil::mat;

TEST_CASE("word concatenation and transpose") {
  Word e = Word::empty(2), w12(2, {1, 2});
  CHECK(word_concat(e, w12) == w12);
  CHECK(word_concat(Word(2, {2}), Word(2, {1})) == Word(2, {2, 1}));
  CHECK(word_concat(Word(3, {1, 2, 3}), Word(3, {3, 1})).length() == 5);
  CHECK(word_transpose(Word(3, {1, 2, 3})) == Word(3, {3, 2, 1}));
  CHECK(word_transpose(Word::empty(1)).is_empty());
  CHECK_THROWS_AS(word_concat(Word(2, {1}), Word(3, {1})), DimensionError);
  CHECK_THROWS_AS(Word(2, {3}), DimensionError);

  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> l(rng.uniform_int(0, 6));
    for (int& x : l) x = rng.uniform_int(1, 3);
    Word w(3, l);
    CHECK(word_transpose(word_transpose(w)) == w);
  }
}

TEST_CASE("word evaluation") {
  Rng rng(1);
  MatrixTuple z = random_tuple(rng, 2, 3);
  CHECK(eval_word(z, Word::empty(2)).isApprox(Matrix::Identity(3, 3)));

  MatrixTuple e({mat({{0, 1}, {0, 0}}), mat({{0, 0}, {0, 1}})});
  // hand product Z1 Z2
  CHECK(eval_word(e, Word(2, {1, 2})) == mat({{0, 1}, {0, 0}}));

  cplx lam(0.3, -0.2);
  MatrixTuple j({jordan(2, lam)});
  CHECK((eval_word(j, Word(1, {1, 1})) - mat({{lam * lam, 2.0 * lam}, {0, lam * lam}})).norm() < 1e-15);
  CHECK_THROWS_AS(eval_word(z, Word(3, {3})), DimensionError);
}

TEST_CASE("word evaluation is multiplicative") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const int d = rng.uniform_int(1, 3), n = rng.uniform_int(1, 4);
    MatrixTuple z = random_tuple(rng, d, n).scaled(0.7);
    auto rand_word = [&] {
      std::vector<int> l(rng.uniform_int(0, 5));
      for (int& x : l) x = rng.uniform_int(1, d);
      return Word(d, l);
    };
    Word a = rand_word(), b = rand_word();
    Matrix lhs = eval_word(z, word_concat(a, b));
    Matrix rhs = eval_word(z, a) * eval_word(z, b);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("polynomial evaluation examples") {
  NcMatrixPolynomial row = NcMatrixPolynomial::row_pencil(2);
  Matrix v = eval_nc_poly(row, MatrixTuple::scalar({0.3, 0.4}));
  CHECK(v.rows() == 1);
  CHECK(v.cols() == 2);
  CHECK(std::abs(v(0, 0) - 0.3) < 1e-15);
  CHECK(std::abs(v(0, 1) - 0.4) < 1e-15);

  Matrix m = mat({{1, 2}, {3, 4}});
  Rng rng(3);
  MatrixTuple z = random_tuple(rng, 2, 3);
  CHECK((eval_nc_poly(NcMatrixPolynomial::constant(2, m), z) - kron(m, Matrix::Identity(3, 3))).norm() < 1e-15);
}

TEST_CASE("univariate polynomial on a Jordan cell gives Taylor coefficients") {
  // p(z) = 1 - 2z + 0.5 z^3 + z^4
  std::vector<cplx> c{1.0, -2.0, 0.0, 0.5, 1.0};
  NcMatrixPolynomial p = NcMatrixPolynomial::univariate(c);
  const cplx lam(0.4, 0.1);
  const int n = 4;
  Matrix v = eval_nc_poly(p, MatrixTuple({jordan(n, lam)}));
  // p^{(k)}(lam) / k! from the coefficient list directly
  for (int k = 0; k < n; ++k) {
    cplx taylor = 0.0;
    for (int j = k; j < static_cast<int>(c.size()); ++j) {
      double binom = 1.0;
      for (int q = 1; q <= k; ++q) binom = binom * (j - k + q) / q;
      taylor += c[j] * binom * std::pow(lam, j - k);
    }
    for (int i = 0; i + k < n; ++i) CHECK(std::abs(v(i, i + k) - taylor) < 1e-13);
  }
  CHECK(v.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() < 1e-15);
}

TEST_CASE("polynomial canonical form and algebra") {
  NcMatrixPolynomial p(2, 1, 1);
  p.add_term(Word(2, {1}), Matrix::Ones(1, 1));
  p.add_term(Word(2, {1}), -Matrix::Ones(1, 1));
  CHECK(p.size() == 0);
  CHECK_THROWS_AS(p.add_term(Word(2, {1}), Matrix::Ones(2, 1)), DimensionError);

  Rng rng(4);
  NcMatrixPolynomial a(2, 2, 3), b(2, 3, 1);
  for (int t = 0; t < 4; ++t) {
    a.add_term(Word(2, {rng.uniform_int(1, 2)}), rng.gaussian(2, 3));
    b.add_term(Word(2, {rng.uniform_int(1, 2), rng.uniform_int(1, 2)}), rng.gaussian(3, 1));
  }
  MatrixTuple z = random_tuple(rng, 2, 3);
  Matrix lhs = eval_nc_poly(a * b, z);
  Matrix rhs = eval_nc_poly(a, z) * eval_nc_poly(b, z);
  CHECK((lhs - rhs).norm() < 1e-10 * rhs.norm());
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = -2.0;
  CHECK(operator_norm(d) == doctest::Approx(2.0));
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Matrix m = rng.gaussian(3, 5), n = rng.gaussian(5, 2), q = rng.gaussian(2, 2);
    CHECK(std::abs(operator_norm(m) - operator_norm(m.adjoint())) <= 1e-12 * operator_norm(m));
    CHECK(operator_norm(m * n) <= operator_norm(m) * operator_norm(n) * (1 + 1e-12));
    CHECK(operator_norm(block_diag(m, q)) ==
          doctest::Approx(std::max(operator_norm(m), operator_norm(q))).epsilon(1e-12));
  }
  Matrix bad = Matrix::Zero(1, 1);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(operator_norm(bad), NumericalError);
}

TEST_CASE("domain membership") {
  NcMatrixPolynomial z = NcMatrixPolynomial::row_pencil(1);
  DomainStatus st = in_domain(z, MatrixTuple::scalar({0.5}));
  CHECK(st.inside);
  CHECK(st.margin == doctest::Approx(0.5));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK_FALSE(in_domain(NcMatrixPolynomial::row_pencil(2), MatrixTuple::scalar({h, h})).inside);
  st = in_domain(z, MatrixTuple({0.9 * jordan(2, 0.0)}));
  CHECK(st.inside);
  CHECK(st.norm == doctest::Approx(0.9));

  Rng rng(6);
  NcMatrixPolynomial row = NcMatrixPolynomial::row_pencil(2);
  for (int t = 0; t < 30; ++t) {
    MatrixTuple pt = random_tuple(rng, 2, 3).scaled(rng.uniform(0.1, 0.6));
    Matrix u = rng.unitary(3);
    DomainStatus a = in_domain(row, pt), b = in_domain(row, similarity(pt, u));
    CHECK(a.inside == b.inside);
    CHECK(std::abs(a.margin - b.margin) < 1e-12);
  }
}

TEST_CASE("direct sums") {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const int d = rng.uniform_int(1, 3), n = rng.uniform_int(1, 3), m = rng.uniform_int(1, 3);
    MatrixTuple z = random_tuple(rng, d, n), w = random_tuple(rng, d, m);
    MatrixTuple zw = direct_sum(z, w);
    CHECK(zw.n() == n + m);
    NcMatrixPolynomial q(d, 2, 3);
    for (int k = 0; k < 4; ++k) {
      std::vector<int> l(rng.uniform_int(0, 3));
      for (int& x : l) x = rng.uniform_int(1, d);
      q.add_term(Word(d, l), rng.gaussian(2, 3));
    }
    Matrix qz = eval_nc_poly(q, z), qw = eval_nc_poly(q, w), qzw = eval_nc_poly(q, zw);
    CHECK((qzw - amplified_direct_sum(qz, n, qw, m)).norm() <= 1e-12 * std::max(1.0, qzw.norm()));
    CHECK(operator_norm(qzw) ==
          doctest::Approx(std::max(operator_norm(qz), operator_norm(qw))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(direct_sum(MatrixTuple::zero(1, 2), MatrixTuple::zero(2, 2)), DimensionError);
}

TEST_CASE("similarity") {
  Rng rng(9);
  MatrixTuple z = random_tuple(rng, 2, 3);
  CHECK((similarity(z, Matrix::Identity(3, 3))[1] - z[1]).norm() == 0.0);
  for (int t = 0; t < 30; ++t) {
    const int d = rng.uniform_int(1, 2), n = rng.uniform_int(1, 4);
    MatrixTuple x = random_tuple(rng, d, n);
    Matrix alpha = random_invertible(rng, n, rng.uniform(1.0, 50.0));
    MatrixTuple y = similarity(similarity(x, alpha), alpha.inverse());
    for (int k = 0; k < d; ++k) CHECK((y[k] - x[k]).norm() <= 1e-10 * std::max(1.0, x[k].norm()));

    NcMatrixPolynomial q(d, 2, 2);
    for (int k = 0; k < 3; ++k) {
      std::vector<int> l(rng.uniform_int(0, 3));
      for (int& c : l) c = rng.uniform_int(1, d);
      q.add_term(Word(d, l), rng.gaussian(2, 2));
    }
    Matrix lhs = eval_nc_poly(q, similarity(x, alpha));
    Matrix rhs = kron(Matrix::Identity(2, 2), alpha) * eval_nc_poly(q, x) *
                 kron(Matrix::Identity(2, 2), alpha.inverse());
    CHECK((lhs - rhs).norm() <= 1e-9 * condition_number(alpha) * std::max(1.0, rhs.norm()));
  }
  Matrix sing = Matrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(similarity(MatrixTuple::zero(1, 2), sing), NumericalError);
}

TEST_CASE("intertwining predicate") {
  Rng rng(10);
  MatrixTuple z = random_tuple(rng, 2, 2);
  Matrix v = rng.gaussian(2, 2);
  CHECK(check_intertwining(z, z, Matrix::Identity(2, 2), v, v, 1e-12).ok());

  // the only self-intertwiners of this pair are scalars, so any value passes
  MatrixTuple e({testutil::mat({{0, 1}, {0, 0}}), testutil::mat({{0, 0}, {0, 1}})});
  Matrix scalar = cplx(0.7, 0.2) * Matrix::Identity(2, 2);
  for (int t = 0; t < 10; ++t) {
    Matrix val = rng.gaussian(2, 2);
    CHECK(check_intertwining(e, e, scalar, val, val, 1e-12).ok());
  }

  MatrixTuple z0 = MatrixTuple::scalar({0.0}), z1 = MatrixTuple::scalar({1.0});
  IntertwiningCheck c = check_intertwining(z0, z1, Matrix::Ones(1, 1), Matrix::Ones(1, 1),
                                           Matrix::Ones(1, 1), 1e-12);
  CHECK_FALSE(c.tuple_intertwines);
  CHECK_FALSE(c.ok());
}
