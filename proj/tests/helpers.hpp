#pragma once

#include <doctest.h>

#include "ncpick/linalg.hpp"
#include "ncpick/matrix_tuple.hpp"
#include "ncpick/random.hpp"

namespace testutil {

using ncpick::cplx;
using ncpick::Matrix;

inline Matrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (cplx v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Matrix jordan(int n, cplx lambda) {
  Matrix j = lambda * Matrix::Identity(n, n);
  for (int k = 0; k + 1 < n; ++k) j(k, k + 1) = 1.0;
  return j;
}

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace testutil
