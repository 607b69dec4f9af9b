#ifndef NCFA_TEST_UTIL_HPP
#define NCFA_TEST_UTIL_HPP

#include <random>

#include "ncfa/grid.hpp"
#include "ncfa/matrix.hpp"

namespace ncfa::testutil {

inline Matrix gaussianMatrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix randomPsd(int d, std::mt19937_64& rng) {
  Matrix g = gaussianMatrix(d, rng);
  return g.adjoint() * g;
}

inline Matrix randomContraction(int d, std::mt19937_64& rng) {
  Matrix b = gaussianMatrix(d, rng);
  double n = operatorNorm(b);
  if (n > 1.0) b /= n;
  return b;
}

inline MatrixField randomField(const GridSpec& g, int d, std::mt19937_64& rng) {
  MatrixField f(g, d);
  for (Matrix& v : f.values) v = gaussianMatrix(d, rng);
  return f;
}

// Scalar (d=1) step field from a lambda over cell centers.
template <class Fn>
MatrixField scalarField(const GridSpec& g, Fn fn) {
  MatrixField f(g, 1);
  for (std::int64_t i = 0; i < f.cellCount(); ++i) {
    Matrix v(1, 1);
    v(0, 0) = Complex(fn(g.cellCenter(i).value()), 0.0);
    f.value(i) = v;
  }
  return f;
}

}  // namespace ncfa::testutil

#endif
