#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ncfa/grid.hpp"
#include "test_util.hpp"

using namespace ncfa;
using namespace ncfa::testutil;

TEST_CASE("grid geometry: window, cell count, indexing") {
  GridSpec g{1, 6};
  CHECK(g.cellWidth() == Rational(1, 192));
  CHECK(g.cellCount() == std::int64_t(3) << 8);
  CHECK(g.windowLo() == Rational(-2));
  CHECK(g.windowHi() == Rational(2));
  for (std::int64_t i : {std::int64_t(0), std::int64_t(100), g.cellCount() - 1}) {
    RatInterval cell = g.cellInterval(i);
    CHECK(cell.length() == g.cellWidth());
    CHECK(g.cellIndexOf(g.cellCenter(i)) == i);
    CHECK(g.cellIndexOf(cell.hi) == i);
    CHECK(g.onGrid(cell.lo));
    CHECK(g.onGrid(cell.hi));
    CHECK(!g.onGrid(g.cellCenter(i)));
  }
  CHECK(g.cellInterval(0).lo == g.windowLo());
  CHECK(g.cellInterval(g.cellCount() - 1).hi == g.windowHi());
  CHECK_THROWS(g.cellIndexOf(Rational(3)));
  CHECK_THROWS(g.cellIndexOf(Rational(-2)));  // lo endpoint is excluded
}

TEST_CASE("meanOver on constants and an indicator") {
  GridSpec g{1, 6};
  MatrixField f(g, 2);
  Matrix m = Matrix::Identity(2, 2) * Complex(1.5, -0.5);
  for (Matrix& v : f.values) v = m;
  CHECK((meanOver(f, RatInterval(Rational(-1, 3), Rational(7, 12))) - m).norm() <
        1e-14);

  MatrixField ind(g, 2);
  for (std::int64_t i = 0; i < g.cellCount(); ++i)
    if (RatInterval(Rational(0), Rational(1, 4)).contains(g.cellCenter(i)))
      ind.value(i) = Matrix::Identity(2, 2);
  Matrix avg = meanOver(ind, RatInterval(Rational(0), Rational(1, 2)));
  CHECK((avg - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);

  MatrixField zero(g, 2);
  CHECK(meanOver(zero, g.window()).norm() == 0.0);
}

TEST_CASE("centeredSecondMoment: constants, scalar split, naive oracle") {
  GridSpec g{1, 4};
  MatrixField c(g, 2);
  for (Matrix& v : c.values) v = Matrix::Identity(2, 2) * 3.0;
  CHECK(centeredSecondMoment(c, g.window()).norm() < 1e-12);

  // d=1, +-1 split evenly on I = (-1, 1]: variance 1, integral |I| = 2
  MatrixField s = scalarField(g, [](double t) { return t > 0 ? 1.0 : -1.0; });
  RatInterval I(Rational(-1), Rational(1));
  CHECK(std::abs(centeredSecondMoment(s, I)(0, 0).real() - 2.0) < 1e-12);

  std::mt19937_64 rng(23);
  MatrixField f = randomField(g, 3, rng);
  RatInterval I2(Rational(-1, 2), Rational(5, 4));
  Matrix mean = meanOver(f, I2);
  Matrix naive = Matrix::Zero(3, 3);
  double w = g.cellWidthValue();
  for (std::int64_t i = 0; i < g.cellCount(); ++i)
    if (I2.contains(g.cellCenter(i))) {
      Matrix d = f.value(i) - mean;
      naive += d.adjoint() * d * w;
    }
  CHECK((centeredSecondMoment(f, I2) - naive).norm() < 1e-12 * (1.0 + naive.norm()));
}

TEST_CASE("lpMixedNorm closed forms and naive p=2 oracle") {
  GridSpec g{1, 5};
  int d = 3;
  MatrixField id(g, d);
  for (Matrix& v : id.values) v = Matrix::Identity(d, d);
  CHECK(std::abs(lpMixedNorm(id, 1.0) - 4.0 * d) < 1e-10);
  CHECK(std::abs(lpMixedNorm(id, std::numeric_limits<double>::infinity()) - 1.0) <
        1e-12);

  std::mt19937_64 rng(29);
  MatrixField psd(g, d);
  for (Matrix& v : psd.values) v = randomPsd(d, rng);
  double naive = 0.0;
  double w = g.cellWidthValue();
  for (const Matrix& v : psd.values) naive += (v * v).real().trace() * w;
  naive = std::sqrt(naive);
  CHECK(std::abs(lpMixedNorm(psd, 2.0) - naive) < 1e-9 * (1.0 + naive));
}

TEST_CASE("weightedColumnNorm: zero, flat scalar closed form, homogeneity") {
  GridSpec g{1, 5};
  MatrixField zero(g, 2);
  CHECK(weightedColumnNorm(zero, 2.0) == 0.0);

  MatrixField one = scalarField(g, [](double) { return 1.0; });
  double expect = std::sqrt(2.0 * std::atan(2.0));
  CHECK(std::abs(weightedColumnNorm(one, std::numeric_limits<double>::infinity()) -
                 expect) < 1e-10);

  std::mt19937_64 rng(31);
  MatrixField f = randomField(g, 2, rng);
  double base = weightedColumnNorm(f, 3.0);
  CHECK(std::abs(weightedColumnNorm(f.scaled(-2.5), 3.0) - 2.5 * base) <
        1e-10 * (1.0 + base));
}

TEST_CASE("pairing: rank-one, disjoint supports, Cauchy-Schwarz") {
  GridSpec g{1, 5};
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  MatrixField phi(g, 2), psi(g, 2);
  RatInterval left(Rational(-1), Rational(0)), right(Rational(0), Rational(1));
  for (std::int64_t i = 0; i < g.cellCount(); ++i) {
    if (right.contains(g.cellCenter(i))) phi.value(i) = e11;
    if (left.contains(g.cellCenter(i))) psi.value(i) = e11;
  }
  CHECK((pairing(phi, phi) - e11).norm() < 1e-13);
  CHECK(pairing(phi, psi).norm() == 0.0);

  std::mt19937_64 rng(37);
  for (int it = 0; it < 10; ++it) {
    MatrixField a = randomField(g, 2, rng), b = randomField(g, 2, rng);
    CHECK(schattenNorm(pairing(a, b), 1.0) <= l2Norm(a) * l2Norm(b) * (1 + 1e-12));
  }
}

TEST_CASE("integralOver handles off-grid endpoints with exact partial weights") {
  GridSpec g{1, 4};
  MatrixField one = scalarField(g, [](double) { return 1.0; });
  // endpoints strictly inside cells
  Rational a(-7, 100), b(33, 100);
  double got = integralOver(one, a, b)(0, 0).real();
  CHECK(std::abs(got - (b - a).value()) < 1e-14);
  // clipped to W
  double clipped = integralOver(one, Rational(-5), Rational(5))(0, 0).real();
  CHECK(std::abs(clipped - 4.0) < 1e-13);
  // second moment against a fixed center agrees with a naive partial sum
  std::mt19937_64 rng(41);
  MatrixField f = randomField(g, 2, rng);
  Matrix m = Matrix::Identity(2, 2) * 0.3;
  Matrix got2 = secondMomentAround(f, a, b, m);
  CHECK(loewnerSlack(Matrix::Zero(2, 2), symmetrize(got2, 1e-9)) > -1e-10);
}

TEST_CASE("field persistence round-trips bitwise") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(43);
  MatrixField f = randomField(g, 3, rng);
  std::stringstream ss;
  saveField(f, ss);
  MatrixField back = loadField(ss);
  CHECK(back.grid == f.grid);
  CHECK(back.dim == f.dim);
  for (std::int64_t i = 0; i < f.cellCount(); ++i)
    CHECK((back.value(i) - f.value(i)).norm() == 0.0);
}

TEST_CASE("loadField rejects malformed input") {
  std::stringstream bad("not a field header");
  CHECK_THROWS(loadField(bad));
  std::stringstream truncated("NCFA1 d=2 J=0 K=2\n0 1 0 0 0\n");
  CHECK_THROWS(loadField(truncated));
}

TEST_CASE("field arithmetic and meanZeroed") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(47);
  MatrixField f = randomField(g, 2, rng);
  MatrixField sum = f + f - f.scaled(2.0);
  for (const Matrix& v : sum.values) CHECK(v.norm() < 1e-13);
  MatrixField z = f.meanZeroed();
  CHECK(z.integral().norm() < 1e-12 * (1.0 + f.integral().norm()));
  MatrixField adj = f.adjointField();
  for (std::int64_t i = 0; i < f.cellCount(); ++i)
    CHECK((adj.value(i) - f.value(i).adjoint()).norm() == 0.0);
}
