#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracles.hpp"
#include "ncfa/squarefn.hpp"
#include "test_util.hpp"

using namespace ncfa;
using namespace ncfa::testutil;

TEST_CASE("areaIntegral of a constant is a small tail") {
  GridSpec g{0, 3};
  MatrixField c(g, 2);
  for (Matrix& v : c.values) v = Matrix::Identity(2, 2);
  ConeGrid cone = ConeGrid::forGrid(g);
  MatrixField s2 = areaIntegral(c, Side::c, 0.0, cone);
  // gradient of the extension only sees the window boundary; interior
  // cells carry a bounded boundary contribution, far smaller than for a
  // genuinely oscillating field of the same size
  std::int64_t mid = g.cellCount() / 2;
  CHECK(operatorNorm(s2.value(mid)) < 1.0);
}

TEST_CASE("row side equals column side of the adjoint") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(113);
  MatrixField f = randomField(g, 2, rng);
  ConeGrid cone = ConeGrid::forGrid(g);
  MatrixField r = areaIntegral(f, Side::r, 0.0, cone);
  MatrixField c = areaIntegral(f.adjointField(), Side::c, 0.0, cone);
  for (std::int64_t i = 0; i < g.cellCount(); ++i)
    CHECK((r.value(i) - c.value(i)).norm() == 0.0);
}

TEST_CASE("scalar area integral matches a dense cone quadrature") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(127);
  MatrixField f = randomField(g, 1, rng).meanZeroed();
  ConeGrid cone = ConeGrid::forGrid(g, 2);
  MatrixField s2 = areaIntegral(f, Side::c, 0.0, cone);
  double w = g.cellWidthValue();
  double got = 0.0, dense = 0.0;
  for (std::int64_t i = 0; i < g.cellCount(); i += 7) {
    double t = g.cellCenter(i).value();
    got += s2.value(i)(0, 0).real() * w;
    dense += oracles::denseAreaSquare(f, t, 0.0, cone.yMin, cone.yMax) * w;
  }
  CHECK(std::abs(got - dense) <= 0.03 * dense);
}

TEST_CASE("scalar g-function matches a dense vertical quadrature") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(131);
  MatrixField f = randomField(g, 1, rng).meanZeroed();
  double y0 = 0.25, yMax = 8.0;
  MatrixField g2 = gIntegral(f, Side::c, y0, yMax);
  for (std::int64_t i : {std::int64_t(3), g.cellCount() / 2, g.cellCount() - 5}) {
    double t = g.cellCenter(i).value();
    double dense = oracles::denseGSquare(f, t, y0, yMax);
    CHECK(std::abs(g2.value(i)(0, 0).real() - dense) <= 0.03 * dense);
  }
}

TEST_CASE("hardyNorm at p=2 recovers the L2 norm") {
  // the norm integrates t over W only, so a field concentrated well inside
  // the window keeps the area that leaks past the boundary negligible
  GridSpec g{1, 4};
  std::mt19937_64 rng(137);
  MatrixField f(g, 2);
  RatInterval sup(Rational(-1, 4), Rational(1, 4));
  for (std::int64_t i = 0; i < g.cellCount(); ++i)
    if (sup.contains(g.cellCenter(i)))
      f.value(i) = gaussianMatrix(2, rng);
  // block structure keeps the jump mass moderate
  for (std::int64_t i = 0; i + 8 <= g.cellCount(); i += 8)
    for (int j = 1; j < 8; ++j) f.value(i + j) = f.value(i);
  Matrix mean = integralOver(f, sup.lo, sup.hi) / sup.length().value();
  for (std::int64_t i = 0; i < g.cellCount(); ++i)
    if (sup.contains(g.cellCenter(i))) f.value(i) -= mean;
  ConeGrid cone = ConeGrid::forGrid(g, 2);
  double h2 = hardyNorm(f, 2.0, Side::c, cone);
  double l2 = l2Norm(f);
  CHECK(std::abs(h2 - l2) <= 0.05 * l2);
}

TEST_CASE("hardyNorm scales linearly") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(139);
  MatrixField f = randomField(g, 2, rng).meanZeroed();
  ConeGrid cone = ConeGrid::forGrid(g);
  double base = hardyNorm(f, 1.0, Side::c, cone);
  double scaled = hardyNorm(f.scaled(3.0), 1.0, Side::c, cone);
  CHECK(std::abs(scaled - 3.0 * base) < 1e-9 * (1.0 + base));
}

TEST_CASE("hardyCrNorm: pointwise at p >= 2, bound pair below") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(149);
  MatrixField f = randomField(g, 2, rng).meanZeroed();
  ConeGrid cone = ConeGrid::forGrid(g);
  BoundPair hi = hardyCrNorm(f, 2.0, cone, 1);
  CHECK(hi.exact);
  CHECK(hi.lower == hi.upper);
  CHECK(std::abs(hi.upper - std::max(hardyNorm(f, 2.0, Side::c, cone),
                                     hardyNorm(f, 2.0, Side::r, cone))) < 1e-12);
  BoundPair lo = hardyCrNorm(f, 1.0, cone, 8);
  CHECK(!lo.exact);
  CHECK(lo.lower == 0.0);
  CHECK(lo.upper > 0.0);
  // the trivial decompositions are admissible, so the optimized bound
  // cannot beat them by construction but must not exceed the best seed run
  CHECK(lo.upper <= hardyNorm(f, 1.0, Side::c, cone) +
                        hardyNorm(f, 1.0, Side::r, cone));
}

TEST_CASE("tentSquare: scaling, zero, dense scalar oracle") {
  GridSpec g{0, 3};
  ConeGrid cone;
  cone.yMin = 0.125;
  cone.yMax = 2.0;
  cone.refinement = 1;
  auto fn = [&](double x, double y) {
    Matrix m(1, 1);
    m(0, 0) = Complex(std::sin(x) / (1.0 + y), 0.1 * x);
    return m;
  };
  HalfPlaneSamples F = sampleHalfPlane(g, 1, cone, fn);
  MatrixField a2 = tentSquare(F);

  HalfPlaneSamples F2 = F;
  for (auto& band : F2.bands)
    for (Matrix& v : band.values) v *= 2.0;
  MatrixField a2x = tentSquare(F2);
  for (std::int64_t i = 0; i < g.cellCount(); ++i)
    CHECK((a2x.value(i) - 4.0 * a2.value(i)).norm() < 1e-12 * (1.0 + a2.value(i).norm()));

  for (std::int64_t i : {std::int64_t(5), g.cellCount() / 2}) {
    double dense = oracles::denseTentSquare(F, i);
    CHECK(std::abs(a2.value(i)(0, 0).real() - dense) <= 1e-9 * (1.0 + dense));
  }

  HalfPlaneSamples zero = F;
  for (auto& band : zero.bands)
    for (Matrix& v : band.values) v.setZero();
  CHECK(tentFunctional(zero, 2.0) == 0.0);
  CHECK(tentFunctional(F, 1.0) > 0.0);
}
