#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncfa/poisson.hpp"
#include "test_util.hpp"

using namespace ncfa;
using namespace ncfa::testutil;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("poissonKernel value and symmetry") {
  CHECK(std::abs(poissonKernel(0.0, 1.0) - 1.0 / kPi) < 1e-15);
  for (double x : {0.1, 0.7, 3.2})
    CHECK(poissonKernel(x, 0.5) == poissonKernel(-x, 0.5));
  // mass over a wide interval approaches 1 (arctan tails)
  double mass = (std::atan(1000.0) - std::atan(-1000.0)) / kPi;
  CHECK(std::abs(mass - 1.0) < 1e-3);
}

TEST_CASE("gradKernel value, parity, finite differences") {
  auto [q1, q2] = gradKernel(0.0, 1.0);
  CHECK(std::abs(q1) < 1e-15);
  CHECK(std::abs(q2 - (-1.0 / kPi)) < 1e-15);

  auto [a1, a2] = gradKernel(0.4, 0.9);
  auto [b1, b2] = gradKernel(-0.4, 0.9);
  CHECK(std::abs(a1 + b1) < 1e-15);
  CHECK(std::abs(a2 - b2) < 1e-15);

  double eps = 1e-4, x = 0.3, y = 0.7;
  auto [gx, gy] = gradKernel(x, y);
  double fdx = (poissonKernel(x + eps, y) - poissonKernel(x - eps, y)) / (2 * eps);
  double fdy = (poissonKernel(x, y + eps) - poissonKernel(x, y - eps)) / (2 * eps);
  CHECK(std::abs(gx - fdx) < 10 * eps * eps);
  CHECK(std::abs(gy - fdy) < 10 * eps * eps);
}

TEST_CASE("extend: zero field, indicator arctan value, constant recovery") {
  GridSpec g{1, 6};
  MatrixField zero(g, 2);
  CHECK(extend(zero, {0.3, 0.8}).norm() == 0.0);

  MatrixField ind = scalarField(g, [](double t) { return t > 0 && t <= 1 ? 1.0 : 0.0; });
  double got = extend(ind, {0.5, 1.0})(0, 0).real();
  CHECK(std::abs(got - (2.0 / kPi) * std::atan(0.5)) < 1e-13);

  Matrix m = Matrix::Identity(2, 2) * Complex(0.7, 0.2);
  MatrixField c(g, 2);
  for (Matrix& v : c.values) v = m;
  // at (0, y) with y = 0.01 the mass outside W is ~ 2 arctan(y/2)/pi
  double y = 0.01;
  double tail = 1.0 - (std::atan(2.0 / y) - std::atan(-2.0 / y)) / kPi;
  CHECK((extend(c, {0.0, y}) - m).norm() <= 2.0 * tail * m.norm() + 1e-12);
}

TEST_CASE("gradientAt matches finite differences of extend") {
  GridSpec g{0, 4};
  std::mt19937_64 rng(53);
  MatrixField f = randomField(g, 2, rng);
  double eps = 1e-5;
  for (KernelPoint p : {KernelPoint{0.21, 0.6}, KernelPoint{-0.8, 1.3}}) {
    GradPair gr = gradientAt(f, p);
    Matrix fdx =
        (extend(f, {p.x + eps, p.y}) - extend(f, {p.x - eps, p.y})) / (2 * eps);
    Matrix fdy =
        (extend(f, {p.x, p.y + eps}) - extend(f, {p.x, p.y - eps})) / (2 * eps);
    CHECK((gr.dx - fdx).norm() < 1e-6 * (1.0 + gr.dx.norm()));
    CHECK((gr.dy - fdy).norm() < 1e-6 * (1.0 + gr.dy.norm()));
  }
}

TEST_CASE("extension is harmonic: 5-point Laplacian residual") {
  GridSpec g{0, 4};
  std::mt19937_64 rng(59);
  MatrixField f = randomField(g, 1, rng);
  double h = 1e-3, x = 0.2, y = 0.9;
  Matrix lap = extend(f, {x + h, y}) + extend(f, {x - h, y}) +
               extend(f, {x, y + h}) + extend(f, {x, y - h}) -
               4.0 * extend(f, {x, y});
  CHECK(lap.norm() / (h * h) < 1e-5);
}

TEST_CASE("edgeJumps telescope back to the field") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(61);
  MatrixField f = randomField(g, 2, rng);
  std::vector<Matrix> jumps = edgeJumps(f);
  CHECK(std::int64_t(jumps.size()) == f.cellCount() + 1);
  Matrix acc = Matrix::Zero(2, 2);
  for (std::int64_t i = 0; i < f.cellCount(); ++i) {
    acc += jumps[size_t(i)];
    CHECK((acc - f.value(i)).norm() < 1e-12);
  }
  acc += jumps.back();
  CHECK(acc.norm() < 1e-12);  // zero extension past the right edge
}

TEST_CASE("HarmonicSlices agrees with the direct gradient") {
  GridSpec g{0, 4};
  std::mt19937_64 rng(67);
  MatrixField f = randomField(g, 2, rng);
  HarmonicSlices hs(f, 2.0);
  for (double y : {0.05, 0.4, 1.7}) {
    auto sl = hs.slice(y, 1.0);
    REQUIRE(!sl.dx.empty());
    for (size_t pick : {size_t(0), sl.dx.size() / 2, sl.dx.size() - 1}) {
      double x = hs.columnX(sl.firstColumn + std::int64_t(pick));
      GradPair direct = gradientAt(f, {x, y});
      CHECK((sl.dx[pick] - direct.dx).norm() < 1e-8 * (1.0 + direct.dx.norm()));
      CHECK((sl.dy[pick] - direct.dy).norm() < 1e-8 * (1.0 + direct.dy.norm()));
    }
  }
}

TEST_CASE("HarmonicSlices columns land on cell centers") {
  GridSpec g{0, 3};
  MatrixField f(g, 1);
  HarmonicSlices hs(f, 1.0);
  CHECK(std::abs(hs.spacing() - g.cellWidthValue()) < 1e-15);
  for (std::int64_t cell : {std::int64_t(0), g.cellCount() / 2}) {
    double x = hs.columnX(hs.columnOfCellCenter(cell));
    CHECK(std::abs(x - g.cellCenter(cell).value()) < 1e-12);
  }
}
