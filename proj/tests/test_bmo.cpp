#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracles.hpp"
#include "ncfa/bmo.hpp"
#include "test_util.hpp"

using namespace ncfa;
using namespace ncfa::testutil;

TEST_CASE("bmoNorm of a constant field vanishes inside the window") {
  GridSpec g{1, 4};
  MatrixField c(g, 2);
  for (Matrix& v : c.values) v = Matrix::Identity(2, 2) * Complex(1.0, 2.0);
  BmoReport full = bmoNorm(c, Side::c, BmoMode::AllGridIntervals);
  CHECK(full.upper < 1e-10);
  // the dyadic-pair upper bound extends atoms past W by zero, so only the
  // inside sup vanishes for a constant
  BmoReport dp = bmoNorm(c, Side::c, BmoMode::DyadicPair);
  CHECK(dp.insideSup < 1e-10);
  CHECK(dp.upper >= full.upper);
}

TEST_CASE("bmoNorm of the unit sign step is exactly one") {
  GridSpec g{1, 5};
  MatrixField s = scalarField(g, [](double t) { return t > 0 ? 1.0 : -1.0; });
  BmoReport r = bmoNorm(s, Side::c, BmoMode::AllGridIntervals);
  CHECK(r.exact);
  CHECK(r.lower == r.upper);
  // any interval has variance <= 1, attained by symmetric intervals at 0
  CHECK(std::abs(r.upper - 1.0) < 1e-12);
  CHECK(r.attaining.contains(Rational(0)));
}

TEST_CASE("all-interval sup agrees with the brute-force loop") {
  GridSpec g{0, 2};
  std::mt19937_64 rng(151);
  for (int d : {1, 2}) {
    MatrixField f = randomField(g, d, rng);
    BmoReport r = bmoNorm(f, Side::c, BmoMode::AllGridIntervals);
    double brute = oracles::bruteBmo(f);
    CHECK(std::abs(r.upper - brute) < 1e-10 * (1.0 + brute));
  }
}

TEST_CASE("dyadic-pair sandwich brackets the full norm") {
  GridSpec g{1, 4};
  std::mt19937_64 rng(157);
  const double fourRootThree = 4.0 * std::sqrt(3.0);
  for (int it = 0; it < 20; ++it) {
    MatrixField f = randomField(g, 2, rng);
    BmoReport full = bmoNorm(f, Side::c, BmoMode::AllGridIntervals);
    BmoReport dp = bmoNorm(f, Side::c, BmoMode::DyadicPair);
    CHECK(dp.insideSup <= full.upper);  // exact: same arithmetic path
    CHECK(full.upper <= dp.upper);
    CHECK(std::abs(dp.upper - fourRootThree * dp.meetingSup) <
          1e-12 * (1.0 + dp.upper));
  }
}

TEST_CASE("bmoQNorm: zero for constants, sandwich for steps") {
  GridSpec g{1, 4};
  MatrixField c(g, 2);
  for (Matrix& v : c.values) v = Matrix::Identity(2, 2);
  // zero extension past W makes the all-window upper positive for a
  // constant; the inside-window lower must still vanish
  BmoReport rc = bmoQNorm(c, std::numeric_limits<double>::infinity(), Side::c);
  CHECK(rc.lower < 1e-10);
  CHECK(rc.upper >= rc.lower);

  MatrixField s = scalarField(g, [](double t) { return t > 0 ? 1.0 : -1.0; });
  BmoReport rs = bmoQNorm(s, std::numeric_limits<double>::infinity(), Side::c);
  CHECK(rs.lower <= rs.upper * (1 + 1e-12));
  CHECK(rs.lower > 0.5);  // windows centered at 0 see the full oscillation
  BmoReport rq = bmoQNorm(s, 4.0, Side::c);
  CHECK(rq.lower <= rq.upper * (1 + 1e-12));
  CHECK(rq.upper > 0.0);
}

TEST_CASE("martingale BMO separates the two filtrations on the sign step") {
  GridSpec g{1, 4};
  MatrixField s = scalarField(g, [](double t) { return t > 0 ? 1.0 : -1.0; });
  double inf = std::numeric_limits<double>::infinity();
  // standard dyadic atoms never straddle 0, so the step looks constant
  BmoReport d = dyadicBmoQNorm(s, inf, Filtration::D, Side::c);
  CHECK(d.upper < 1e-10);
  // shifted atoms do straddle 0 and see the jump
  BmoReport dp = dyadicBmoQNorm(s, inf, Filtration::Dprime, Side::c);
  CHECK(dp.upper > 0.5);
}

TEST_CASE("carlesonFunctional is psd, monotone under scaling") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(163);
  MatrixField f = randomField(g, 2, rng).meanZeroed();
  ConeGrid cone = ConeGrid::forGrid(g);
  RatInterval I(Rational(-1, 2), Rational(1, 2));
  Matrix c1 = carlesonFunctional(f, I, cone);
  CHECK(eigMin(symmetrize(c1, 1e-6)) > -1e-10 * (1.0 + operatorNorm(c1)));
  Matrix c2 = carlesonFunctional(f.scaled(2.0), I, cone);
  CHECK((c2 - 4.0 * c1).norm() < 1e-9 * (1.0 + c1.norm()));
}

TEST_CASE("carlesonSup is bounded by a multiple of the BMO norm squared") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(167);
  ConeGrid cone = ConeGrid::forGrid(g);
  for (int it = 0; it < 5; ++it) {
    MatrixField f = randomField(g, 2, rng);
    double carl = carlesonSup(f, cone, BmoMode::DyadicPair).upper;
    double bmo = bmoNorm(f, Side::c, BmoMode::AllGridIntervals).upper;
    CHECK(carl > 0.0);
    CHECK(carl <= 16.0 * bmo * bmo);  // generous absolute-constant check
  }
}

TEST_CASE("bmo norms are invariant under adding a constant") {
  GridSpec g{0, 3};
  std::mt19937_64 rng(173);
  MatrixField f = randomField(g, 2, rng);
  MatrixField shifted = f;
  for (Matrix& v : shifted.values) v += 5.0 * Matrix::Identity(2, 2);
  double a = bmoNorm(f, Side::c, BmoMode::AllGridIntervals).upper;
  double b = bmoNorm(shifted, Side::c, BmoMode::AllGridIntervals).upper;
  CHECK(std::abs(a - b) < 1e-9 * (1.0 + a));
}
