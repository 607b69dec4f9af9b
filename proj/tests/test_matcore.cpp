#include <doctest.h>

#include <random>

#include "ncfa/matrix.hpp"
#include "test_util.hpp"

using namespace ncfa;
using namespace ncfa::testutil;

TEST_CASE("absPsd on zero, identity, and a nilpotent") {
  CHECK(absPsd(Matrix::Zero(2, 2)).norm() == 0.0);
  CHECK((absPsd(Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)).norm() <
        1e-14);
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  Matrix expect = Matrix::Zero(2, 2);
  expect(1, 1) = 1.0;  // x*x = diag(0,1)
  CHECK((absPsd(x) - expect).norm() < 1e-14);
}

TEST_CASE("psdPower closed forms and square oracle") {
  CHECK((psdPower(Matrix::Identity(3, 3), 7.0) - Matrix::Identity(3, 3)).norm() <
        1e-13);
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 4.0;
  a(1, 1) = 9.0;
  Matrix r = psdPower(a, 0.5);
  CHECK(std::abs(r(0, 0).real() - 2.0) < 1e-13);
  CHECK(std::abs(r(1, 1).real() - 3.0) < 1e-13);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    Matrix p = randomPsd(3, rng);
    CHECK((psdPower(p, 2.0) - p * p).norm() < 1e-10 * (1.0 + p.norm() * p.norm()));
  }
}

TEST_CASE("psdPower rejects negative exponent and non-psd input") {
  CHECK_THROWS(psdPower(Matrix::Identity(2, 2), -1.0));
  Matrix neg = Matrix::Identity(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS(psdPower(neg, 0.5));
}

TEST_CASE("schattenNorm closed forms") {
  CHECK(std::abs(schattenNorm(Matrix::Identity(2, 2), 2.0) - std::sqrt(2.0)) <
        1e-14);
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  CHECK(std::abs(schattenNorm(x, 1.0) - 1.0) < 1e-14);
  std::mt19937_64 rng(7);
  Matrix g = gaussianMatrix(4, rng);
  CHECK(std::abs(schattenNorm(g, std::numeric_limits<double>::infinity()) -
                 operatorNorm(g)) < 1e-12);
}

TEST_CASE("schattenNorm honors the normalized trace convention") {
  double plain = schattenNorm(Matrix::Identity(2, 2), 1.0);
  traceConvention().normalized = true;
  double normalized = schattenNorm(Matrix::Identity(2, 2), 1.0);
  traceConvention().normalized = false;
  CHECK(std::abs(plain - 2.0) < 1e-14);
  CHECK(std::abs(normalized - 1.0) < 1e-14);
}

TEST_CASE("loewnerLeq and loewnerSlack on diagonal pairs") {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  b(0, 0) = 2.0;
  b(1, 1) = 3.0;
  CHECK(loewnerLeq(a, b, 0.0));
  CHECK(loewnerLeq(a, a, 0.0));
  Matrix c = Matrix::Zero(2, 2), e = Matrix::Zero(2, 2);
  c(1, 1) = 2.0;
  e(0, 0) = 1.0;
  e(1, 1) = 1.0;
  CHECK(!loewnerLeq(c, e, 1e-12));
  CHECK(std::abs(loewnerSlack(c, e) - (-1.0)) < 1e-13);
}

TEST_CASE("hansenTransformBound degenerate and random cases") {
  std::mt19937_64 rng(3);
  Matrix a = randomPsd(3, rng);
  HansenPair unit = hansenTransformBound(a, Matrix::Identity(3, 3), 2.0);
  CHECK((unit.lhs - a).norm() < 1e-10 * (1.0 + a.norm()));
  CHECK((unit.rhs - a).norm() < 1e-10 * (1.0 + a.norm()));
  HansenPair zero = hansenTransformBound(a, Matrix::Zero(3, 3), 2.0);
  CHECK(zero.lhs.norm() == 0.0);
  CHECK(zero.rhs.norm() < 1e-12);
  for (int it = 0; it < 200; ++it) {
    Matrix p = randomPsd(3, rng);
    Matrix b = randomContraction(3, rng);
    HansenPair hp = hansenTransformBound(p, b, 3.0);
    double scale = std::max(1.0, operatorNorm(hp.rhs));
    CHECK(loewnerSlack(hp.lhs, hp.rhs) >= -1e-9 * scale);
  }
}

TEST_CASE("hansenTransformBound rejects an expanding b") {
  Matrix a = Matrix::Identity(2, 2);
  CHECK_THROWS(hansenTransformBound(a, 2.0 * Matrix::Identity(2, 2), 2.0));
}

TEST_CASE("weighted squares are operator convex") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> dPick(1, 6), lenPick(1, 32);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    int d = dPick(rng), len = lenPick(rng);
    Matrix acc = Matrix::Zero(d, d), rhs = Matrix::Zero(d, d);
    double mass = 0.0;
    for (int i = 0; i < len; ++i) {
      double mu = unif(rng);
      Matrix fi = gaussianMatrix(d, rng);
      acc += mu * fi;
      rhs += mu * (fi.adjoint() * fi);
      mass += mu;
    }
    Matrix lhs = acc.adjoint() * acc;
    double scale = std::max(1.0, operatorNorm(rhs) * mass);
    CHECK(loewnerSlack(lhs, mass * rhs) >= -1e-9 * scale);
  }
}

TEST_CASE("symmetrize keeps Hermitian input and rejects drift") {
  std::mt19937_64 rng(5);
  Matrix g = gaussianMatrix(3, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  CHECK(isHermitian(h));
  CHECK((symmetrize(h) - h).norm() < 1e-14);
  CHECK_THROWS(symmetrize(g));
}
