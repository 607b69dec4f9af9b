#include "ncfa/bmo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ncfa/poisson.hpp"

namespace ncfa {

namespace {

constexpr double kDyadicPairConstant = 6.928203230275509;  // 4 sqrt(3)

MatrixField oriented(const MatrixField& f, Side side) {
  return side == Side::c ? f : f.adjointField();
}

struct MomentPrefix {
  std::vector<Matrix> sum;    // sum[i] = sum of values before cell i
  std::vector<Matrix> sumSq;  // sum of v* v

  explicit MomentPrefix(const MatrixField& f) {
    std::int64_t n = f.cellCount();
    sum.assign(size_t(n) + 1, Matrix::Zero(f.dim, f.dim));
    sumSq.assign(size_t(n) + 1, Matrix::Zero(f.dim, f.dim));
    for (std::int64_t i = 0; i < n; ++i) {
      sum[size_t(i) + 1] = sum[size_t(i)] + f.value(i);
      sumSq[size_t(i) + 1] = sumSq[size_t(i)] + f.value(i).adjoint() * f.value(i);
    }
  }

  // sqrt of the operator norm of (1/|I|) int_I |f - f_I|^2 for the cell
  // range [a, b); width-independent because both normalizations cancel.
  double value(std::int64_t a, std::int64_t b) const {
    double n = double(b - a);
    Matrix s1 = sum[size_t(b)] - sum[size_t(a)];
    Matrix x = (sumSq[size_t(b)] - sumSq[size_t(a)] - s1.adjoint() * s1 / n) / n;
    return std::sqrt(std::max(0.0, operatorNorm(symmetrize(x))));
  }
};

// cell range of a grid-aligned interval inside W
std::pair<std::int64_t, std::int64_t> cellRange(const GridSpec& g, const RatInterval& I) {
  std::int64_t a = g.cellIndexOf(I.lo + g.cellWidth());
  std::int64_t b = g.cellIndexOf(I.hi) + 1;
  return {a, b};
}

// sqrt of the operator norm of the zero-extended normalized moment over an
// arbitrary interval (atoms sticking out of W).
double extendedMomentValue(const MatrixField& f, const RatInterval& I) {
  double len = I.length().value();
  Matrix mean = integralOver(f, I.lo, I.hi) / len;
  Matrix x = secondMomentAround(f, I.lo, I.hi, mean) / len;
  return std::sqrt(std::max(0.0, operatorNorm(symmetrize(x))));
}

bool insideWindow(const GridSpec& g, const RatInterval& I) {
  return !(I.lo < g.windowLo()) && !(g.windowHi() < I.hi);
}

}  // namespace

BmoReport bmoNorm(const MatrixField& phi, Side side, BmoMode mode) {
  MatrixField f = oriented(phi, side);
  const GridSpec& g = f.grid;
  BmoReport rep;
  rep.mode = mode;

  if (mode == BmoMode::AllGridIntervals) {
    MomentPrefix pre(f);
    std::int64_t n = f.cellCount();
    double best = 0.0;
    std::int64_t bestA = 0, bestB = 1;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = a + 1; b <= n; ++b) {
        double v = pre.value(a, b);
        if (v > best) { best = v; bestA = a; bestB = b; }
      }
    rep.lower = rep.upper = best;
    rep.exact = true;
    rep.attaining = RatInterval(g.cellInterval(bestA).lo, g.cellInterval(bestB - 1).hi);
    return rep;
  }

  if (mode != BmoMode::DyadicPair)
    throw std::invalid_argument("bmoNorm: unsupported mode");

  MomentPrefix pre(f);
  double bestInside = 0.0;
  RatInterval bestI(Rational(0), g.cellWidth());
  for (Filtration filt : {Filtration::D, Filtration::Dprime}) {
    for (int n = -g.J - 3; n <= g.K; ++n) {
      for (const AtomRef& a : atomsMeetingWindow(g, filt, n)) {
        rep.meetingSup = std::max(rep.meetingSup, extendedMomentValue(f, a.interval));
        if (insideWindow(g, a.interval) && g.onGrid(a.interval.lo)) {
          auto [lo, hi] = cellRange(g, a.interval);
          double v = pre.value(lo, hi);
          if (v > bestInside) { bestInside = v; bestI = a.interval; }
        }
      }
    }
  }
  rep.insideSup = bestInside;
  rep.lower = bestInside;
  rep.upper = kDyadicPairConstant * rep.meetingSup;
  rep.exact = false;
  rep.attaining = bestI;
  return rep;
}

BmoReport bmoQNorm(const MatrixField& phi, double q, Side side) {
  if (!std::isinf(q) && !(q > 2.0))
    throw std::invalid_argument("bmoQNorm: need q > 2");
  MatrixField f = oriented(phi, side);
  const GridSpec& g = f.grid;
  int nMin = -g.K - 1, nMax = g.J + 2;

  BmoReport rep;
  rep.mode = BmoMode::WindowFamily;

  if (std::isinf(q)) {
    // upper: every symmetric window centered at a cell center or a cell
    // endpoint, zero extension; endpoint centers make the grid-aligned
    // windows of the lower family a subfamily
    double supAll = 0.0;
    for (int n = nMin; n <= nMax; ++n) {
      Rational half = ratPow2(n - 1);
      for (std::int64_t i = 0; i < g.cellCount(); ++i) {
        for (const Rational& t : {g.cellCenter(i), g.cellInterval(i).hi}) {
          supAll = std::max(supAll,
                            extendedMomentValue(f, RatInterval(t - half, t + half)));
        }
      }
      supAll = std::max(
          supAll, extendedMomentValue(
                      f, RatInterval(g.windowLo() - half, g.windowLo() + half)));
    }
    // lower: grid-aligned dyadic-length windows contained in W; a
    // subfamily of the all-interval sup, so lower <= the full BMO norm
    // with no quadrature slack.
    MomentPrefix pre(f);
    double supIn = 0.0;
    RatInterval bestI(Rational(0), g.cellWidth());
    for (int n = std::max(nMin, -g.K); n <= g.J + 1; ++n) {
      std::int64_t cells = std::int64_t(3) << (g.K + n);
      if (cells > g.cellCount()) break;
      for (std::int64_t a = 0; a + cells <= g.cellCount(); ++a) {
        double v = pre.value(a, a + cells);
        if (v > supIn) {
          supIn = v;
          bestI = RatInterval(g.cellInterval(a).lo, g.cellInterval(a + cells - 1).hi);
        }
      }
    }
    rep.lower = supIn;
    rep.upper = supAll;
    rep.attaining = bestI;
    return rep;
  }

  // q < inf: the window sharp functions form a psd family; |.|_{q/2} of
  // their noncommutative sup, square root at the end.
  std::vector<MatrixField> sharp;
  for (int n = nMin; n <= nMax; ++n) {
    Rational half = ratPow2(n - 1);
    double len = ratPow2(n).value();
    MatrixField s(g, f.dim);
    for (std::int64_t i = 0; i < g.cellCount(); ++i) {
      Rational t = g.cellCenter(i);
      Matrix mean = integralOver(f, t - half, t + half) / len;
      s.value(i) = symmetrize(secondMomentAround(f, t - half, t + half, mean) / len);
    }
    sharp.push_back(std::move(s));
  }
  NcSupBound b = ncsupBounds(sharp, q / 2.0);
  rep.lower = std::sqrt(std::max(0.0, b.lower));
  rep.upper = std::sqrt(std::max(0.0, b.upper));
  rep.exact = b.exact;
  return rep;
}

namespace {

// y dy h-weighted per-band prefix sums of |grad phi|^2 along the columns
// over W; columns coincide with grid cells (xRefine = 1).
struct BandPrefixes {
  std::vector<double> y;
  std::vector<std::vector<Matrix>> pre;  // pre[b][i] = weighted sum before cell i

  BandPrefixes(const MatrixField& f, const ConeGrid& cone) {
    HarmonicSlices slices(f, /*xReach=*/f.grid.cellWidthValue(), /*xRefine=*/1);
    double h = slices.spacing();
    std::vector<double> yc = cone.yCenters(), dy = cone.yWidths();
    std::int64_t n = f.cellCount();
    std::int64_t col0 = slices.columnOfCellCenter(0);
    for (size_t b = 0; b < yc.size(); ++b) {
      HarmonicSlices::Slice s = slices.slice(yc[b], 0.0);
      double wgt = yc[b] * dy[b] * h;
      std::vector<Matrix> p(size_t(n) + 1, Matrix::Zero(f.dim, f.dim));
      for (std::int64_t i = 0; i < n; ++i) {
        size_t at = size_t(col0 + i - s.firstColumn);
        Matrix gs = s.dx[at].adjoint() * s.dx[at] + s.dy[at].adjoint() * s.dy[at];
        p[size_t(i) + 1] = p[size_t(i)] + wgt * gs;
      }
      y.push_back(yc[b]);
      pre.push_back(std::move(p));
    }
  }

  // int over T(I) for the cell range [a, b), bands up to height len
  Matrix box(std::int64_t a, std::int64_t b, double len) const {
    Matrix acc = Matrix::Zero(pre.front().front().rows(), pre.front().front().cols());
    for (size_t k = 0; k < y.size(); ++k) {
      if (y[k] > len) break;
      acc += pre[k][size_t(b)] - pre[k][size_t(a)];
    }
    return acc;
  }
};

}  // namespace

Matrix carlesonFunctional(const MatrixField& phi, const RatInterval& I,
                          const ConeGrid& cone) {
  const GridSpec& g = phi.grid;
  if (!g.onGrid(I.lo) || !g.onGrid(I.hi) || !insideWindow(g, I))
    throw std::invalid_argument("carlesonFunctional: interval must be grid-aligned in W");
  BandPrefixes bp(phi, cone);
  auto [a, b] = cellRange(g, I);
  double len = I.length().value();
  return bp.box(a, b, len) / len;
}

BmoReport carlesonSup(const MatrixField& phi, const ConeGrid& cone, BmoMode mode) {
  const GridSpec& g = phi.grid;
  BandPrefixes bp(phi, cone);
  BmoReport rep;
  rep.mode = mode;
  double best = 0.0;
  RatInterval bestI(Rational(0), g.cellWidth());

  auto consider = [&](std::int64_t a, std::int64_t b, const RatInterval& I) {
    double len = I.length().value();
    double v = operatorNorm(symmetrize(bp.box(a, b, len))) / len;
    if (v > best) { best = v; bestI = I; }
  };

  if (mode == BmoMode::DyadicPair) {
    for (Filtration filt : {Filtration::D, Filtration::Dprime})
      for (int n = -g.J; n <= g.K; ++n)
        for (const AtomRef& at : atomsMeetingWindow(g, filt, n)) {
          if (!insideWindow(g, at.interval) || !g.onGrid(at.interval.lo)) continue;
          auto [a, b] = cellRange(g, at.interval);
          consider(a, b, at.interval);
        }
  } else if (mode == BmoMode::AllGridIntervals) {
    // endpoints on a sublattice of at most 3 * 2^7 points
    std::int64_t stride = 1;
    while (g.cellCount() / stride > 384) stride *= 2;
    for (std::int64_t a = 0; a < g.cellCount(); a += stride)
      for (std::int64_t b = a + stride; b <= g.cellCount(); b += stride)
        consider(a, b,
                 RatInterval(g.cellInterval(a).lo, g.cellInterval(b - 1).hi));
  } else {
    throw std::invalid_argument("carlesonSup: unsupported mode");
  }

  rep.lower = rep.upper = best;
  rep.exact = true;
  rep.attaining = bestI;
  return rep;
}

BmoReport dyadicBmoQNorm(const MatrixField& phi, double q, Filtration filt, Side side) {
  if (!std::isinf(q) && !(q > 2.0))
    throw std::invalid_argument("dyadicBmoQNorm: need q > 2");
  MatrixField f = oriented(phi, side);
  const GridSpec& g = f.grid;

  std::vector<MatrixField> sharp;
  for (int n = -g.J; n <= g.K; ++n) {
    MatrixField s(g, f.dim);
    for (const AtomRef& at : atomsMeetingWindow(g, filt, n)) {
      double len = at.interval.length().value();
      Matrix mean = integralOver(f, at.interval.lo, at.interval.hi) / len;
      Matrix x = symmetrize(
          secondMomentAround(f, at.interval.lo, at.interval.hi, mean) / len);
      std::int64_t lo = (at.interval.lo < g.windowLo())
                            ? 0
                            : g.cellIndexOf(at.interval.lo + g.cellWidth());
      std::int64_t hi = (g.windowHi() < at.interval.hi)
                            ? g.cellCount()
                            : g.cellIndexOf(at.interval.hi) + 1;
      for (std::int64_t i = lo; i < hi; ++i) s.value(i) = x;
    }
    sharp.push_back(std::move(s));
  }

  BmoReport rep;
  rep.mode = BmoMode::DyadicPair;
  if (std::isinf(q)) {
    double sup = 0.0;
    for (const MatrixField& s : sharp)
      for (const Matrix& v : s.values) sup = std::max(sup, operatorNorm(v));
    rep.lower = rep.upper = std::sqrt(sup);
    rep.exact = true;
    return rep;
  }
  NcSupBound b = ncsupBounds(sharp, q / 2.0);
  rep.lower = std::sqrt(std::max(0.0, b.lower));
  rep.upper = std::sqrt(std::max(0.0, b.upper));
  rep.exact = b.exact;
  return rep;
}

}  // namespace ncfa
