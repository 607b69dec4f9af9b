#include "ncfa/squarefn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ncfa/poisson.hpp"

namespace ncfa {

namespace {

MatrixField sideView(const MatrixField& f, Side side) {
  return side == Side::c ? f : f.adjointField();
}

// Adds coeff * int_{|x-t|<halfSpan} H(x) dx to out(t) for every cell
// center t, H the step function taking value values[l - firstColumn] on
// column l (width h, column l covers (l, l+1)*h past windowLo).  R = w/h
// must be odd so cell centers sit on column centers.
void slideConeBand(MatrixField& out, const std::vector<Matrix>& values,
                   std::int64_t firstColumn, double h, int R, double halfSpan,
                   double coeff) {
  if (!(halfSpan > 0.0) || coeff == 0.0) return;
  std::int64_t n = std::int64_t(values.size());
  int d = out.dim;
  std::vector<Matrix> prefix(size_t(n + 1), Matrix::Zero(d, d));
  for (std::int64_t i = 0; i < n; ++i) prefix[size_t(i + 1)] = prefix[size_t(i)] + values[size_t(i)];
  auto columnValue = [&](std::int64_t j) -> const Matrix* {
    std::int64_t i = j - firstColumn;
    return (i >= 0 && i < n) ? &values[size_t(i)] : nullptr;
  };
  auto rangeSum = [&](std::int64_t jLo, std::int64_t jHi) -> Matrix {
    std::int64_t a = std::max(jLo - firstColumn, std::int64_t(0));
    std::int64_t b = std::min(jHi - firstColumn + 1, n);
    if (a >= b) return Matrix::Zero(d, d);
    return prefix[size_t(b)] - prefix[size_t(a)];
  };

  double s = halfSpan / h;
  std::int64_t kLo = std::int64_t(std::ceil(0.5 - s));
  std::int64_t kHi = std::int64_t(std::floor(0.5 + s)) - 1;
  for (std::int64_t c = 0; c < out.cellCount(); ++c) {
    std::int64_t cc = c * R + (R - 1) / 2;  // column whose center is t
    Matrix acc = Matrix::Zero(d, d);
    if (kHi >= kLo) {
      acc = h * rangeSum(cc + kLo, cc + kHi);
      double left = (double(kLo) + s - 0.5) * h;  // partial overlap lengths
      double right = (s - 0.5 - double(kHi)) * h;
      if (left > 0.0)
        if (const Matrix* v = columnValue(cc + kLo - 1)) acc += left * (*v);
      if (right > 0.0)
        if (const Matrix* v = columnValue(cc + kHi + 1)) acc += right * (*v);
    } else {
      // window narrower than one column
      double a = double(cc) + 0.5 - s, b = double(cc) + 0.5 + s;
      for (std::int64_t j = std::int64_t(std::floor(a)); j < std::int64_t(std::ceil(b)); ++j) {
        double ov = std::min(double(j + 1), b) - std::max(double(j), a);
        if (ov > 0.0)
          if (const Matrix* v = columnValue(j)) acc += (ov * h) * (*v);
      }
    }
    out.value(c) += coeff * acc;
  }
}

void symmetrizeCells(MatrixField& g) {
  for (Matrix& v : g.values) v = 0.5 * (v + v.adjoint()).eval();
}

std::vector<Matrix> gradSquares(const HarmonicSlices::Slice& sl) {
  std::vector<Matrix> h(sl.dx.size());
  for (size_t i = 0; i < h.size(); ++i)
    h[i] = sl.dx[i].adjoint() * sl.dx[i] + sl.dy[i].adjoint() * sl.dy[i];
  return h;
}

}  // namespace

MatrixField areaIntegral(const MatrixField& f, Side side, double y0,
                         const ConeGrid& cone) {
  if (!(y0 >= 0.0) || y0 >= cone.yMax)
    throw std::invalid_argument("areaIntegral: need 0 <= y0 < yMax");
  MatrixField base = sideView(f, side);
  int R = 2 * cone.refinement - 1;
  HarmonicSlices slices(base, cone.yMax + f.grid.cellWidthValue(), R);
  double h = slices.spacing();
  MatrixField out(f.grid, f.dim);
  std::vector<double> yc = cone.yCenters(), yw = cone.yWidths();
  for (size_t b = 0; b < yc.size(); ++b) {
    double halfSpan = yc[b] - y0;
    if (!(halfSpan > 0.0)) continue;
    HarmonicSlices::Slice sl = slices.slice(yc[b], halfSpan + 2.0 * h);
    slideConeBand(out, gradSquares(sl), sl.firstColumn, h, R, halfSpan, yw[b]);
  }
  symmetrizeCells(out);
  return out;
}

MatrixField gIntegral(const MatrixField& f, Side side, double y0, double yMax,
                      int levelsPerOctave) {
  if (levelsPerOctave < 1) throw std::invalid_argument("gIntegral: bad resolution");
  double floorY = std::exp2(double(-f.grid.K - 4));
  ConeGrid bands;
  bands.yMin = (y0 > 0.0) ? y0 : floorY;
  bands.yMax = yMax;
  bands.refinement = 1;
  while (bands.levelsPerOctave() < levelsPerOctave) ++bands.refinement;
  if (!(bands.yMin < bands.yMax))
    throw std::invalid_argument("gIntegral: need y0 < yMax");
  MatrixField base = sideView(f, side);
  HarmonicSlices slices(base, 0.0, 1);
  MatrixField out(f.grid, f.dim);
  std::vector<double> yc = bands.yCenters(), yw = bands.yWidths();
  for (size_t b = 0; b < yc.size(); ++b) {
    HarmonicSlices::Slice sl = slices.slice(yc[b], 0.0);
    std::vector<Matrix> h = gradSquares(sl);
    for (std::int64_t c = 0; c < out.cellCount(); ++c) {
      std::int64_t i = slices.columnOfCellCenter(c) - sl.firstColumn;
      out.value(c) += (yc[b] * yw[b]) * h[size_t(i)];
    }
  }
  symmetrizeCells(out);
  return out;
}

namespace {

// (tr int (g(t))^{r} dt)^{1/(2r)} pattern shared by the H^p and tent norms:
// given the squared field, computes (tr int (sq)^{p/2})^{1/p}.
double normOfSquaredField(const MatrixField& sq, double p) {
  if (p < 1.0) throw std::invalid_argument("norm: p < 1");
  double acc = 0.0;
  for (const Matrix& v : sq.values) {
    if (v.isZero(0.0)) continue;
    acc += traceReal(psdPower(v, 0.5 * p, 1e-8));
  }
  return std::pow(acc * sq.grid.cellWidthValue(), 1.0 / p);
}

}  // namespace

double hardyNorm(const MatrixField& f, double p, Side side, const ConeGrid& cone) {
  return normOfSquaredField(areaIntegral(f, side, 0.0, cone), p);
}

BoundPair hardyCrNorm(const MatrixField& f, double p, const ConeGrid& cone,
                      int optIters) {
  if (p < 1.0) throw std::invalid_argument("hardyCrNorm: p < 1");
  if (p >= 2.0) {
    double v = std::max(hardyNorm(f, p, Side::c, cone), hardyNorm(f, p, Side::r, cone));
    return {v, v, true};
  }
  if (optIters <= 0) throw std::invalid_argument("hardyCrNorm: optIters <= 0 for p < 2");

  // coarse net for the search; winner re-scored on the requested net
  ConeGrid coarse;
  coarse.yMin = std::exp2(double(-f.grid.K));
  coarse.yMax = f.grid.windowHi().value();
  coarse.refinement = 1;
  auto objective = [&](const MatrixField& g, const ConeGrid& net) {
    return hardyNorm(g, p, Side::c, net) + hardyNorm(f - g, p, Side::r, net);
  };

  MatrixField best = f.scaled(0.5);
  double bestVal = objective(best, coarse);
  for (const Complex& a : {Complex(0.0), Complex(1.0)}) {
    MatrixField g = f.scaled(a);
    double v = objective(g, coarse);
    if (v < bestVal) { bestVal = v; best = g; }
  }
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  double scale = l2Norm(f) / std::sqrt(f.grid.window().length().value());
  for (int it = 1; it <= optIters; ++it) {
    MatrixField g = best;
    double step = 0.25 * scale / std::sqrt(double(it));
    for (Matrix& v : g.values)
      for (int r = 0; r < f.dim; ++r)
        for (int c = 0; c < f.dim; ++c)
          v(r, c) += step * Complex(gauss(rng), gauss(rng));
    double val = objective(g, coarse);
    if (val < bestVal) { bestVal = val; best = g; }
  }
  double upper = objective(best, cone);
  // no computable certified lower bound for the infimum; report the bound
  // pair as (0, upper)
  return {0.0, upper, false};
}

HalfPlaneSamples sampleHalfPlane(const GridSpec& g, int dim, const ConeGrid& cone,
                                 const std::function<Matrix(double, double)>& fn) {
  HalfPlaneSamples out;
  out.grid = g;
  out.dim = dim;
  out.spacing = g.cellWidthValue();
  double lo = g.windowLo().value();
  std::vector<double> yc = cone.yCenters(), yw = cone.yWidths();
  for (size_t b = 0; b < yc.size(); ++b) {
    HalfPlaneSamples::Band band;
    band.y = yc[b];
    band.dy = yw[b];
    std::int64_t reach = std::int64_t(std::ceil(yc[b] / out.spacing)) + 1;
    band.firstColumn = -reach;
    std::int64_t nCols = g.cellCount() + 2 * reach;
    band.values.reserve(size_t(nCols));
    for (std::int64_t l = band.firstColumn; l < band.firstColumn + nCols; ++l)
      band.values.push_back(fn(lo + (double(l) + 0.5) * out.spacing, yc[b]));
    out.bands.push_back(std::move(band));
  }
  return out;
}

MatrixField tentSquare(const HalfPlaneSamples& F) {
  double w = F.grid.cellWidthValue();
  double ratio = w / F.spacing;
  int R = int(std::lround(ratio));
  if (std::abs(ratio - double(R)) > 1e-9 || R < 1 || R % 2 == 0)
    throw std::invalid_argument("tentSquare: cell width must be an odd multiple of the sample spacing");
  MatrixField out(F.grid, F.dim);
  for (const HalfPlaneSamples::Band& band : F.bands) {
    std::vector<Matrix> sq(band.values.size());
    for (size_t i = 0; i < sq.size(); ++i)
      sq[i] = band.values[i].adjoint() * band.values[i];
    slideConeBand(out, sq, band.firstColumn, F.spacing, R, band.y,
                  band.dy / (band.y * band.y));
  }
  symmetrizeCells(out);
  return out;
}

double tentFunctional(const HalfPlaneSamples& F, double p) {
  return normOfSquaredField(tentSquare(F), p);
}

}  // namespace ncfa
