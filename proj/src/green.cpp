#include "ncfa/green.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfa/poisson.hpp"

namespace ncfa {

namespace {

// y bands for the energy quadrature: at least 24 levels per octave, range
// widened so both tails are negligible against the 2% contract.
ConeGrid energyBands(const MatrixField& f, const ConeGrid& trunc) {
  if (!(trunc.yMin > 0.0) || !(trunc.yMax > trunc.yMin))
    throw std::invalid_argument("greenEnergy: degenerate truncation");
  ConeGrid bands;
  bands.refinement = trunc.refinement + 2;  // 24 levels/octave at refinement 1
  double w = f.grid.cellWidthValue();
  bands.yMin = std::min(trunc.yMin, w * std::exp2(-12.0));
  bands.yMax = std::max(trunc.yMax, 64.0 * f.grid.windowHi().value());
  return bands;
}

}  // namespace

GreenResult greenEnergy(const MatrixField& f, const ConeGrid& trunc) {
  GreenResult out;
  double w = f.grid.cellWidthValue();
  double l2 = 0.0;
  for (const Matrix& v : f.values) l2 += traceReal(v.adjoint() * v);
  out.l2sq = l2 * w;
  Matrix mean = f.integral() / f.grid.window().length().value();
  out.meanNorm = operatorNorm(mean);
  double scale = std::sqrt(std::max(out.l2sq, 1e-300));
  out.meanZero = out.meanNorm <= 1e-9 * std::max(scale, 1.0);

  std::vector<Matrix> jumps = edgeJumps(f);
  std::int64_t e = std::int64_t(jumps.size());
  // lag autocorrelation of the jump train: A_k = sum_j Re tr(jump_j* jump_{j+k})
  std::vector<double> lag(size_t(e), 0.0);
  for (std::int64_t k = 0; k < e; ++k) {
    double acc = 0.0;
    for (std::int64_t j = 0; j + k < e; ++j)
      acc += (jumps[size_t(j)].adjoint() * jumps[size_t(j + k)]).trace().real();
    lag[size_t(k)] = acc;
  }
  if (traceConvention().normalized && f.dim > 0)
    for (double& a : lag) a /= double(f.dim);

  ConeGrid bands = energyBands(f, trunc);
  std::vector<double> yc = bands.yCenters(), yw = bands.yWidths();
  double energy = 0.0;
  for (size_t b = 0; b < yc.size(); ++b) {
    double y2 = 2.0 * yc[b];
    // tr int |grad f(., y)|^2 dx = 2 sum_k A_k P_2y(k w)
    double s = lag[0] * poissonKernel(0.0, y2);
    for (std::int64_t k = 1; k < e; ++k)
      s += 2.0 * lag[size_t(k)] * poissonKernel(double(k) * w, y2);
    energy += 4.0 * yc[b] * yw[b] * s;
  }
  out.energy = energy;
  return out;
}

std::pair<Matrix, Matrix> polarizedGreen(const MatrixField& f, const MatrixField& g,
                                         const ConeGrid& trunc) {
  requireSameShape(f, g);
  int d = f.dim;
  double w = f.grid.cellWidthValue();
  Matrix rhs = Matrix::Zero(d, d);
  for (std::int64_t i = 0; i < f.cellCount(); ++i) rhs += f.value(i) * g.value(i);
  rhs *= w;

  std::vector<Matrix> jf = edgeJumps(f), jg = edgeJumps(g);
  std::int64_t e = std::int64_t(jf.size());
  // matrix lag correlations B_k = sum_j jump_f(j) jump_g(j+k), k in (-e, e)
  std::vector<Matrix> lag(size_t(2 * e - 1), Matrix::Zero(d, d));
  for (std::int64_t k = -(e - 1); k <= e - 1; ++k) {
    Matrix acc = Matrix::Zero(d, d);
    std::int64_t jLo = std::max<std::int64_t>(0, -k);
    std::int64_t jHi = std::min(e - 1, e - 1 - k);
    for (std::int64_t j = jLo; j <= jHi; ++j) acc += jf[size_t(j)] * jg[size_t(j + k)];
    lag[size_t(k + e - 1)] = acc;
  }

  ConeGrid bands = energyBands(f, trunc);
  std::vector<double> yc = bands.yCenters(), yw = bands.yWidths();
  Matrix lhs = Matrix::Zero(d, d);
  for (size_t b = 0; b < yc.size(); ++b) {
    double y2 = 2.0 * yc[b];
    Matrix s = Matrix::Zero(d, d);
    for (std::int64_t k = -(e - 1); k <= e - 1; ++k)
      s += poissonKernel(double(k) * w, y2) * lag[size_t(k + e - 1)];
    lhs += 4.0 * yc[b] * yw[b] * s;
  }
  return {lhs, rhs};
}

}  // namespace ncfa
