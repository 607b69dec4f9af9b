#include "ncfa/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ncfa/bmo.hpp"
#include "ncfa/squarefn.hpp"

namespace ncfa {

namespace {

// Exact x-overlap weights of the window |x| < halfSpan with the column
// lattice, relative to the center column; mirrors the area-integral sweep.
void coneWeights(double halfSpan, double h, std::int64_t& firstRel,
                 std::vector<double>& wts) {
  wts.clear();
  double s = halfSpan / h;
  std::int64_t kLo = std::int64_t(std::ceil(0.5 - s));
  std::int64_t kHi = std::int64_t(std::floor(0.5 + s)) - 1;
  if (kHi >= kLo) {
    firstRel = kLo - 1;
    wts.push_back((double(kLo) + s - 0.5) * h);
    for (std::int64_t k = kLo; k <= kHi; ++k) wts.push_back(h);
    wts.push_back((s - 0.5 - double(kHi)) * h);
  } else {
    double a = 0.5 - s, b = 0.5 + s;
    firstRel = std::int64_t(std::floor(a));
    for (std::int64_t j = firstRel; j < std::int64_t(std::ceil(b)); ++j) {
      double ov = std::min(double(j + 1), b) - std::max(double(j), a);
      wts.push_back(std::max(0.0, ov) * h);
    }
  }
}

double normOfSquaredField(const MatrixField& sq, double p) {
  if (p < 1.0) throw std::invalid_argument("coneFieldNorm: p < 1");
  double acc = 0.0;
  for (const Matrix& v : sq.values) {
    if (v.isZero(0.0)) continue;
    acc += traceReal(psdPower(v, 0.5 * p, 1e-8));
  }
  return std::pow(acc * sq.grid.cellWidthValue(), 1.0 / p);
}

}  // namespace

ConeField phiEmbed(const MatrixField& f, const ConeGrid& net) {
  ConeField out;
  out.net = net;
  out.grid = f.grid;
  out.dim = f.dim;
  out.R = 2 * net.refinement - 1;
  HarmonicSlices slices(f, net.yMax + f.grid.cellWidthValue(), out.R);
  out.spacing = slices.spacing();
  double h = out.spacing;
  std::vector<double> yc = net.yCenters(), yw = net.yWidths();
  for (size_t b = 0; b < yc.size(); ++b) {
    ConeField::Band band;
    band.y = yc[b];
    band.dy = yw[b];
    coneWeights(yc[b], h, band.firstRel, band.weights);
    HarmonicSlices::Slice sl = slices.slice(yc[b], yc[b] + 2.0 * h);
    std::int64_t nCols = std::int64_t(sl.dx.size());
    band.values.resize(size_t(f.cellCount()));
    for (std::int64_t c = 0; c < f.cellCount(); ++c) {
      std::int64_t cc = c * out.R + (out.R - 1) / 2;
      std::vector<GradPair>& row = band.values[size_t(c)];
      row.resize(band.weights.size());
      for (size_t i = 0; i < row.size(); ++i) {
        std::int64_t idx = cc + band.firstRel + std::int64_t(i) - sl.firstColumn;
        if (idx >= 0 && idx < nCols) {
          row[i].dx = sl.dx[size_t(idx)];
          row[i].dy = sl.dy[size_t(idx)];
        } else {
          row[i].dx = Matrix::Zero(f.dim, f.dim);
          row[i].dy = Matrix::Zero(f.dim, f.dim);
        }
      }
    }
    out.bands.push_back(std::move(band));
  }
  return out;
}

double coneFieldNorm(const ConeField& h, double p) {
  MatrixField sq(h.grid, h.dim);
  for (const ConeField::Band& band : h.bands)
    for (std::int64_t c = 0; c < sq.cellCount(); ++c) {
      Matrix acc = Matrix::Zero(h.dim, h.dim);
      const std::vector<GradPair>& row = band.values[size_t(c)];
      for (size_t i = 0; i < row.size(); ++i)
        acc += band.weights[i] * row[i].gradSquare();
      sq.value(c) += band.dy * acc;
    }
  for (Matrix& v : sq.values) v = 0.5 * (v + v.adjoint()).eval();
  return normOfSquaredField(sq, p);
}

MatrixField psiProject(const ConeField& h, bool cellAverage) {
  MatrixField out(h.grid, h.dim);
  double w = h.grid.cellWidthValue();
  double cw = h.spacing;
  std::vector<double> offs = cellAverage
                                 ? std::vector<double>{-w / 3.0, 0.0, w / 3.0}
                                 : std::vector<double>{0.0};
  for (const ConeField::Band& band : h.bands) {
    for (std::int64_t cs = 0; cs < out.cellCount(); ++cs) {
      Matrix acc = Matrix::Zero(h.dim, h.dim);
      for (std::int64_t ct = 0; ct < out.cellCount(); ++ct) {
        const std::vector<GradPair>& row = band.values[size_t(ct)];
        for (size_t i = 0; i < row.size(); ++i) {
          if (band.weights[i] == 0.0) continue;
          double base = cw * (double(band.firstRel + std::int64_t(i)) +
                              double(h.R) * double(ct - cs));
          double q1acc = 0.0, q2acc = 0.0;
          for (double off : offs) {
            auto [q1, q2] = gradKernel(base - off, band.y);
            q1acc += q1;
            q2acc += q2;
          }
          double scale = band.weights[i] / double(offs.size());
          acc += scale * (q1acc * row[i].dx + q2acc * row[i].dy);
        }
      }
      out.value(cs) += (band.dy * w) * acc;
    }
  }
  return out;
}

MatrixField psiPhiApply(const MatrixField& f, int refinement) {
  if (refinement < 1) throw std::invalid_argument("psiPhiApply: refinement < 1");
  const GridSpec& g = f.grid;
  double scale = std::exp2(double(refinement - 1));
  ConeGrid bands;
  bands.yMin = std::exp2(double(-g.K - 6)) / scale;
  bands.yMax = std::exp2(double(g.J + 5)) * scale;
  bands.refinement = refinement + 1;  // 16 levels per octave at refinement 1

  // scalar lag kernel: both gradient slots collapse, per jump edge, to
  // -P'_{2y}(s - e); summed over the band quadrature with the 2y measure
  // of the t-integral
  std::int64_t n = g.cellCount();
  double w = g.cellWidthValue();
  std::vector<double> kappa(size_t(2 * n + 1));
  std::vector<double> yc = bands.yCenters(), yw = bands.yWidths();
  for (std::int64_t l = -n; l <= n; ++l) {
    double u = (double(l) + 0.5) * w;
    double acc = 0.0;
    for (size_t b = 0; b < yc.size(); ++b) {
      double y = yc[b];
      double den = u * u + 4.0 * y * y;
      acc += 2.0 * y * yw[b] * (8.0 * std::numbers::inv_pi) * y * u / (den * den);
    }
    kappa[size_t(l + n)] = acc;
  }

  std::vector<Matrix> jumps = edgeJumps(f);  // edge j at windowLo + j w
  MatrixField out(g, f.dim);
  for (std::int64_t c = 0; c < n; ++c) {
    Matrix acc = Matrix::Zero(f.dim, f.dim);
    for (std::int64_t j = 0; j <= n; ++j)
      acc += kappa[size_t(c - j + n)] * jumps[size_t(j)];
    out.value(c) = acc;
  }
  return out;
}

double psiphiIdentityError(const MatrixField& f, int refinement) {
  double nf = l2Norm(f);
  if (nf == 0.0) return 0.0;
  double meanScale = operatorNorm(f.integral());
  if (meanScale > 1e-8 * nf * std::sqrt(f.grid.window().length().value()))
    throw std::invalid_argument("psiphiIdentityError: field must have zero mean");
  return l2Norm(psiPhiApply(f, refinement) - f) / nf;
}

SymbolSpec identitySymbol(std::int64_t n) {
  SymbolSpec m;
  m.values.assign(size_t(n), Complex(1.0, 0.0));
  return m;
}

SymbolSpec hilbertSymbol(std::int64_t n) {
  SymbolSpec m;
  m.values.assign(size_t(n), Complex(0.0, 0.0));
  for (std::int64_t k = 1; k < n; ++k)
    m.values[size_t(k)] = (2 * k <= n) ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
  return m;
}

SymbolSpec loadSymbol(std::istream& is, std::int64_t n) {
  SymbolSpec m;
  m.values.assign(size_t(n), Complex(0.0, 0.0));
  std::set<std::int64_t> seen;
  std::string line;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::int64_t k;
    double re, im;
    if (!(ls >> k)) continue;  // blank line
    if (!(ls >> re >> im)) throw std::runtime_error("symbol spec: need index re im");
    std::string extra;
    if (ls >> extra) throw std::runtime_error("symbol spec: trailing tokens");
    if (k < -(n - 1) || k >= n) throw std::runtime_error("symbol spec: index out of range");
    std::int64_t bin = k >= 0 ? k : k + n;
    if (!seen.insert(bin).second) throw std::runtime_error("symbol spec: duplicate index");
    m.values[size_t(bin)] = Complex(re, im);
  }
  return m;
}

SymbolSpec loadSymbol(const std::string& path, std::int64_t n) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("symbol spec: cannot open " + path);
  return loadSymbol(is, n);
}

MatrixField multiplierApply(const MatrixField& f, const SymbolSpec& m) {
  std::int64_t n = f.cellCount();
  if (std::int64_t(m.values.size()) != n)
    throw std::invalid_argument("multiplierApply: symbol length mismatch");
  MatrixField out(f.grid, f.dim);
  fftw_complex* buf = fftw_alloc_complex(size_t(n));
  fftw_plan fwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (int r = 0; r < f.dim; ++r)
    for (int c = 0; c < f.dim; ++c) {
      for (std::int64_t i = 0; i < n; ++i) {
        Complex v = f.value(i)(r, c);
        buf[i][0] = v.real();
        buf[i][1] = v.imag();
      }
      fftw_execute(fwd);
      for (std::int64_t k = 0; k < n; ++k) {
        Complex v = Complex(buf[k][0], buf[k][1]) * m.values[size_t(k)];
        buf[k][0] = v.real();
        buf[k][1] = v.imag();
      }
      fftw_execute(bwd);
      for (std::int64_t i = 0; i < n; ++i)
        out.value(i)(r, c) = Complex(buf[i][0], buf[i][1]) / double(n);
    }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  fftw_free(buf);
  return out;
}

DualityReport dualityConstantHarness(
    const std::vector<std::pair<MatrixField, MatrixField>>& pairs) {
  if (pairs.empty())
    throw std::invalid_argument("dualityConstantHarness: empty ensemble");
  DualityReport rep;
  for (const auto& [phi, f] : pairs) {
    double num = std::abs(traceValue(pairing(phi, f)));
    double bmo = bmoNorm(phi, Side::c, BmoMode::AllGridIntervals).upper;
    double h1 = hardyNorm(f, 1.0, Side::c, ConeGrid::forGrid(f.grid));
    double den = bmo * h1;
    rep.ratios.push_back(den > 0.0 ? num / den : 0.0);
    rep.maxRatio = std::max(rep.maxRatio, rep.ratios.back());
  }
  return rep;
}

}  // namespace ncfa
