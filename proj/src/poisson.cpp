#include "ncfa/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncfa {

namespace {
constexpr double kInvPi = std::numbers::inv_pi;

void requirePositiveY(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("height y must be positive");
}
}  // namespace

double poissonKernel(double x, double y) {
  requirePositiveY(y);
  return kInvPi * y / (x * x + y * y);
}

std::pair<double, double> gradKernel(double x, double y) {
  requirePositiveY(y);
  double r2 = x * x + y * y;
  double q1 = -2.0 * kInvPi * x * y / (r2 * r2);
  double q2 = kInvPi * (x * x - y * y) / (r2 * r2);
  return {q1, q2};
}

double conjKernel(double x, double y) {
  requirePositiveY(y);
  return -kInvPi * x / (x * x + y * y);
}

std::vector<Matrix> edgeJumps(const MatrixField& f) {
  std::int64_t n = f.cellCount();
  std::vector<Matrix> jumps(size_t(n + 1));
  for (std::int64_t j = 0; j <= n; ++j) {
    const Matrix right = (j < n) ? f.value(j) : Matrix::Zero(f.dim, f.dim);
    const Matrix left = (j > 0) ? f.value(j - 1) : Matrix::Zero(f.dim, f.dim);
    jumps[size_t(j)] = right - left;
  }
  return jumps;
}

Matrix extend(const MatrixField& f, KernelPoint p) {
  requirePositiveY(p.y);
  Matrix acc = Matrix::Zero(f.dim, f.dim);
  double lo = f.grid.windowLo().value();
  double w = f.grid.cellWidthValue();
  for (std::int64_t i = 0; i < f.cellCount(); ++i) {
    double a = lo + double(i) * w, b = a + w;
    double weight = kInvPi * (std::atan((p.x - a) / p.y) - std::atan((p.x - b) / p.y));
    acc += weight * f.value(i);
  }
  return acc;
}

GradPair gradientAt(const MatrixField& f, KernelPoint p) {
  requirePositiveY(p.y);
  std::vector<Matrix> jumps = edgeJumps(f);
  double lo = f.grid.windowLo().value();
  double w = f.grid.cellWidthValue();
  GradPair g{Matrix::Zero(f.dim, f.dim), Matrix::Zero(f.dim, f.dim)};
  for (size_t j = 0; j < jumps.size(); ++j) {
    double u = p.x - (lo + double(j) * w);
    g.dx += poissonKernel(u, p.y) * jumps[j];
    g.dy += conjKernel(u, p.y) * jumps[j];
  }
  return g;
}

namespace {

// smallest 7-smooth FFT length >= n
std::int64_t fastSize(std::int64_t n) {
  for (std::int64_t m = n;; ++m) {
    std::int64_t r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace

struct HarmonicSlices::Impl {
  GridSpec grid;
  int dim = 1;
  int refine = 1;
  double h = 0.0;      // column spacing
  std::int64_t nEdges = 0;
  std::int64_t reachCols = 0;  // columns beyond each end of W
  std::int64_t lMin = 0;
  std::int64_t count = 0;      // total columns lMin..lMax
  std::int64_t m = 0;          // FFT length
  std::vector<std::vector<Complex>> jumpHat;  // d*d spectra of the jump train
  fftw_complex* bufIn = nullptr;
  fftw_complex* bufOut = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (bufIn) fftw_free(bufIn);
    if (bufOut) fftw_free(bufOut);
  }
};

HarmonicSlices::HarmonicSlices(const MatrixField& f, double xReach, int xRefine) {
  if (xRefine < 1) throw std::invalid_argument("HarmonicSlices: xRefine < 1");
  if (!(xReach >= 0.0)) throw std::invalid_argument("HarmonicSlices: negative reach");
  impl_ = std::make_unique<Impl>();
  Impl& s = *impl_;
  s.grid = f.grid;
  s.dim = f.dim;
  s.refine = xRefine;
  s.h = f.grid.cellWidthValue() / double(xRefine);
  std::int64_t n = f.cellCount();
  s.nEdges = n + 1;
  s.reachCols = std::int64_t(std::ceil(xReach / s.h)) + 1;
  s.lMin = -s.reachCols;
  s.count = n * xRefine + 2 * s.reachCols;
  s.m = fastSize(s.count + n * std::int64_t(xRefine) + 1);

  s.bufIn = fftw_alloc_complex(size_t(s.m));
  s.bufOut = fftw_alloc_complex(size_t(s.m));
  s.fwd = fftw_plan_dft_1d(int(s.m), s.bufIn, s.bufOut, FFTW_FORWARD, FFTW_ESTIMATE);
  s.bwd = fftw_plan_dft_1d(int(s.m), s.bufIn, s.bufOut, FFTW_BACKWARD, FFTW_ESTIMATE);

  std::vector<Matrix> jumps = edgeJumps(f);
  s.jumpHat.resize(size_t(s.dim) * size_t(s.dim));
  for (int r = 0; r < s.dim; ++r)
    for (int c = 0; c < s.dim; ++c) {
      for (std::int64_t k = 0; k < s.m; ++k) s.bufIn[k][0] = s.bufIn[k][1] = 0.0;
      for (std::int64_t j = 0; j < s.nEdges; ++j) {
        std::int64_t q = j * xRefine - s.lMin;
        Complex v = jumps[size_t(j)](r, c);
        s.bufIn[q][0] = v.real();
        s.bufIn[q][1] = v.imag();
      }
      fftw_execute(s.fwd);
      std::vector<Complex>& out = s.jumpHat[size_t(r * s.dim + c)];
      out.resize(size_t(s.m));
      for (std::int64_t k = 0; k < s.m; ++k) out[size_t(k)] = Complex(s.bufOut[k][0], s.bufOut[k][1]);
    }
}

HarmonicSlices::~HarmonicSlices() = default;

double HarmonicSlices::spacing() const { return impl_->h; }
int HarmonicSlices::dim() const { return impl_->dim; }
const GridSpec& HarmonicSlices::grid() const { return impl_->grid; }

std::int64_t HarmonicSlices::columnOfCellCenter(std::int64_t cell) const {
  // cell center sits at lattice index cell*refine + (refine-1)/2 for odd
  // refine; even refine has no column exactly at the center.
  return cell * impl_->refine + (impl_->refine - 1) / 2;
}

double HarmonicSlices::columnX(std::int64_t l) const {
  return impl_->grid.windowLo().value() + (double(l) + 0.5) * impl_->h;
}

HarmonicSlices::Slice HarmonicSlices::slice(double y, double xSpan) const {
  requirePositiveY(y);
  const Impl& s = *impl_;
  std::int64_t spanCols = std::min<std::int64_t>(
      s.reachCols, std::int64_t(std::ceil(xSpan / s.h)) + 1);
  std::int64_t nCells = s.grid.cellCount() * s.refine;
  std::int64_t lFirst = -spanCols;
  std::int64_t lLast = nCells - 1 + spanCols;
  std::int64_t nCols = lLast - lFirst + 1;

  // kernel lags a = l - j*refine, a in [lFirst - (nEdges-1)*refine, lLast]
  std::int64_t aLo = lFirst - (s.nEdges - 1) * s.refine;
  std::int64_t aHi = lLast;
  std::vector<Complex> k1Hat(size_t(s.m)), k2Hat(size_t(s.m));
  for (int which = 0; which < 2; ++which) {
    for (std::int64_t k = 0; k < s.m; ++k) s.bufIn[k][0] = s.bufIn[k][1] = 0.0;
    for (std::int64_t a = aLo; a <= aHi; ++a) {
      double u = (double(a) + 0.5) * s.h;
      double v = (which == 0) ? poissonKernel(u, y) : conjKernel(u, y);
      std::int64_t pos = ((a % s.m) + s.m) % s.m;
      s.bufIn[pos][0] = v;
    }
    fftw_execute(s.fwd);
    std::vector<Complex>& dst = (which == 0) ? k1Hat : k2Hat;
    for (std::int64_t k = 0; k < s.m; ++k) dst[size_t(k)] = Complex(s.bufOut[k][0], s.bufOut[k][1]);
  }

  Slice out;
  out.y = y;
  out.firstColumn = lFirst;
  out.dx.assign(size_t(nCols), Matrix::Zero(s.dim, s.dim));
  out.dy.assign(size_t(nCols), Matrix::Zero(s.dim, s.dim));
  double scale = 1.0 / double(s.m);
  for (int r = 0; r < s.dim; ++r)
    for (int c = 0; c < s.dim; ++c) {
      const std::vector<Complex>& dh = s.jumpHat[size_t(r * s.dim + c)];
      for (int which = 0; which < 2; ++which) {
        const std::vector<Complex>& kh = (which == 0) ? k1Hat : k2Hat;
        for (std::int64_t k = 0; k < s.m; ++k) {
          Complex v = dh[size_t(k)] * kh[size_t(k)];
          s.bufIn[k][0] = v.real();
          s.bufIn[k][1] = v.imag();
        }
        fftw_execute(s.bwd);
        std::vector<Matrix>& dst = (which == 0) ? out.dx : out.dy;
        for (std::int64_t i = 0; i < nCols; ++i) {
          std::int64_t p = (lFirst + i) - s.lMin;
          dst[size_t(i)](r, c) = scale * Complex(s.bufOut[p][0], s.bufOut[p][1]);
        }
      }
    }
  return out;
}

}  // namespace ncfa
