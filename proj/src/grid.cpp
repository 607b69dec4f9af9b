#include "ncfa/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ncfa {

RatInterval GridSpec::cellInterval(std::int64_t i) const {
  if (i < 0 || i >= cellCount()) throw std::out_of_range("cellInterval: bad index");
  Rational w = cellWidth();
  Rational lo = windowLo() + Rational(i) * w;
  return RatInterval(lo, lo + w);
}

Rational GridSpec::cellCenter(std::int64_t i) const {
  RatInterval c = cellInterval(i);
  return (c.lo + c.hi) / Rational(2);
}

std::int64_t GridSpec::cellIndexOf(const Rational& t) const {
  if (!window().contains(t)) throw std::out_of_range("cellIndexOf: point outside window");
  // i = ceil((t - lo)/w) - 1 for the half-open cell (lo_i, hi_i].
  Rational rel = (t - windowLo()) / cellWidth();
  std::int64_t i = ratCeil(rel) - 1;
  if (i < 0) i = 0;
  return i;
}

bool GridSpec::onGrid(const Rational& t) const {
  Rational rel = (t - windowLo()) / cellWidth();
  return rel.den == 1;
}

MatrixField MatrixField::adjointField() const {
  MatrixField out(grid, dim);
  for (size_t i = 0; i < values.size(); ++i) out.values[i] = values[i].adjoint();
  return out;
}

MatrixField MatrixField::operator+(const MatrixField& o) const {
  requireSameShape(*this, o);
  MatrixField out(grid, dim);
  for (size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] + o.values[i];
  return out;
}

MatrixField MatrixField::operator-(const MatrixField& o) const {
  requireSameShape(*this, o);
  MatrixField out(grid, dim);
  for (size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] - o.values[i];
  return out;
}

MatrixField MatrixField::scaled(Complex c) const {
  MatrixField out(grid, dim);
  for (size_t i = 0; i < values.size(); ++i) out.values[i] = c * values[i];
  return out;
}

Matrix MatrixField::integral() const {
  Matrix acc = Matrix::Zero(dim, dim);
  for (const Matrix& v : values) acc += v;
  return acc * grid.cellWidthValue();
}

MatrixField MatrixField::meanZeroed() const {
  Matrix mean = integral() / grid.window().length().value();
  MatrixField out(grid, dim);
  for (size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] - mean;
  return out;
}

void requireSameShape(const MatrixField& a, const MatrixField& b) {
  if (!(a.grid == b.grid) || a.dim != b.dim)
    throw std::invalid_argument("fields have mismatched grid or dimension");
}

namespace {

// Cell index range [first, last] meeting (a,b], with a,b clipped to W; throws
// if the clipped interval is empty.
struct CellRange {
  std::int64_t first;
  std::int64_t last;
  Rational lo;  // clipped endpoints
  Rational hi;
};

CellRange clipToCells(const GridSpec& g, Rational a, Rational b) {
  if (a < g.windowLo()) a = g.windowLo();
  if (b > g.windowHi()) b = g.windowHi();
  if (!(a < b)) throw std::invalid_argument("interval does not meet the window");
  CellRange r;
  r.lo = a;
  r.hi = b;
  Rational w = g.cellWidth();
  // first cell whose interior (lo_i, hi_i] meets (a, b]
  r.first = ratFloor((a - g.windowLo()) / w);
  if (r.first >= g.cellCount()) r.first = g.cellCount() - 1;
  r.last = g.cellIndexOf(b);
  return r;
}

// Overlap length of cell i with (lo, hi], as a double (exact rational first).
double overlapWeight(const GridSpec& g, std::int64_t i, const Rational& lo,
                     const Rational& hi) {
  RatInterval c = g.cellInterval(i);
  Rational a = c.lo < lo ? lo : c.lo;
  Rational b = hi < c.hi ? hi : c.hi;
  if (!(a < b)) return 0.0;
  return (b - a).value();
}

}  // namespace

Matrix meanOver(const MatrixField& f, const RatInterval& I) {
  if (!f.grid.onGrid(I.lo) || !f.grid.onGrid(I.hi))
    throw std::invalid_argument("meanOver: interval endpoints off the grid");
  Matrix integ = integralOver(f, I.lo, I.hi);
  return integ / I.length().value();
}

Matrix integralOver(const MatrixField& f, const Rational& a, const Rational& b) {
  CellRange r = clipToCells(f.grid, a, b);
  Matrix acc = Matrix::Zero(f.dim, f.dim);
  for (std::int64_t i = r.first; i <= r.last; ++i) {
    double w = overlapWeight(f.grid, i, r.lo, r.hi);
    if (w > 0.0) acc += w * f.value(i);
  }
  return acc;
}

Matrix secondMomentAround(const MatrixField& f, const Rational& a, const Rational& b,
                          const Matrix& m) {
  CellRange r = clipToCells(f.grid, a, b);
  Matrix acc = Matrix::Zero(f.dim, f.dim);
  // Zero extension outside W still contributes (0 - m)*(0 - m) mass.
  double outside = (b - a).value() - (r.hi - r.lo).value();
  if (outside > 0.0) acc += outside * (m.adjoint() * m);
  for (std::int64_t i = r.first; i <= r.last; ++i) {
    double w = overlapWeight(f.grid, i, r.lo, r.hi);
    if (w > 0.0) {
      Matrix dev = f.value(i) - m;
      acc += w * (dev.adjoint() * dev);
    }
  }
  return acc;
}

Matrix centeredSecondMoment(const MatrixField& f, const RatInterval& I) {
  Matrix mean = meanOver(f, I);
  return secondMomentAround(f, I.lo, I.hi, mean);
}

double lpMixedNorm(const MatrixField& g, double p, double tolPsd) {
  if (p < 1.0) throw std::invalid_argument("lpMixedNorm: p < 1");
  if (std::isinf(p)) {
    double sup = 0.0;
    for (const Matrix& v : g.values) sup = std::max(sup, operatorNorm(v));
    return sup;
  }
  double acc = 0.0;
  for (const Matrix& v : g.values) {
    if (v.isZero(0.0)) continue;
    acc += traceReal(psdPower(v, p, tolPsd));
  }
  return std::pow(acc * g.grid.cellWidthValue(), 1.0 / p);
}

double weightedColumnNorm(const MatrixField& f, double q) {
  Matrix acc = Matrix::Zero(f.dim, f.dim);
  const GridSpec& g = f.grid;
  for (std::int64_t i = 0; i < f.cellCount(); ++i) {
    RatInterval c = g.cellInterval(i);
    double w = std::atan(c.hi.value()) - std::atan(c.lo.value());
    const Matrix& v = f.value(i);
    acc += w * (v.adjoint() * v);
  }
  return schattenNorm(psdPower(acc, 0.5, 1e-8), q);
}

Matrix pairing(const MatrixField& phi, const MatrixField& f) {
  requireSameShape(phi, f);
  Matrix acc = Matrix::Zero(f.dim, f.dim);
  for (std::int64_t i = 0; i < f.cellCount(); ++i)
    acc += phi.value(i).adjoint() * f.value(i);
  return acc * f.grid.cellWidthValue();
}

double l2Norm(const MatrixField& f) {
  double acc = 0.0;
  for (const Matrix& v : f.values) acc += v.squaredNorm();
  if (traceConvention().normalized && f.dim > 0) acc /= double(f.dim);
  return std::sqrt(acc * f.grid.cellWidthValue());
}

void saveField(const MatrixField& f, std::ostream& os) {
  os << "NCFA1 d=" << f.dim << " J=" << f.grid.J << " K=" << f.grid.K << "\n";
  char buf[32];
  for (std::int64_t i = 0; i < f.cellCount(); ++i) {
    os << i;
    const Matrix& v = f.value(i);
    for (int r = 0; r < f.dim; ++r)
      for (int c = 0; c < f.dim; ++c) {
        std::snprintf(buf, sizeof(buf), " %.17g", v(r, c).real());
        os << buf;
        std::snprintf(buf, sizeof(buf), " %.17g", v(r, c).imag());
        os << buf;
      }
    os << "\n";
  }
}

void saveField(const MatrixField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("saveField: cannot open " + path);
  saveField(f, os);
}

MatrixField loadField(std::istream& is) {
  std::string line;
  // header, skipping comments and blank lines
  for (;;) {
    if (!std::getline(is, line)) throw std::runtime_error("loadField: missing header");
    size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    break;
  }
  int d = 0, J = 0, K = 0;
  if (std::sscanf(line.c_str(), "NCFA1 d=%d J=%d K=%d", &d, &J, &K) != 3 || d < 1)
    throw std::runtime_error("loadField: bad header: " + line);
  GridSpec g{J, K};
  MatrixField f(g, d);
  std::vector<bool> seen(size_t(g.cellCount()), false);
  std::int64_t read = 0;
  while (std::getline(is, line)) {
    size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    std::istringstream ls(line);
    std::int64_t idx;
    if (!(ls >> idx)) throw std::runtime_error("loadField: bad cell line: " + line);
    if (idx < 0 || idx >= g.cellCount())
      throw std::runtime_error("loadField: cell index out of range");
    if (seen[size_t(idx)]) throw std::runtime_error("loadField: duplicate cell index");
    seen[size_t(idx)] = true;
    Matrix& v = f.value(idx);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        double re, im;
        if (!(ls >> re >> im))
          throw std::runtime_error("loadField: truncated cell line");
        v(r, c) = Complex(re, im);
      }
    double extra;
    if (ls >> extra) throw std::runtime_error("loadField: trailing data on cell line");
    ++read;
  }
  if (read != g.cellCount())
    throw std::runtime_error("loadField: expected " + std::to_string(g.cellCount()) +
                             " cells, got " + std::to_string(read));
  return f;
}

MatrixField loadField(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("loadField: cannot open " + path);
  return loadField(is);
}

}  // namespace ncfa
