#include "ncfa/maximal.hpp"
#include <algorithm>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "ncfa/poisson.hpp"

namespace ncfa {

namespace {

void requirePositiveWindow(const AvgWindow& h) {
  if (!(h.h1 > Rational(0)) || !(h.h2 > Rational(0)))
    throw std::invalid_argument("window half-widths must be positive");
}

void requirePsdCells(const MatrixField& f, double tol = 1e-9) {
  for (const Matrix& v : f.values) {
    double scale = std::max(1.0, v.norm());
    if (!isHermitian(v, 1e-9) || eigMin(0.5 * (v + v.adjoint())) < -tol * scale)
      throw std::invalid_argument("field is not cellwise psd");
  }
}

// covering level for interval length len: 2^{-N-1}/3 <= len < 2^{-N}/3
int coveringLevel(const Rational& len) {
  Rational l3 = Rational(3) * len;
  int n = 0;
  while (n > -40 && l3 >= ratPow2(-n)) --n;
  while (n < 40 && l3 < ratPow2(-n - 1)) ++n;
  return n;
}

}  // namespace

MatrixField windowAverage(const MatrixField& f, const AvgWindow& h) {
  requirePositiveWindow(h);
  Rational len = h.h1 + h.h2;
  MatrixField out(f.grid, f.dim);
  std::int64_t n = f.cellCount();

  // the window sits at the same fractional offset from every cell, so the
  // full-cell span and the two partial-cell weights are shared; only the
  // prefix-sum range slides
  Rational w = f.grid.cellWidth();
  Rational alpha = h.h1 / w, beta = h.h2 / w;
  Rational half(1, 2);
  std::int64_t jLo = ratCeil(half - alpha);       // first fully covered cell
  std::int64_t jHi = ratFloor(half + beta) - 1;   // last fully covered cell
  if (jHi < jLo) {
    // window narrower than one cell: fall back to exact per-cell clipping
    for (std::int64_t i = 0; i < n; ++i) {
      Rational t = f.grid.cellCenter(i);
      out.value(i) = integralOver(f, t - h.h1, t + h.h2) / len.value();
    }
    return out;
  }
  double wv = f.grid.cellWidthValue();
  double left = (Rational(jLo) - (half - alpha)).value() * wv;
  double right = ((half + beta) - Rational(jHi + 1)).value() * wv;

  std::vector<Matrix> prefix(size_t(n + 1), Matrix::Zero(f.dim, f.dim));
  for (std::int64_t i = 0; i < n; ++i)
    prefix[size_t(i + 1)] = prefix[size_t(i)] + f.value(i);
  auto cell = [&](std::int64_t j) -> const Matrix* {
    return (j >= 0 && j < n) ? &f.values[size_t(j)] : nullptr;
  };
  double inv = 1.0 / len.value();
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t a = std::clamp(i + jLo, std::int64_t(0), n);
    std::int64_t b = std::clamp(i + jHi + 1, std::int64_t(0), n);
    Matrix acc = wv * (prefix[size_t(b)] - prefix[size_t(a)]);
    if (left > 0.0)
      if (const Matrix* v = cell(i + jLo - 1)) acc += left * (*v);
    if (right > 0.0)
      if (const Matrix* v = cell(i + jHi + 1)) acc += right * (*v);
    out.value(i) = inv * acc;
  }
  return out;
}

DominationResult dominationCheck(const MatrixField& f, const AvgWindow& h, double tol) {
  requirePsdCells(f);
  int n = coveringLevel(h.h1 + h.h2);
  if (n > f.grid.K)
    throw std::invalid_argument("dominationCheck: covering level finer than grid");
  MatrixField favg = windowAverage(f, h);
  MatrixField bound = condExp(f, Filtration::D, n) + condExp(f, Filtration::Dprime, n);
  DominationResult r;
  r.level = n;
  r.slackMin = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < f.cellCount(); ++i)
    r.slackMin = std::min(r.slackMin, loewnerSlack(favg.value(i), 6.0 * bound.value(i)));
  r.holds = r.slackMin >= -tol;
  return r;
}

namespace {

// shared dual-ascent core over abstract psd sequences; inner(a,b) is the
// trace pairing, scale(b, c) rescales, sumNorm computes |sum b_n|_q
template <class T>
double dualAscent(const std::vector<T>& a, double p, int iters,
                  const std::function<double(const T&, const T&)>& inner,
                  const std::function<T(const std::vector<T>&)>& sum,
                  const std::function<double(const T&, double)>& norm,
                  const std::function<T(const T&, double)>& scaled) {
  double q = std::isinf(p) ? 1.0 : p / (p - 1.0);
  std::vector<T> b = a;
  double best = 0.0;
  for (int it = 0; it < iters; ++it) {
    T total = sum(b);
    double nq = norm(total, q);
    if (nq > 0.0) {
      double inv = 1.0 / nq;
      double value = 0.0;
      for (size_t n = 0; n < a.size(); ++n) value += inner(a[n], b[n]) * inv;
      best = std::max(best, value);
      for (T& x : b) x = scaled(x, inv);
    }
    double eta = 1.0 / std::sqrt(double(it + 1));
    for (size_t n = 0; n < a.size(); ++n) b[n] = sum({b[n], scaled(a[n], eta)});
  }
  return best;
}

bool allCommute(const std::vector<Matrix>& a, double relTol = 1e-10) {
  double scale = 0.0;
  for (const Matrix& x : a) scale = std::max(scale, x.norm());
  if (scale == 0.0) return true;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] * a[j] - a[j] * a[i]).norm() > relTol * scale * scale) return false;
  return true;
}

// pointwise max of commuting psd matrices via the eigenbasis of their sum
Matrix commutingMax(const std::vector<Matrix>& a) {
  int d = int(a.front().rows());
  Matrix total = Matrix::Zero(d, d);
  for (const Matrix& x : a) total += x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (total + total.adjoint()));
  const Matrix& u = es.eigenvectors();
  RealVector mx = RealVector::Zero(d);
  for (const Matrix& x : a) {
    Matrix diag = u.adjoint() * x * u;
    for (int i = 0; i < d; ++i) mx(i) = std::max(mx(i), diag(i, i).real());
  }
  return u * mx.asDiagonal() * u.adjoint();
}

}  // namespace

NcSupBound ncsupBounds(const std::vector<Matrix>& a, double p, int dualIters) {
  if (a.empty()) throw std::invalid_argument("ncsupBounds: empty family");
  if (!(p > 1.0)) throw std::invalid_argument("ncsupBounds: need p > 1");
  for (const Matrix& x : a) {
    double scale = std::max(1.0, x.norm());
    if (!isHermitian(x, 1e-9) || eigMin(0.5 * (x + x.adjoint())) < -1e-9 * scale)
      throw std::invalid_argument("ncsupBounds: non-psd entry");
  }
  int d = int(a.front().rows());
  Matrix total = Matrix::Zero(d, d);
  for (const Matrix& x : a) total += x;
  NcSupBound out;
  out.upper = schattenNorm(total, p);
  if (allCommute(a)) {
    double v = schattenNorm(commutingMax(a), p);
    return {v, v, true};
  }
  for (const Matrix& x : a) out.lower = std::max(out.lower, schattenNorm(x, p));
  double dual = dualAscent<Matrix>(
      a, p, dualIters,
      [](const Matrix& x, const Matrix& y) { return (x * y).trace().real(); },
      [d](const std::vector<Matrix>& xs) {
        Matrix s = Matrix::Zero(d, d);
        for (const Matrix& x : xs) s += x;
        return s;
      },
      [](const Matrix& x, double q) { return schattenNorm(x, q); },
      [](const Matrix& x, double c) { return Matrix(c * x); });
  out.lower = std::max(out.lower, dual);
  return out;
}

NcSupBound ncsupBounds(const std::vector<MatrixField>& a, double p, int dualIters) {
  if (a.empty()) throw std::invalid_argument("ncsupBounds: empty family");
  if (!(p > 1.0)) throw std::invalid_argument("ncsupBounds: need p > 1");
  for (const MatrixField& f : a) requirePsdCells(f);
  NcSupBound out;
  MatrixField total = a.front();
  for (size_t n = 1; n < a.size(); ++n) total = total + a[n];
  out.upper = lpMixedNorm(total, p);

  bool commute = true;
  for (std::int64_t i = 0; commute && i < a.front().cellCount(); ++i) {
    std::vector<Matrix> cell;
    for (const MatrixField& f : a) cell.push_back(f.value(i));
    commute = allCommute(cell);
  }
  if (commute) {
    MatrixField mx(a.front().grid, a.front().dim);
    for (std::int64_t i = 0; i < mx.cellCount(); ++i) {
      std::vector<Matrix> cell;
      for (const MatrixField& f : a) cell.push_back(f.value(i));
      mx.value(i) = commutingMax(cell);
    }
    double v = lpMixedNorm(mx, p);
    return {v, v, true};
  }

  for (const MatrixField& f : a) out.lower = std::max(out.lower, lpMixedNorm(f, p));
  double w = a.front().grid.cellWidthValue();
  double dual = dualAscent<MatrixField>(
      a, p, dualIters,
      [w](const MatrixField& x, const MatrixField& y) {
        double acc = 0.0;
        for (std::int64_t i = 0; i < x.cellCount(); ++i)
          acc += traceReal(x.value(i) * y.value(i));
        return acc * w;
      },
      [](const std::vector<MatrixField>& xs) {
        MatrixField s = xs.front();
        for (size_t n = 1; n < xs.size(); ++n) s = s + xs[n];
        return s;
      },
      [](const MatrixField& x, double q) { return lpMixedNorm(x, q); },
      [](const MatrixField& x, double c) { return x.scaled(c); });
  out.lower = std::max(out.lower, dual);
  return out;
}

std::pair<MatrixField, double> maximalBoundField(const MatrixField& f,
                                                 const std::vector<AvgWindow>& windows,
                                                 double p) {
  if (windows.empty()) throw std::invalid_argument("maximalBoundField: empty family");
  requirePsdCells(f);
  std::set<int> levels;
  for (const AvgWindow& h : windows) {
    requirePositiveWindow(h);
    levels.insert(coveringLevel(h.h1 + h.h2));
  }
  MatrixField bound(f.grid, f.dim);
  for (int n : levels)
    bound = bound + condExp(f, Filtration::D, n) + condExp(f, Filtration::Dprime, n);
  MatrixField scaled = bound.scaled(6.0);
  return {scaled, lpMixedNorm(scaled, p)};
}

DominationResult poissonDominationCheck(const MatrixField& f, const Rational& t,
                                        double y, int kMax) {
  if (!(y > 0.0)) throw std::invalid_argument("poissonDominationCheck: y <= 0");
  requirePsdCells(f);
  // y as an exact dyadic rational
  double scaled = y * double(std::int64_t(1) << 30);
  if (scaled != std::floor(scaled) || std::abs(scaled) >= 9e15)
    throw std::invalid_argument("poissonDominationCheck: y must be dyadic (<= 30 bits)");
  Rational ry(std::int64_t(scaled), std::int64_t(1) << 30);

  DominationResult r;
  r.slackMin = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < f.cellCount(); ++i) {
    Rational u = f.grid.cellCenter(i) + t;
    Matrix lhs = extend(f, {u.value(), y});
    Matrix rhs = Matrix::Zero(f.dim, f.dim);
    for (int k = 0; k <= kMax; ++k) {
      Rational radius = ratPow2(k) * ry;
      double window = 2.0 * radius.value();
      rhs += (8.0 / std::exp2(double(k)) / window) *
             integralOver(f, u - radius, u + radius);
    }
    rhs *= std::numbers::inv_pi;
    r.slackMin = std::min(r.slackMin, loewnerSlack(lhs, rhs));
  }
  r.holds = r.slackMin >= -1e-10;
  return r;
}

DifferentiationReport differentiationDemo(const MatrixField& f,
                                          const std::vector<Rational>& schedule) {
  for (const Matrix& v : f.values) {
    Matrix off = v;
    off.diagonal().setZero();
    if (off.norm() > 1e-12 * std::max(1.0, v.norm()))
      throw std::invalid_argument("differentiationDemo: field must be diagonal");
  }
  // jump set: interior cell edges where the value changes, plus both ends of W
  std::vector<Rational> jumps{f.grid.windowLo(), f.grid.windowHi()};
  for (std::int64_t i = 1; i < f.cellCount(); ++i)
    if ((f.value(i) - f.value(i - 1)).norm() > 0.0)
      jumps.push_back(f.grid.cellInterval(i).lo);

  DifferentiationReport rep;
  for (const Rational& h : schedule) {
    if (!(h > Rational(0))) throw std::invalid_argument("differentiationDemo: h <= 0");
    MatrixField fh = windowAverage(f, {h, h});
    double sup = 0.0;
    for (std::int64_t i = 0; i < f.cellCount(); ++i) {
      Rational t = f.grid.cellCenter(i);
      bool clear = true;
      for (const Rational& j : jumps) {
        Rational dist = (t > j) ? t - j : j - t;
        if (!(dist > h)) { clear = false; break; }
      }
      if (clear) sup = std::max(sup, operatorNorm(fh.value(i) - f.value(i)));
    }
    rep.h.push_back(h.value());
    rep.supError.push_back(sup);
  }
  rep.trendOk = true;
  for (size_t i = 1; i < rep.supError.size(); ++i)
    if (rep.supError[i] > rep.supError[i - 1] + 1e-12) rep.trendOk = false;
  return rep;
}

}  // namespace ncfa
