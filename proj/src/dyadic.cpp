#include "ncfa/dyadic.hpp"

#include <stdexcept>

namespace ncfa {

namespace {

Rational levelOffset(Filtration f, int n) {
  if (f == Filtration::D) return Rational(0);
  return (n % 2 == 0) ? Rational(1, 3) : Rational(2, 3);
}

void checkLevel(int n) {
  if (n < -40 || n > 40) throw std::invalid_argument("dyadic: level out of range");
}

}  // namespace

AtomRef atomAt(Filtration f, int n, const Rational& t) {
  checkLevel(n);
  Rational o = levelOffset(f, n);
  Rational len = ratPow2(-n);
  // k + o < t 2^n <= k + 1 + o
  std::int64_t k = ratCeil(t * ratPow2(n) - o) - 1;
  Rational lo = (Rational(k) + o) * len;
  return {f, n, k, RatInterval(lo, lo + len)};
}

AtomRef cover(const RatInterval& I) {
  Rational l3 = Rational(3) * I.length();
  int n = 0;
  while (n > -40 && l3 >= ratPow2(-n)) --n;
  while (n < 40 && l3 < ratPow2(-n - 1)) ++n;
  if (!(ratPow2(-n - 1) <= l3 && l3 < ratPow2(-n)))
    throw std::invalid_argument("cover: interval length out of supported range");
  for (Filtration f : {Filtration::D, Filtration::Dprime}) {
    AtomRef a = atomAt(f, n, I.hi);
    if (a.interval.containsInterval(I)) return a;
  }
  throw std::logic_error("cover: no containing atom at the selected level");
}

MatrixField condExp(const MatrixField& f, Filtration filt, int n) {
  if (n > f.grid.K)
    throw std::invalid_argument("condExp: atoms finer than the grid");
  checkLevel(n);
  MatrixField out(f.grid, f.dim);
  std::int64_t i = 0;
  while (i < f.cellCount()) {
    AtomRef a = atomAt(filt, n, f.grid.cellCenter(i));
    Matrix avg = integralOver(f, a.interval.lo, a.interval.hi) /
                 a.interval.length().value();
    while (i < f.cellCount() && a.interval.contains(f.grid.cellCenter(i)))
      out.value(i++) = avg;
  }
  return out;
}

std::vector<MatrixField> martingaleDifferences(const MatrixField& f, Filtration filt,
                                               int nMin, int nMax) {
  if (nMin > nMax) throw std::invalid_argument("martingaleDifferences: bad range");
  std::vector<MatrixField> out;
  MatrixField prev = condExp(f, filt, nMin);
  for (int n = nMin + 1; n <= nMax; ++n) {
    MatrixField cur = condExp(f, filt, n);
    out.push_back(cur - prev);
    prev = std::move(cur);
  }
  return out;
}

std::vector<AtomRef> atomsMeetingWindow(const GridSpec& g, Filtration filt, int n) {
  checkLevel(n);
  std::vector<AtomRef> out;
  AtomRef a = atomAt(filt, n, g.windowLo() + g.cellWidth());
  for (;;) {
    out.push_back(a);
    if (!(a.interval.hi < g.windowHi())) break;
    a = atomAt(filt, n, a.interval.hi + ratPow2(-n - 1));
  }
  return out;
}

}  // namespace ncfa
