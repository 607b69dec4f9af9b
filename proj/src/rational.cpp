#include "ncfa/rational.hpp"

#include <numeric>

namespace ncfa {

namespace {

using I128 = __int128;

std::int64_t checkedNarrow(I128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("Rational: 64-bit overflow");
  return static_cast<std::int64_t>(v);
}

I128 gcd128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational makeNormalized(I128 n, I128 d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num = checkedNarrow(n);
  r.den = checkedNarrow(d);
  return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = makeNormalized(n, d);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return makeNormalized(I128(a.num) * b.den + I128(b.num) * a.den, I128(a.den) * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
  return makeNormalized(I128(a.num) * b.den - I128(b.num) * a.den, I128(a.den) * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return makeNormalized(I128(a.num) * b.num, I128(a.den) * b.den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
  return makeNormalized(I128(a.num) * b.den, I128(a.den) * b.num);
}

bool operator<(const Rational& a, const Rational& b) {
  return I128(a.num) * b.den < I128(b.num) * a.den;
}

Rational ratPow2(int e) {
  if (e < -62 || e > 62) throw std::overflow_error("ratPow2: exponent out of range");
  if (e >= 0) return Rational(std::int64_t(1) << e);
  return Rational(1, std::int64_t(1) << (-e));
}

std::int64_t ratFloor(const Rational& a) {
  std::int64_t q = a.num / a.den;
  if (a.num % a.den != 0 && a.num < 0) --q;
  return q;
}

std::int64_t ratCeil(const Rational& a) {
  std::int64_t q = a.num / a.den;
  if (a.num % a.den != 0 && a.num > 0) ++q;
  return q;
}

}  // namespace ncfa
