#ifndef NCFA_RATIONAL_HPP
#define NCFA_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncfa {

// Exact rational with 64-bit numerator/denominator, normalized, den > 0.
// All grid endpoints in this library are of the form p / (3 * 2^m), so the
// magnitudes stay far from overflow; intermediates go through __int128 and
// anything that would not fit back into 64 bits throws.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  Rational operator-() const { return Rational(-num, den); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
};

// 2^e as an exact rational, e in [-62, 62].
Rational ratPow2(int e);

// Largest integer <= a.
std::int64_t ratFloor(const Rational& a);
// Smallest integer >= a.
std::int64_t ratCeil(const Rational& a);

// Half-open interval (lo, hi] with exact rational endpoints.
struct RatInterval {
  Rational lo;
  Rational hi;

  RatInterval() = default;
  RatInterval(Rational l, Rational h) : lo(l), hi(h) {
    if (!(lo < hi)) throw std::invalid_argument("RatInterval: lo must be < hi");
  }

  Rational length() const { return hi - lo; }
  bool contains(const Rational& t) const { return lo < t && t <= hi; }
  bool containsInterval(const RatInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

}  // namespace ncfa

#endif
