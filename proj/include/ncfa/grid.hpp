#ifndef NCFA_GRID_HPP
#define NCFA_GRID_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ncfa/matrix.hpp"
#include "ncfa/rational.hpp"

namespace ncfa {

// Uniform refined grid inside the window W = (-2^J, 2^J].  Cell width is
// 2^{-K}/3; the denominator 3 keeps the atoms of the shifted dyadic
// filtration exactly on the grid.
struct GridSpec {
  int J = 1;
  int K = 6;

  Rational cellWidth() const { return Rational(1) * ratPow2(-K) / Rational(3); }
  Rational windowLo() const { return -ratPow2(J); }
  Rational windowHi() const { return ratPow2(J); }
  RatInterval window() const { return RatInterval(windowLo(), windowHi()); }
  std::int64_t cellCount() const { return std::int64_t(3) << (K + J + 1); }

  RatInterval cellInterval(std::int64_t i) const;
  Rational cellCenter(std::int64_t i) const;
  double cellWidthValue() const { return cellWidth().value(); }
  // Index of the cell (lo_i, hi_i] containing t; throws outside W.
  std::int64_t cellIndexOf(const Rational& t) const;
  // Whether t sits on a cell endpoint of this grid.
  bool onGrid(const Rational& t) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.J == b.J && a.K == b.K;
  }
};

// Matrix-valued step function on a GridSpec: one d x d matrix per cell,
// identically zero outside W.
struct MatrixField {
  GridSpec grid;
  int dim = 1;
  std::vector<Matrix> values;

  MatrixField() = default;
  MatrixField(GridSpec g, int d)
      : grid(g), dim(d), values(g.cellCount(), Matrix::Zero(d, d)) {}

  std::int64_t cellCount() const { return std::int64_t(values.size()); }
  const Matrix& value(std::int64_t i) const { return values[size_t(i)]; }
  Matrix& value(std::int64_t i) { return values[size_t(i)]; }

  MatrixField adjointField() const;
  MatrixField operator+(const MatrixField& o) const;
  MatrixField operator-(const MatrixField& o) const;
  MatrixField scaled(Complex c) const;

  // Exact integral over W of the field (cell sum * width).
  Matrix integral() const;
  // Subtract the window mean so that the integral vanishes.
  MatrixField meanZeroed() const;
};

void requireSameShape(const MatrixField& a, const MatrixField& b);

// (1/|I|) int_I f, exact rational cell weights; I endpoints must lie on the
// grid and I must meet W.
Matrix meanOver(const MatrixField& f, const RatInterval& I);

// int_I |f - f_I|^2 dt  =  int_I f* f - |I| f_I* f_I  (psd up to roundoff).
Matrix centeredSecondMoment(const MatrixField& f, const RatInterval& I);

// int over (a,b] of f, allowing endpoints off the cell lattice (partial cells
// weighted exactly); the interval is clipped to W.
Matrix integralOver(const MatrixField& f, const Rational& a, const Rational& b);
// Same with the second moment against a fixed center m: int (f-m)*(f-m).
Matrix secondMomentAround(const MatrixField& f, const Rational& a, const Rational& b,
                          const Matrix& m);

// (tr int g(t)^p dt)^{1/p} for a cellwise-psd field; p = infinity returns the
// sup over cells of the operator norm.
double lpMixedNorm(const MatrixField& g, double p, double tolPsd = 1e-8);

// || (int |f(t)|^2 dt/(1+t^2))^{1/2} ||_{S_q}; the weight is integrated in
// closed form (arctan differences) on every cell.
double weightedColumnNorm(const MatrixField& f, double q);

// int phi*(t) f(t) dt, exact cell sum.
Matrix pairing(const MatrixField& phi, const MatrixField& f);

// || f ||_{L^2(L^infty tensor M)} = (tr int |f|^2)^{1/2}.
double l2Norm(const MatrixField& f);

// Line-oriented persistence: header "NCFA1 d=<d> J=<J> K=<K>", then one line
// per cell with the cell index followed by 2 d^2 floats (re, im row-major).
// Round-trips bit-exactly at 17 significant digits.
void saveField(const MatrixField& f, std::ostream& os);
void saveField(const MatrixField& f, const std::string& path);
MatrixField loadField(std::istream& is);
MatrixField loadField(const std::string& path);

}  // namespace ncfa

#endif
