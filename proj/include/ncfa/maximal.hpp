#ifndef NCFA_MAXIMAL_HPP
#define NCFA_MAXIMAL_HPP

#include <utility>
#include <vector>

#include "ncfa/dyadic.hpp"
#include "ncfa/grid.hpp"

namespace ncfa {

struct AvgWindow {
  Rational h1;
  Rational h2;  // window (t - h1, t + h2], both positive
};

// Bound pair for the noncommutative maximal norm |sup_n a_n|_p: the true
// value is only accessible as a dual/factorization sandwich except when
// the family commutes.
struct NcSupBound {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

struct DominationResult {
  bool holds = false;
  double slackMin = 0.0;  // min over cells of eigmin(majorant - minorant)
  int level = 0;          // filtration level used
};

// f_h(t) = (1/(h1+h2)) int_{t-h1}^{t+h2} f, evaluated at cell centers,
// exact partial-cell weights, zero extension outside W.
MatrixField windowAverage(const MatrixField& f, const AvgWindow& h);

// f_h <= 6 (E(f|D_N) + E(f|D'_N)) cellwise for psd f, N fixed by the
// covering rule for |I| = h1 + h2.
DominationResult dominationCheck(const MatrixField& f, const AvgWindow& h, double tol);

// Dual-ascent lower bound (and exact commutative evaluation) against the
// factorization upper bound |sum a_n|_p.  p in (1, inf].
NcSupBound ncsupBounds(const std::vector<Matrix>& a, double p, int dualIters = 200);
NcSupBound ncsupBounds(const std::vector<MatrixField>& a, double p, int dualIters = 200);

// Constructive majorant F = 6 sum over the distinct covering levels of
// (E_N + E'_N) f; dominates every listed window average.  Returns (F, |F|_p).
std::pair<MatrixField, double> maximalBoundField(const MatrixField& f,
                                                 const std::vector<AvgWindow>& windows,
                                                 double p);

// Pointwise Poisson domination f(x+t, y) <= (1/pi) sum_{k<=kMax} (8/2^k)
// times the average of f over |x+t-s| <= 2^k y, checked at all cell
// centers x.  Exact on both sides (arctan antiderivatives vs cell sums);
// the guarantee needs 2^kMax y to reach across W.  y must be an exact
// dyadic with at most 30 fractional bits.
DominationResult poissonDominationCheck(const MatrixField& f, const Rational& t,
                                        double y, int kMax);

struct DifferentiationReport {
  std::vector<double> h;
  std::vector<double> supError;  // sup norm of f_h - f away from jumps
  bool trendOk = false;          // nonincreasing along the schedule
};

// Commutative (diagonal) demonstration that f_h -> f away from jumps.
DifferentiationReport differentiationDemo(const MatrixField& f,
                                          const std::vector<Rational>& schedule);

}  // namespace ncfa

#endif
