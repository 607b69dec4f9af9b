#ifndef NCFA_BMO_HPP
#define NCFA_BMO_HPP

#include "ncfa/cone.hpp"
#include "ncfa/dyadic.hpp"
#include "ncfa/grid.hpp"
#include "ncfa/maximal.hpp"
#include "ncfa/squarefn.hpp"

namespace ncfa {

enum class BmoMode { AllGridIntervals, DyadicPair, WindowFamily };

struct BmoReport {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;  // lower == upper by construction
  BmoMode mode = BmoMode::AllGridIntervals;
  RatInterval attaining{Rational(0), Rational(1)};
  // dyadic-pair extras: sup over atoms contained in W (a certified lower
  // bound for the full norm, computed by the same arithmetic path as the
  // all-interval sup) and over atoms merely meeting W (zero extension),
  // whose 4 sqrt(3) multiple certifies the upper bound.
  double insideSup = 0.0;
  double meetingSup = 0.0;
};

// sup_I |(1/|I|) int_I |phi - phi_I|^2|_M^{1/2}.
//  AllGridIntervals: exact sup over every grid-aligned subinterval of W
//  (matrix prefix sums).  DyadicPair: atoms of D and D' only; reports the
//  certified sandwich insideSup <= full <= 4 sqrt(3) meetingSup.
BmoReport bmoNorm(const MatrixField& phi, Side side, BmoMode mode);

// BMO^q via the symmetric window family I_t^n = (t - 2^{n-1}, t + 2^{n-1}]
// at cell centers and cell endpoints: bound pair for
// |sup_n phi_n^#|_{q/2}^{1/2}.  q = inf evaluates the sups exactly (lower
// over grid-aligned windows inside W, a subfamily of the upper family;
// upper over all windows, zero extension).
BmoReport bmoQNorm(const MatrixField& phi, double q, Side side);

// (1/|I|) int over the Carleson box T(I) = I x (0,|I|] of |grad phi|^2 y.
Matrix carlesonFunctional(const MatrixField& phi, const RatInterval& I,
                          const ConeGrid& cone);

// N(lambda_phi) = sup over the mode's interval family of the operator norm
// of the Carleson functional.  DyadicPair uses atoms inside W;
// AllGridIntervals enumerates grid intervals (endpoints on a coarsened
// sublattice of at most 3*2^7 points when the grid is finer).
BmoReport carlesonSup(const MatrixField& phi, const ConeGrid& cone, BmoMode mode);

// Martingale BMO^q for one filtration: bound pair for
// |sup_n phi_{F_n}^#|_{q/2}^{1/2}, levels -J..K; exact at q = inf.
BmoReport dyadicBmoQNorm(const MatrixField& phi, double q, Filtration filt, Side side);

}  // namespace ncfa

#endif
