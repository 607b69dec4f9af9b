#ifndef NCFA_SQUAREFN_HPP
#define NCFA_SQUAREFN_HPP

#include <functional>
#include <vector>

#include "ncfa/cone.hpp"
#include "ncfa/grid.hpp"

namespace ncfa {

enum class Side { c, r };

// Square-function values are carried as their squares (psd per cell);
// Loewner-order claims are only valid at the squared level.

// S^2(f)(t, y0) at every cell center t: integral of |grad f|^2 over the
// shifted cone {(x,s): |x| < s - y0, s >= y0} translated to t, band
// quadrature in y (cone.yCenters) and exact column-overlap weights in x.
// Side::r runs the same computation on f*.
MatrixField areaIntegral(const MatrixField& f, Side side, double y0,
                         const ConeGrid& cone);

// G^2(f)(t, y0) = int_{y0}^{yMax} |grad f(t,y)|^2 y dy, geometric midpoint
// bands with levelsPerOctave steps per octave, sampled at cell centers.
MatrixField gIntegral(const MatrixField& f, Side side, double y0, double yMax,
                      int levelsPerOctave = 8);

// (tr int (S^2(t))^{p/2} dt)^{1/p}, p in [1, inf).
double hardyNorm(const MatrixField& f, double p, Side side, const ConeGrid& cone);

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;  // true when lower == upper by construction
};

// H^p_c + H^p_r norm.  p >= 2: max of the one-sided norms (point value).
// p < 2: upper bound on inf over decompositions f = g + h of
// |g|_{H_c^p} + |h|_{H_r^p}, found by keep-the-best random perturbation
// descent from g = f/2 (optIters objective evaluations on a coarsened
// net, winner re-evaluated on the requested net); explicitly a bound.
BoundPair hardyCrNorm(const MatrixField& f, double p, const ConeGrid& cone,
                      int optIters);

// Matrix-valued data sampled on horizontal bands of the half plane, on a
// column lattice of the given spacing anchored at the window (column l
// covers x in windowLo + (l, l+1) * spacing).
struct HalfPlaneSamples {
  GridSpec grid;
  int dim = 1;
  double spacing = 0.0;
  struct Band {
    double y = 0.0;
    double dy = 0.0;
    std::int64_t firstColumn = 0;
    std::vector<Matrix> values;
  };
  std::vector<Band> bands;
};

// Sample a callable on the net implied by a cone (columns at cell-center
// resolution covering |x - W| <= cone.yMax).
HalfPlaneSamples sampleHalfPlane(const GridSpec& g, int dim, const ConeGrid& cone,
                                 const std::function<Matrix(double, double)>& fn);

// A_c^2(F)(t) = int int_{|x|<y} |F(x+t,y)|^2 dx dy / y^2 at cell centers.
MatrixField tentSquare(const HalfPlaneSamples& F);

// |A_c(F)|_{L^p}.
double tentFunctional(const HalfPlaneSamples& F, double p);

}  // namespace ncfa

#endif
