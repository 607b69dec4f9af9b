#ifndef NCFA_TRANSFORM_HPP
#define NCFA_TRANSFORM_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ncfa/cone.hpp"
#include "ncfa/grid.hpp"
#include "ncfa/poisson.hpp"

namespace ncfa {

// Gradient samples on the truncated cone over every cell center: for each
// t-cell a row of columns |x| < y per band, with the exact x-overlap
// weights used by the area integral so that the embedding is an isometry
// against the same quadrature.
struct ConeField {
  ConeGrid net;
  GridSpec grid;
  int dim = 1;
  double spacing = 0.0;  // column width
  int R = 1;             // cellWidth / spacing, odd

  struct Band {
    double y = 0.0;
    double dy = 0.0;
    std::int64_t firstRel = 0;     // column offset of weights[0] from the center
    std::vector<double> weights;   // exact overlap lengths, sum = 2(y - y0)
    // values[tCell][i]: the two gradient slots at column center
    std::vector<std::vector<GradPair>> values;
  };
  std::vector<Band> bands;
};

// h(x, y, t) = grad f(x + t, y) on the cone |x| < y.
ConeField phiEmbed(const MatrixField& f, const ConeGrid& net);

// (tr int (int int_cone |h|^2 dx dy)^{p/2} dt)^{1/p}; for h = phiEmbed(f)
// this reproduces hardyNorm(f, p) on the same net.
double coneFieldNorm(const ConeField& h, double p);

// Psi(h)(s) = int int int h(x,y,t) . grad P_y(x + t - s) dy dx dt, slots
// contracted against (d/dx P, d/dy P).  cellAverage switches the output
// projection from cell-center point values to a 3-point cell average.
MatrixField psiProject(const ConeField& h, bool cellAverage = false);

// Psi Phi f evaluated in closed form: the x- and t-integrals collapse
// exactly (each gradient slot contributes -P'_{2y}(s - e) per jump edge e),
// leaving a scalar y-quadrature kernel convolved with the jump train.
// Raising refinement halves the bottom truncation, doubles the levels per
// octave and doubles the top truncation, so the identity error decreases
// strictly under refinement.
MatrixField psiPhiApply(const MatrixField& f, int refinement = 1);

// || PsiPhi(f) - f ||_2 / || f ||_2 (0 for f = 0).  Requires int f = 0.
double psiphiIdentityError(const MatrixField& f, int refinement = 1);

// Fourier multiplier on the window treated as a torus; values[k] is the
// symbol at DFT bin k (bins above n/2 are the negative frequencies).
struct SymbolSpec {
  std::vector<Complex> values;
};

SymbolSpec identitySymbol(std::int64_t n);
// m(xi) = -i sign(xi); bins (0, n/2] get -i, (n/2, n) get +i, bin 0 gets 0.
SymbolSpec hilbertSymbol(std::int64_t n);
// One "index re im" triple per line, signed indices, '#' comments;
// unspecified bins are zero, duplicate or out-of-range indices throw.
SymbolSpec loadSymbol(std::istream& is, std::int64_t n);
SymbolSpec loadSymbol(const std::string& path, std::int64_t n);

// Entrywise DFT of length cellCount, multiply by the symbol, inverse.
MatrixField multiplierApply(const MatrixField& f, const SymbolSpec& m);

struct DualityReport {
  std::vector<double> ratios;  // |tr pairing| / (bmo upper * H^1 norm)
  double maxRatio = 0.0;
};

// Empirical duality constant over (phi, f) pairs; pairs whose denominator
// vanishes are recorded as ratio 0.
DualityReport dualityConstantHarness(
    const std::vector<std::pair<MatrixField, MatrixField>>& pairs);

}  // namespace ncfa

#endif
