#ifndef NCFA_ATOMS_HPP
#define NCFA_ATOMS_HPP

#include <vector>

#include "ncfa/dyadic.hpp"
#include "ncfa/grid.hpp"

namespace ncfa {

// Certificate that a field is an atom: supported in the stated interval,
// mean zero, and tau(int |a|^2)^{1/2} <= |I|^{-1/2}.  The checks are exact
// cell sums; meanNorm and sizeValue record the measured quantities.
struct AtomCertificate {
  RatInterval support{Rational(0), Rational(1)};
  double meanNorm = 0.0;
  double sizeValue = 0.0;  // tau(int |a|^2)^{1/2} * |I|^{1/2}, must be <= 1
  bool valid = false;
};

AtomCertificate validateAtom(const MatrixField& a, const RatInterval& support,
                             double tol = 1e-12);

struct AtomTerm {
  double coefficient = 0.0;  // a power of two (or zero)
  RatInterval support{Rational(0), Rational(1)};
  MatrixField atom;
  AtomCertificate certificate;
};

struct Decomposition {
  std::vector<AtomTerm> terms;
  double coefficientL1 = 0.0;  // sum of |coefficients|
};

// Mean-zero field -> atoms: the coarse average on W, then the martingale
// differences of the standard dyadic filtration restricted to its atoms,
// then a per-cell residual on the finest atoms.  Coefficients are powers
// of two chosen so each normalized piece has sizeValue in (1/2, 1]; with
// power-of-two scaling the reconstruction sum is bitwise independent of
// term order.
Decomposition decompose(const MatrixField& f);

// Exact reconstruction sum(coefficient * atom).
MatrixField reconstruct(const Decomposition& dec, const GridSpec& g, int dim);

// inf over the produced decomposition of sum |coefficients|; an upper
// bound for the atomic Hardy norm.
double atomHardyNorm(const MatrixField& f);

}  // namespace ncfa

#endif
