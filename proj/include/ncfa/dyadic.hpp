#ifndef NCFA_DYADIC_HPP
#define NCFA_DYADIC_HPP

#include <vector>

#include "ncfa/grid.hpp"

namespace ncfa {

// Two filtrations: the standard dyadic intervals D_n^k = (k 2^-n, (k+1) 2^-n]
// and the shifted system D' whose level-n atoms carry offset 1/3 (n even)
// or 2/3 (n odd).  Together they cover every interval within factor 6.
enum class Filtration { D, Dprime };

struct AtomRef {
  Filtration filtration = Filtration::D;
  int n = 0;
  std::int64_t k = 0;
  RatInterval interval;
};

// Level-n atom containing t (half-open convention).  |n| <= 40.
AtomRef atomAt(Filtration f, int n, const Rational& t);

// A containing atom of length <= 6 |I|, from D if possible, else D', at
// the level N fixed by 2^{-N-1}/3 <= |I| < 2^{-N}/3.
AtomRef cover(const RatInterval& I);

// E(f | F_n): constant on every level-n atom meeting W, equal to the atom
// average with f extended by zero outside W.  Requires n <= K so that
// atoms are unions of grid cells.
MatrixField condExp(const MatrixField& f, Filtration filt, int n);

// d_n = E_n f - E_{n-1} f for n in (nMin, nMax]; telescoping gives
// E_{nMax} f = E_{nMin} f + sum of the returned differences.
std::vector<MatrixField> martingaleDifferences(const MatrixField& f, Filtration filt,
                                               int nMin, int nMax);

// All level-n atoms meeting W, left to right.
std::vector<AtomRef> atomsMeetingWindow(const GridSpec& g, Filtration filt, int n);

}  // namespace ncfa

#endif
