#ifndef NCFA_CONE_HPP
#define NCFA_CONE_HPP

#include <vector>

#include "ncfa/grid.hpp"

namespace ncfa {

// Truncated quadrature net over the upper half-plane / cone.  Vertical
// structure is geometric with 8 * 2^(refinement-1) levels per octave
// (midpoint in each band); horizontally the net uses columns at the
// function-grid resolution, so the x-integrals ride on precomputed
// gradient tables.  Raising refinement halves yMin and doubles the
// vertical resolution.
struct ConeGrid {
  double yMin = 0.0;
  double yMax = 0.0;
  int refinement = 1;

  int levelsPerOctave() const { return 8 << (refinement - 1); }

  // Band midpoints (geometric) and the band widths they represent.
  std::vector<double> yCenters() const;
  std::vector<double> yWidths() const;

  // Default truncation for a grid: yMin = 2^{-K-4}, yMax = 2^{J+3},
  // adjusted by the refinement level.
  static ConeGrid forGrid(const GridSpec& g, int refinement = 1);
};

}  // namespace ncfa

#endif
