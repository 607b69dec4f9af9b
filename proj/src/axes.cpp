#include "ncfa/cone.hpp"

#include <cmath>
#include <stdexcept>

namespace ncfa {

namespace {

// Band edges y_k = yMin * r^k up to the first edge >= yMax.
std::vector<double> bandEdges(const ConeGrid& c) {
  if (!(c.yMin > 0.0) || !(c.yMin < c.yMax))
    throw std::invalid_argument("ConeGrid: need 0 < yMin < yMax");
  if (c.refinement < 1) throw std::invalid_argument("ConeGrid: refinement < 1");
  double r = std::exp2(1.0 / c.levelsPerOctave());
  std::vector<double> e{c.yMin};
  while (e.back() < c.yMax * (1.0 - 1e-12)) e.push_back(e.back() * r);
  e.back() = c.yMax;
  return e;
}

}  // namespace

std::vector<double> ConeGrid::yCenters() const {
  std::vector<double> e = bandEdges(*this);
  std::vector<double> out(e.size() - 1);
  for (size_t k = 0; k + 1 < e.size(); ++k) out[k] = 0.5 * (e[k] + e[k + 1]);
  return out;
}

std::vector<double> ConeGrid::yWidths() const {
  std::vector<double> e = bandEdges(*this);
  std::vector<double> out(e.size() - 1);
  for (size_t k = 0; k + 1 < e.size(); ++k) out[k] = e[k + 1] - e[k];
  return out;
}

ConeGrid ConeGrid::forGrid(const GridSpec& g, int refinement) {
  ConeGrid c;
  c.refinement = refinement;
  c.yMin = std::exp2(double(-g.K - 4)) * std::exp2(double(1 - refinement));
  c.yMax = std::exp2(double(g.J + 3));
  return c;
}

}  // namespace ncfa
