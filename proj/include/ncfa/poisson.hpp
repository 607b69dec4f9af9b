#ifndef NCFA_POISSON_HPP
#define NCFA_POISSON_HPP

#include <memory>
#include <utility>
#include <vector>

#include "ncfa/grid.hpp"

namespace ncfa {

struct KernelPoint {
  double x = 0.0;
  double y = 0.0;  // > 0
};

struct GradPair {
  Matrix dx;
  Matrix dy;
  // |grad f|^2 = dx* dx + dy* dy, psd by construction.
  Matrix gradSquare() const { return dx.adjoint() * dx + dy.adjoint() * dy; }
};

// P_y(x) = (1/pi) y / (x^2 + y^2).
double poissonKernel(double x, double y);
// (dP_y/dx, dP_y/dy).
std::pair<double, double> gradKernel(double x, double y);
// Conjugate-type kernel -(1/pi) x / (x^2 + y^2); the y-derivative of the
// extension of a step function is a sum of these over its jumps.
double conjKernel(double x, double y);

// Jump matrices of f across the cellCount+1 cell edges, zero extension
// outside W: jump[j] = f(cell j) - f(cell j-1).
std::vector<Matrix> edgeJumps(const MatrixField& f);

// Poisson extension at one point, exact per-cell arctan antiderivatives.
Matrix extend(const MatrixField& f, KernelPoint p);

// Gradient of the extension at one point; exact edge sums:
//   d/dx f(x,y) = sum_j jump_j P_y(x - e_j)
//   d/dy f(x,y) = sum_j jump_j C_y(x - e_j)
GradPair gradientAt(const MatrixField& f, KernelPoint p);

// FFT-backed sampler of the gradient on horizontal slices of the half
// plane.  Columns live on the lattice x_l = lo + (l + 1/2) h with
// h = cellWidth / xRefine, l ranging over Z; samples never land on a cell
// edge.  Construction precomputes the transforms of the jump sequence;
// each slice() costs a handful of FFTs.
class HarmonicSlices {
 public:
  struct Slice {
    double y = 0.0;
    std::int64_t firstColumn = 0;  // lattice index of dx[0]/dy[0]
    std::vector<Matrix> dx;
    std::vector<Matrix> dy;
  };

  // xReach: columns extend that far beyond each end of W.
  HarmonicSlices(const MatrixField& f, double xReach, int xRefine = 1);
  ~HarmonicSlices();
  HarmonicSlices(const HarmonicSlices&) = delete;
  HarmonicSlices& operator=(const HarmonicSlices&) = delete;

  // Gradient samples at height y on all columns within xSpan of W
  // (xSpan <= xReach).
  Slice slice(double y, double xSpan) const;

  double spacing() const;
  std::int64_t columnOfCellCenter(std::int64_t cell) const;
  double columnX(std::int64_t l) const;
  int dim() const;
  const GridSpec& grid() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ncfa

#endif
