#ifndef NCFA_ENSEMBLE_HPP
#define NCFA_ENSEMBLE_HPP

#include <cstdint>
#include <vector>

#include "ncfa/grid.hpp"

namespace ncfa {

// Seeded generators for the experiment suites.  Deterministic: the same
// spec yields bit-identical fields.
struct EnsembleSpec {
  enum class Kind {
    GaussianStep,       // iid complex Gaussian entries per cell
    PsdStep,            // g* g of a Gaussian step field, cellwise psd
    Martingale,         // dyadic martingale with norm-bounded differences
    BlockConstant,      // Gaussian, constant on blocks of blockCells cells
    QuantizedMeanZero,  // dyadic-rational entries, constant per 3-cell
                        // block, plain cell sum exactly zero
    Atom                // normalized atom on a random dyadic interval
  };

  Kind kind = Kind::GaussianStep;
  GridSpec grid;
  int dim = 2;
  std::uint64_t seed = 0;
  int count = 1;
  bool meanZero = false;      // subtract the window mean (exact cell sum 0)
  double differenceBound = 1.0;  // martingale: operator-norm cap per level
  int blockCells = 16;           // BlockConstant granularity
};

std::vector<MatrixField> generateEnsemble(const EnsembleSpec& spec);

}  // namespace ncfa

#endif
