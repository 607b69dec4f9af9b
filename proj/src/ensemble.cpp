#include "ncfa/ensemble.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ncfa/dyadic.hpp"

namespace ncfa {

namespace {

Matrix gaussianMatrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

Matrix hermitianGaussian(int d, std::mt19937_64& rng) {
  Matrix g = gaussianMatrix(d, rng);
  return 0.5 * (g + g.adjoint());
}

// drive the plain sequential cell sum to exactly zero: subtract the mean,
// then fold the (ulp-sized) summation residual into the last cell
void exactMeanZero(MatrixField& f) {
  std::int64_t n = f.cellCount();
  Matrix sum = Matrix::Zero(f.dim, f.dim);
  for (std::int64_t i = 0; i < n; ++i) sum += f.value(i);
  Matrix mean = sum / double(n);
  for (std::int64_t i = 0; i < n; ++i) f.value(i) -= mean;
  for (int pass = 0; pass < 4; ++pass) {
    Matrix residual = Matrix::Zero(f.dim, f.dim);
    for (std::int64_t i = 0; i < n; ++i) residual += f.value(i);
    if (residual.isZero(0.0)) return;
    f.value(n - 1) -= residual;
  }
}

MatrixField gaussianStep(const EnsembleSpec& s, std::mt19937_64& rng) {
  MatrixField f(s.grid, s.dim);
  for (Matrix& v : f.values) v = gaussianMatrix(s.dim, rng);
  return f;
}

MatrixField psdStep(const EnsembleSpec& s, std::mt19937_64& rng) {
  MatrixField f(s.grid, s.dim);
  for (Matrix& v : f.values) {
    Matrix g = gaussianMatrix(s.dim, rng);
    v = g.adjoint() * g;
  }
  return f;
}

MatrixField martingale(const EnsembleSpec& s, std::mt19937_64& rng) {
  const GridSpec& g = s.grid;
  MatrixField f(g, s.dim);
  Matrix start = hermitianGaussian(s.dim, rng);
  for (Matrix& v : f.values) v = start;
  // per level, one Hermitian difference per parent atom: +x on the left
  // child, -x on the right, so E_{n-1} d_n = 0 holds exactly
  for (int n = -g.J + 1; n <= g.K; ++n) {
    std::int64_t atomCells = std::int64_t(3) << (g.K - n);  // child size
    std::int64_t parents = g.cellCount() / (2 * atomCells);
    for (std::int64_t p = 0; p < parents; ++p) {
      Matrix x = hermitianGaussian(s.dim, rng);
      double norm = operatorNorm(x);
      if (s.differenceBound == 0.0)
        x.setZero();
      else if (norm > s.differenceBound)
        x *= s.differenceBound / norm;
      std::int64_t base = p * 2 * atomCells;
      for (std::int64_t i = 0; i < atomCells; ++i) {
        f.value(base + i) += x;
        f.value(base + atomCells + i) -= x;
      }
    }
  }
  return f;
}

MatrixField blockConstant(const EnsembleSpec& s, std::mt19937_64& rng) {
  if (s.blockCells < 1) throw std::invalid_argument("ensemble: blockCells < 1");
  MatrixField f(s.grid, s.dim);
  std::int64_t i = 0;
  while (i < f.cellCount()) {
    Matrix v = gaussianMatrix(s.dim, rng);
    for (std::int64_t j = 0; j < s.blockCells && i < f.cellCount(); ++j)
      f.value(i++) = v;
  }
  return f;
}

// entries k * 2^-16 with |k| <= 2^18, constant per 3-cell block; the
// blockwise mean subtraction stays inside exact dyadic arithmetic, so the
// plain cell sum is exactly zero
MatrixField quantizedMeanZero(const EnsembleSpec& s, std::mt19937_64& rng) {
  const GridSpec& g = s.grid;
  std::uniform_int_distribution<std::int64_t> pick(-(std::int64_t(1) << 18),
                                                   (std::int64_t(1) << 18));
  double q = std::exp2(-16.0);
  std::int64_t blocks = g.cellCount() / 3;
  std::vector<Matrix> block(static_cast<size_t>(blocks));
  Matrix sum = Matrix::Zero(s.dim, s.dim);
  for (std::int64_t b = 0; b < blocks; ++b) {
    Matrix v(s.dim, s.dim);
    for (int r = 0; r < s.dim; ++r)
      for (int c = 0; c < s.dim; ++c)
        v(r, c) = Complex(double(pick(rng)) * q, double(pick(rng)) * q);
    block[size_t(b)] = v;
    sum += v;
  }
  Matrix mean = sum / double(blocks);  // blocks is a power of two: exact
  MatrixField f(g, s.dim);
  for (std::int64_t b = 0; b < blocks; ++b) {
    Matrix v = block[size_t(b)] - mean;
    for (int i = 0; i < 3; ++i) f.value(3 * b + i) = v;
  }
  return f;
}

MatrixField atomField(const EnsembleSpec& s, std::mt19937_64& rng) {
  const GridSpec& g = s.grid;
  // random dyadic atom inside W, coarse enough to hold >= 2 blocks
  std::uniform_int_distribution<int> levelPick(-g.J, g.K - 1);
  int n = levelPick(rng);
  std::int64_t atoms = std::int64_t(1) << (g.J + 1 + n);
  std::uniform_int_distribution<std::int64_t> atomPick(0, atoms - 1);
  std::int64_t cells = g.cellCount() / atoms;
  std::int64_t base = atomPick(rng) * cells;

  MatrixField f(g, s.dim);
  Matrix sum = Matrix::Zero(s.dim, s.dim);
  for (std::int64_t i = 0; i < cells; ++i) {
    f.value(base + i) = gaussianMatrix(s.dim, rng);
    sum += f.value(base + i);
  }
  Matrix mean = sum / double(cells);
  for (std::int64_t i = 0; i < cells; ++i) f.value(base + i) -= mean;
  // normalize to equality in the size condition
  double w = g.cellWidthValue();
  Matrix sq = Matrix::Zero(s.dim, s.dim);
  for (std::int64_t i = 0; i < cells; ++i)
    sq += f.value(base + i).adjoint() * f.value(base + i);
  double size = std::sqrt(std::max(0.0, traceReal(sq) * w)) *
                std::sqrt(double(cells) * w);
  if (size > 0.0)
    for (std::int64_t i = 0; i < cells; ++i) f.value(base + i) /= size;
  return f;
}

}  // namespace

std::vector<MatrixField> generateEnsemble(const EnsembleSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("ensembleSize must be >= 1");
  if (spec.dim < 1) throw std::invalid_argument("ensemble: dim < 1");
  std::vector<MatrixField> out;
  out.reserve(size_t(spec.count));
  for (int idx = 0; idx < spec.count; ++idx) {
    std::mt19937_64 rng(spec.seed ^ (0x9E3779B97F4A7C15ULL * std::uint64_t(idx + 1)));
    MatrixField f;
    switch (spec.kind) {
      case EnsembleSpec::Kind::GaussianStep: f = gaussianStep(spec, rng); break;
      case EnsembleSpec::Kind::PsdStep: f = psdStep(spec, rng); break;
      case EnsembleSpec::Kind::Martingale: f = martingale(spec, rng); break;
      case EnsembleSpec::Kind::BlockConstant: f = blockConstant(spec, rng); break;
      case EnsembleSpec::Kind::QuantizedMeanZero: f = quantizedMeanZero(spec, rng); break;
      case EnsembleSpec::Kind::Atom: f = atomField(spec, rng); break;
    }
    if (spec.meanZero && spec.kind != EnsembleSpec::Kind::QuantizedMeanZero &&
        spec.kind != EnsembleSpec::Kind::Atom)
      exactMeanZero(f);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace ncfa
