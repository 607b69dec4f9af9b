#include "ncfa/atoms.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfa/cone.hpp"
#include "ncfa/squarefn.hpp"

namespace ncfa {

namespace {

// smallest power of two >= s; scaling an atom by its inverse is exact in
// floating point, which keeps the reconstruction sum bitwise stable
double powerOfTwoAtLeast(double s) {
  return std::exp2(std::ceil(std::log2(s)));
}

double supCellNorm(const MatrixField& f) {
  double m = 0.0;
  for (const Matrix& v : f.values) m = std::max(m, operatorNorm(v));
  return m;
}

}  // namespace

AtomCertificate validateAtom(const MatrixField& a, const RatInterval& support,
                             double tol) {
  const GridSpec& g = a.grid;
  if (!g.onGrid(support.lo) && !(support.lo < g.windowLo()))
    throw std::invalid_argument("validateAtom: support must be grid-aligned");
  if (!g.onGrid(support.hi) && !(g.windowHi() < support.hi))
    throw std::invalid_argument("validateAtom: support must be grid-aligned");

  AtomCertificate cert;
  cert.support = support;
  double w = g.cellWidthValue();
  double len = support.length().value();

  bool supportOk = true;
  Matrix sum = Matrix::Zero(a.dim, a.dim);
  Matrix sq = Matrix::Zero(a.dim, a.dim);
  for (std::int64_t i = 0; i < a.cellCount(); ++i) {
    const Matrix& v = a.value(i);
    if (support.contains(g.cellCenter(i))) {
      sum += v;  // plain cell sum: exactly zero for dyadic-valued pieces
      sq += v.adjoint() * v;
    } else if (v.norm() != 0.0) {
      supportOk = false;
    }
  }
  cert.meanNorm = operatorNorm(sum) * w;
  cert.sizeValue = std::sqrt(std::max(0.0, traceReal(sq) * w)) * std::sqrt(len);
  double scale = std::max(1.0, supCellNorm(a) * len);
  cert.valid = supportOk && cert.meanNorm <= tol * scale &&
               cert.sizeValue <= 1.0 + tol;
  return cert;
}

namespace {

// Per-atom means of the standard dyadic filtration, level K down to -J.
// Built from 3-cell block sums so that block-constant dyadic inputs give
// exactly representable means (divisions are by powers of two only).
struct AtomMeans {
  // means[m][a]: level n = K - m, atom a counted from windowLo
  std::vector<std::vector<Matrix>> means;

  AtomMeans(const MatrixField& f) {
    const GridSpec& g = f.grid;
    std::int64_t blocks = g.cellCount() / 3;
    std::vector<Matrix> level(static_cast<size_t>(blocks));
    for (std::int64_t b = 0; b < blocks; ++b) {
      const Matrix &v0 = f.value(3 * b), &v1 = f.value(3 * b + 1),
                   &v2 = f.value(3 * b + 2);
      if ((v1 - v0).norm() == 0.0 && (v2 - v0).norm() == 0.0)
        level[size_t(b)] = v0;
      else
        level[size_t(b)] = (v0 + v1 + v2) / 3.0;
    }
    means.push_back(level);
    while (level.size() > 2) {
      std::vector<Matrix> up(level.size() / 2);
      for (size_t a = 0; a < up.size(); ++a)
        up[a] = 0.5 * (level[2 * a] + level[2 * a + 1]);
      means.push_back(up);
      level = std::move(up);
    }
  }
};

}  // namespace

Decomposition decompose(const MatrixField& f) {
  const GridSpec& g = f.grid;
  double w = g.cellWidthValue();

  Matrix total = Matrix::Zero(f.dim, f.dim);
  for (const Matrix& v : f.values) total += v;
  double scale = std::max(1.0, supCellNorm(f));
  if (operatorNorm(total) * w > 1e-9 * scale)
    throw std::invalid_argument("decompose: field must have zero mean over W");

  Decomposition dec;
  auto emit = [&](MatrixField piece, const RatInterval& support) {
    double len = support.length().value();
    Matrix sq = Matrix::Zero(f.dim, f.dim);
    for (const Matrix& v : piece.values) sq += v.adjoint() * v;
    double s = std::sqrt(std::max(0.0, traceReal(sq) * w)) * std::sqrt(len);
    if (s == 0.0) return;
    double lambda = powerOfTwoAtLeast(s);
    AtomTerm term;
    term.coefficient = lambda;
    term.support = support;
    term.atom = piece.scaled(1.0 / lambda);
    term.certificate = validateAtom(term.atom, support);
    dec.coefficientL1 += lambda;
    dec.terms.push_back(std::move(term));
  };

  // fast path: f is already a valid atom on its minimal support
  {
    std::int64_t lo = -1, hi = -1;
    for (std::int64_t i = 0; i < g.cellCount(); ++i)
      if (f.value(i).norm() != 0.0) {
        if (lo < 0) lo = i;
        hi = i;
      }
    if (lo < 0) return dec;  // zero field
    RatInterval I(g.cellInterval(lo).lo, g.cellInterval(hi).hi);
    AtomCertificate cert = validateAtom(f, I);
    if (cert.valid) {
      AtomTerm term;
      term.coefficient = 1.0;
      term.support = I;
      term.atom = f;
      term.certificate = cert;
      dec.coefficientL1 = 1.0;
      dec.terms.push_back(std::move(term));
      return dec;
    }
  }

  AtomMeans mm(f);
  std::int64_t blocks = g.cellCount() / 3;

  // coarse piece: E(f | D_{-J}) on the two halves of W, supported in the
  // shifted atom that covers W whole (D atoms never straddle 0)
  {
    const std::vector<Matrix>& top = mm.means.back();
    MatrixField a0(g, f.dim);
    for (std::int64_t i = 0; i < g.cellCount(); ++i)
      a0.value(i) = top[size_t(2 * i / g.cellCount())];
    emit(std::move(a0), cover(g.window()).interval);
  }

  // martingale differences split per parent atom, levels -J+1 .. K
  for (size_t m = mm.means.size() - 1; m >= 1; --m) {
    const std::vector<Matrix>& parent = mm.means[m];
    const std::vector<Matrix>& child = mm.means[m - 1];
    std::int64_t cellsPerChild = 3 * (blocks / std::int64_t(child.size()));
    for (size_t a = 0; a < parent.size(); ++a) {
      Matrix dLeft = child[2 * a] - parent[a];
      Matrix dRight = child[2 * a + 1] - parent[a];
      if (dLeft.norm() == 0.0 && dRight.norm() == 0.0) continue;
      MatrixField piece(g, f.dim);
      std::int64_t base = std::int64_t(a) * 2 * cellsPerChild;
      for (std::int64_t i = 0; i < cellsPerChild; ++i) {
        piece.value(base + i) = dLeft;
        piece.value(base + cellsPerChild + i) = dRight;
      }
      RatInterval support(g.cellInterval(base).lo,
                          g.cellInterval(base + 2 * cellsPerChild - 1).hi);
      emit(std::move(piece), support);
    }
  }

  // residual below the finest dyadic level, one piece per 3-cell atom
  for (std::int64_t b = 0; b < blocks; ++b) {
    const Matrix& mean = mm.means.front()[size_t(b)];
    bool flat = true;
    for (int i = 0; i < 3; ++i)
      if ((f.value(3 * b + i) - mean).norm() != 0.0) flat = false;
    if (flat) continue;
    MatrixField piece(g, f.dim);
    for (int i = 0; i < 3; ++i) piece.value(3 * b + i) = f.value(3 * b + i) - mean;
    RatInterval support(g.cellInterval(3 * b).lo, g.cellInterval(3 * b + 2).hi);
    emit(std::move(piece), support);
  }

  return dec;
}

MatrixField reconstruct(const Decomposition& dec, const GridSpec& g, int dim) {
  MatrixField out(g, dim);
  for (const AtomTerm& t : dec.terms)
    for (std::int64_t i = 0; i < out.cellCount(); ++i)
      out.value(i) += t.coefficient * t.atom.value(i);
  return out;
}

double atomHardyNorm(const MatrixField& a) {
  return hardyNorm(a, 1.0, Side::c, ConeGrid::forGrid(a.grid));
}

}  // namespace ncfa
