#include "ncfa/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace ncfa {

TraceConvention& traceConvention() {
  static TraceConvention conv;
  return conv;
}

Complex traceValue(const Matrix& x) {
  Complex t = x.trace();
  if (traceConvention().normalized && x.rows() > 0) t /= double(x.rows());
  return t;
}

double traceReal(const Matrix& x) { return traceValue(x).real(); }

bool isHermitian(const Matrix& x, double relTol) {
  double scale = x.norm();
  if (scale == 0.0) return true;
  return (x - x.adjoint()).norm() <= relTol * scale;
}

Matrix symmetrize(const Matrix& x, double relTol) {
  if (!isHermitian(x, relTol))
    throw std::invalid_argument("symmetrize: matrix is not Hermitian within tolerance");
  return 0.5 * (x + x.adjoint());
}

RealVector hermitianEigenvalues(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double eigMin(const Matrix& x) {
  if (x.rows() == 1) return x(0, 0).real();
  if (x.rows() == 2) {
    // closed form for 2x2 Hermitian
    double a = x(0, 0).real(), d = x(1, 1).real();
    Complex b = 0.5 * (x(0, 1) + std::conj(x(1, 0)));
    double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    return 0.5 * (a + d) - disc;
  }
  return hermitianEigenvalues(x)(0);
}

double operatorNorm(const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  if (isHermitian(x)) {
    if (x.rows() == 1) return std::abs(x(0, 0).real());
    if (x.rows() == 2) {
      double a = x(0, 0).real(), d = x(1, 1).real();
      Complex b = 0.5 * (x(0, 1) + std::conj(x(1, 0)));
      double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
      return std::max(std::abs(0.5 * (a + d) + disc), std::abs(0.5 * (a + d) - disc));
    }
    RealVector ev = hermitianEigenvalues(x);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  RealVector ev = hermitianEigenvalues(x.adjoint() * x);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

Matrix absPsd(const Matrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("absPsd: non-square input");
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.adjoint() * x);
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix psdPower(const Matrix& a, double r, double tolPsd) {
  if (r < 0) throw std::invalid_argument("psdPower: negative exponent");
  Matrix h = symmetrize(a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector ev = es.eigenvalues();
  double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (ev(0) < -tolPsd * std::max(scale, 1e-300))
    throw std::invalid_argument("psdPower: eigenvalue below psd tolerance");
  RealVector powd(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double lam = std::max(0.0, ev(i));
    powd(i) = (lam == 0.0) ? 0.0 : std::pow(lam, r);
  }
  return es.eigenvectors() * powd.asDiagonal() * es.eigenvectors().adjoint();
}

double schattenNorm(const Matrix& x, double p) {
  if (p < 1.0) throw std::invalid_argument("schattenNorm: p < 1");
  if (std::isinf(p)) return operatorNorm(x);
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.adjoint() * x, Eigen::EigenvaluesOnly);
  RealVector sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
  if (traceConvention().normalized && x.rows() > 0) acc /= double(x.rows());
  return std::pow(acc, 1.0 / p);
}

double loewnerSlack(const Matrix& a, const Matrix& b) {
  return eigMin(0.5 * ((b - a) + (b - a).adjoint()));
}

bool loewnerLeq(const Matrix& a, const Matrix& b, double tol) {
  double scale = std::max(a.norm(), b.norm());
  if (!isHermitian(a, 1e-9) || !isHermitian(b, 1e-9))
    throw std::invalid_argument("loewnerLeq: non-Hermitian input");
  (void)scale;
  return loewnerSlack(a, b) >= -tol;
}

HansenPair hansenTransformBound(const Matrix& a, const Matrix& b, double p) {
  if (p < 1.0) throw std::invalid_argument("hansenTransformBound: p < 1");
  if (operatorNorm(b) > 1.0 + 1e-12)
    throw std::invalid_argument("hansenTransformBound: b is not a contraction");
  HansenPair out;
  out.lhs = b.adjoint() * symmetrize(a) * b;
  out.rhs = psdPower(b.adjoint() * psdPower(a, p) * b, 1.0 / p);
  return out;
}

}  // namespace ncfa
