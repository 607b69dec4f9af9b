#ifndef NCFA_MATRIX_HPP
#define NCFA_MATRIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <limits>

namespace ncfa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

constexpr double kDefaultPsdTol = 1e-10;      // relative to operator norm
constexpr double kHermitianDriftTol = 1e-12;  // relative

// Finite-dimensional operator algebra M = M_d(C) with its standard
// (unnormalized) trace.  The normalized trace tr/d can be switched on
// globally; it only rescales trace-based quantities.
struct TraceConvention {
  bool normalized = false;
};
TraceConvention& traceConvention();

// tau(x), honoring the active trace convention.
double traceReal(const Matrix& x);
Complex traceValue(const Matrix& x);

bool isHermitian(const Matrix& x, double relTol = kHermitianDriftTol);

// (x + x*)/2.  Throws if the anti-Hermitian part exceeds relTol relatively.
Matrix symmetrize(const Matrix& x, double relTol = kHermitianDriftTol);

// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitianEigenvalues(const Matrix& x);

// Smallest eigenvalue of the Hermitian matrix x.
double eigMin(const Matrix& x);
// Operator norm (largest singular value) of a general matrix.
double operatorNorm(const Matrix& x);

// |x| = (x* x)^{1/2} via Hermitian eigendecomposition.
Matrix absPsd(const Matrix& x);

// Eigenvalue-wise power of a psd matrix; 0^r := 0. Requires r >= 0 and all
// eigenvalues >= -tolPsd * ||a||; negative eigenvalues within tolerance are
// clamped to zero.
Matrix psdPower(const Matrix& a, double r, double tolPsd = kDefaultPsdTol);

// (tr |x|^p)^{1/p}; p = infinity gives the operator norm.
double schattenNorm(const Matrix& x, double p);

// a <= b in the Loewner order, up to eigen-slack tol.
bool loewnerLeq(const Matrix& a, const Matrix& b, double tol);
// eigmin(b - a): >= -tol means a <= b holds with slack tol.
double loewnerSlack(const Matrix& a, const Matrix& b);

// Hansen pair (b* a b, (b* a^p b)^{1/p}) for a contraction b and psd a.
// The first component is <= the second in the Loewner order.
struct HansenPair {
  Matrix lhs;
  Matrix rhs;
};
HansenPair hansenTransformBound(const Matrix& a, const Matrix& b, double p);

}  // namespace ncfa

#endif
