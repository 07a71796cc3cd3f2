#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "logpolar/linalg.hpp"

namespace logpolar {

/// Matrix exponential by scaling and squaring: the argument is scaled until
/// its 1-norm is at most 1/4, a degree-20 Taylor polynomial is evaluated and
/// the result squared back. Throws Overflow when ||X||_F > 50.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& x) {
  using Plain = typename Derived::PlainObject;
  require_square(x.rows(), x.cols(), "expm");
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "expm: non-finite entries");
  const double fro = x.norm();
  if (fro > 50.0) throw Error(ErrorKind::Overflow, "expm: ||X||_F > 50");

  const double one_norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (std::ldexp(one_norm, -squarings) > 0.25) ++squarings;

  const Eigen::Index n = x.rows();
  const Plain y = x * std::ldexp(1.0, -squarings);
  Plain result = Plain::Identity(n, n);
  Plain term = Plain::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = (term * y) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

/// Principal matrix logarithm: the unique logarithm whose eigenvalues have
/// imaginary part in (-pi, pi). Throws Singular when |det M| < 1e-14 and
/// NegativeRealEigenvalue when the spectrum touches (-inf, 0].
CMat logm_principal(const CMat& m);

/// Real overload: real input without eigenvalues on (-inf, 0] has a real
/// principal logarithm.
RMat logm_principal(const RMat& m);

/// Hermitian positive definite helpers evaluated through eigenvalues.
/// Throw NotPositiveDefinite when the smallest eigenvalue is <= 1e-12.
template <typename Scalar>
Mat<Scalar> logm_hpd(const Mat<Scalar>& h);
template <typename Scalar>
Mat<Scalar> powm_hpd(const Mat<Scalar>& h, double exponent);

extern template RMat logm_hpd(const RMat&);
extern template CMat logm_hpd(const CMat&);
extern template RMat powm_hpd(const RMat&, double);
extern template CMat powm_hpd(const CMat&, double);

/// A diagonalization M = S diag(lambda) S^-1 suitable for enumerating
/// logarithms S diag(log lambda_j + 2 pi i k_j) S^-1.
struct LogEigenbasis {
  CMat basis;
  CMat basis_inv;
  CVec eigenvalues;
  CVec principal_logs;   // scalar principal logs, arg in (-pi, pi]
  bool normal = false;   // basis is unitary
  bool repeated = false; // some eigenvalues coincide to 1e-8 relative
  bool touches_negative_axis = false;
  double condition = 1.0;

  /// The logarithm with the given per-eigenvalue 2 pi i shifts.
  CMat materialize(const std::vector<int>& shifts) const;
  CMat materialize_principal() const;
};

/// Throws Singular (|det| < 1e-14) or NotDiagonalizable (eigenvector
/// condition number estimate >= max_condition).
LogEigenbasis log_eigenbasis(const CMat& m, double max_condition = 1e8);

/// One logarithm of a diagonalizable matrix, identified by its shifts.
struct LogBranch {
  CMat principal;
  std::vector<int> shifts;
  CMat basis;
  CMat basis_inv;
  CVec principal_logs;

  CMat materialize() const;
};

/// Enumerates every shift vector with entries in [-shift_range, shift_range].
std::vector<LogBranch> log_branches(const CMat& m, int shift_range);

/// Visits every branch without materializing the list. The callback receives
/// the branch matrix and its shift vector.
void for_each_log_branch(const LogEigenbasis& basis, int shift_range,
                         const std::function<void(const CMat&, const std::vector<int>&)>& visit);

/// Closed-form exponential on traceless 2x2 real matrices.
RMat sl2_exp(const RMat& x);

/// Closed-form principal logarithm on SL(2) with tr S > -2.
RMat sl2_log(const RMat& s);

/// z = a + ib  <->  [[a, b], [-b, a]].
RMat co2_embed(Complex z);
Complex co2_extract(const RMat& m);

/// log|z| + i (arg z + 2 pi k) for k in [-shift_range, shift_range], ordered
/// by k ascending (the principal value sits in the middle).
std::vector<Complex> scalar_log_branches(Complex z, int shift_range);

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace logpolar
