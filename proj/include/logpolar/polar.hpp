#pragma once

#include "logpolar/linalg.hpp"

namespace logpolar {

/// A = up * h with up unitary and h Hermitian positive definite.
template <typename Scalar>
struct PolarDecomposition {
  Mat<Scalar> up;
  Mat<Scalar> h;
  /// Real input with det A < 0: up lies in O(n) but not SO(n).
  bool improper = false;
};

/// Polar factors from the SVD A = U S V*: up = U V*, h = V S V*.
/// Throws Singular when |det A| <= 1e-14.
template <typename Scalar>
PolarDecomposition<Scalar> polar_decompose(const Mat<Scalar>& a);

/// sqrt(A* A), the Hermitian polar factor.
template <typename Scalar>
Mat<Scalar> right_stretch(const Mat<Scalar>& a);

/// || sqrt(A*A) - I || in the chosen norm, the distance from A to the
/// nearest unitary matrix.
template <typename Scalar>
double nearest_unitary_gap(const Mat<Scalar>& a, Norm which);

extern template PolarDecomposition<double> polar_decompose(const RMat&);
extern template PolarDecomposition<Complex> polar_decompose(const CMat&);
extern template RMat right_stretch(const RMat&);
extern template CMat right_stretch(const CMat&);
extern template double nearest_unitary_gap(const RMat&, Norm);
extern template double nearest_unitary_gap(const CMat&, Norm);

}  // namespace logpolar
