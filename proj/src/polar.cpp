#include "logpolar/polar.hpp"

#include <cmath>

namespace logpolar {
namespace {

template <typename Scalar>
void require_invertible(const Mat<Scalar>& a, const char* who) {
  require_square(a.rows(), a.cols(), who);
  if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, who);
  if (!(std::abs(a.partialPivLu().determinant()) > 1e-14)) throw Error(ErrorKind::Singular, who);
}

}  // namespace

template <typename Scalar>
PolarDecomposition<Scalar> polar_decompose(const Mat<Scalar>& a) {
  require_invertible(a, "polar_decompose");
  const auto s = svd(a);
  PolarDecomposition<Scalar> out;
  out.up = s.u * s.v.adjoint();
  out.h = sym(Mat<Scalar>(s.v * s.sigma.asDiagonal() * s.v.adjoint()));
  if constexpr (!Eigen::NumTraits<Scalar>::IsComplex) {
    out.improper = a.determinant() < 0.0;
  }
  return out;
}

template <typename Scalar>
Mat<Scalar> right_stretch(const Mat<Scalar>& a) {
  return polar_decompose(a).h;
}

template <typename Scalar>
double nearest_unitary_gap(const Mat<Scalar>& a, Norm which) {
  require_invertible(a, "nearest_unitary_gap");
  // The singular values of sqrt(A*A) - I are |sigma_i - 1|.
  RVec dev = (singular_values(a).array() - 1.0).abs();
  std::sort(dev.data(), dev.data() + dev.size(), std::greater<>());
  return norm_from_singular_values(dev, which);
}

template PolarDecomposition<double> polar_decompose(const RMat&);
template PolarDecomposition<Complex> polar_decompose(const CMat&);
template RMat right_stretch(const RMat&);
template CMat right_stretch(const CMat&);
template double nearest_unitary_gap(const RMat&, Norm);
template double nearest_unitary_gap(const CMat&, Norm);

}  // namespace logpolar
