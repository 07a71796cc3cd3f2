#pragma once

#include <algorithm>
#include <functional>

#include "logpolar/types.hpp"

namespace logpolar {

/// Eigenpairs of a Hermitian matrix, values sorted descending.
template <typename Scalar>
struct HermitianEigen {
  RVec values;
  Mat<Scalar> vectors;
};

/// M = U diag(sigma) V*, sigma sorted descending.
template <typename Scalar>
struct Svd {
  Mat<Scalar> u;
  RVec sigma;
  Mat<Scalar> v;
};

/// Scale used for relative tolerances: max(1, ||M||_F).
template <typename Derived>
double tol_scale(const Eigen::MatrixBase<Derived>& m) {
  return std::max(1.0, m.norm());
}

template <typename Derived>
auto sym(const Eigen::MatrixBase<Derived>& x) {
  return (0.5 * (x + x.adjoint())).eval();
}

template <typename Derived>
auto skew(const Eigen::MatrixBase<Derived>& x) {
  return (0.5 * (x - x.adjoint())).eval();
}

/// Orthogonal projection onto trace-free matrices: M - (tr M / n) I.
template <typename Derived>
auto dev(const Eigen::MatrixBase<Derived>& m) {
  require_square(m.rows(), m.cols(), "dev");
  using Plain = typename Derived::PlainObject;
  const auto n = m.rows();
  Plain out = m;
  const auto shift = m.trace() / static_cast<double>(n);
  out.diagonal().array() -= shift;
  return out;
}

template <typename Derived>
double hermitian_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Derived>
double unitary_residual(const Eigen::MatrixBase<Derived>& q) {
  using Plain = typename Derived::PlainObject;
  return (q.adjoint() * q - Plain::Identity(q.rows(), q.cols())).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-12) {
  return m.rows() == m.cols() && hermitian_residual(m) <= rel_tol * tol_scale(m);
}

/// Throws NotHermitian unless ||M - M*||_F <= 1e-12 max(1, ||M||_F).
/// Throws NoConvergence if the eigensolver fails.
template <typename Scalar>
HermitianEigen<Scalar> hermitian_eigen(const Mat<Scalar>& m);

template <typename Scalar>
Svd<Scalar> svd(const Mat<Scalar>& m);

template <typename Scalar>
RVec singular_values(const Mat<Scalar>& m);

template <typename Scalar>
double norm(const Mat<Scalar>& m, Norm which);

/// Norm of a matrix whose singular values are already known.
double norm_from_singular_values(const RVec& sigma, Norm which);

/// V f(diag) V* for Hermitian H; f is applied to each eigenvalue.
template <typename Scalar>
Mat<Scalar> hermitian_function(const Mat<Scalar>& h, const std::function<double(double)>& f);

extern template HermitianEigen<double> hermitian_eigen(const RMat&);
extern template HermitianEigen<Complex> hermitian_eigen(const CMat&);
extern template Svd<double> svd(const RMat&);
extern template Svd<Complex> svd(const CMat&);
extern template RVec singular_values(const RMat&);
extern template RVec singular_values(const CMat&);
extern template double norm(const RMat&, Norm);
extern template double norm(const CMat&, Norm);
extern template RMat hermitian_function(const RMat&, const std::function<double(double)>&);
extern template CMat hermitian_function(const CMat&, const std::function<double(double)>&);

}  // namespace logpolar
