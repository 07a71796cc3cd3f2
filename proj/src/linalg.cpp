#include "logpolar/linalg.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace logpolar {
namespace {

// Largest-magnitude component of each column becomes real positive.
template <typename Scalar>
void fix_column_phases(Mat<Scalar>& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        arg = i;
      }
    }
    if (best <= 0.0) continue;
    const Scalar pivot = v(arg, j);
    if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
      v.col(j) *= std::conj(pivot) / best;
      v(arg, j) = Scalar(best, 0.0);
    } else {
      if (pivot < 0.0) v.col(j) = -v.col(j);
    }
  }
}

template <typename Scalar>
bool is_diagonal(const Mat<Scalar>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Scalar(0)) return false;
  return true;
}

}  // namespace

template <typename Scalar>
HermitianEigen<Scalar> hermitian_eigen(const Mat<Scalar>& m) {
  require_square(m.rows(), m.cols(), "hermitian_eigen");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "hermitian_eigen: non-finite entries");
  if (!is_hermitian(m)) throw Error(ErrorKind::NotHermitian, "hermitian_eigen");
  const auto n = m.rows();

  RVec raw(n);
  Mat<Scalar> vecs;
  if (is_diagonal(m)) {
    for (Eigen::Index i = 0; i < n; ++i) raw(i) = std::real(m(i, i));
    vecs = Mat<Scalar>::Identity(n, n);
  } else {
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> solver(sym(m));
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "hermitian_eigen");
    raw = solver.eigenvalues();
    vecs = solver.eigenvectors();
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw(a) > raw(b); });

  HermitianEigen<Scalar> out{RVec(n), Mat<Scalar>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = raw(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  fix_column_phases(out.vectors);
  return out;
}

template <typename Scalar>
Svd<Scalar> svd(const Mat<Scalar>& m) {
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "svd: non-finite entries");
  Eigen::JacobiSVD<Mat<Scalar>> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "svd");
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

template <typename Scalar>
RVec singular_values(const Mat<Scalar>& m) {
  Eigen::JacobiSVD<Mat<Scalar>> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "singular_values");
  return solver.singularValues();
}

double norm_from_singular_values(const RVec& sigma, Norm which) {
  switch (which.kind) {
    case NormKind::Frobenius: return sigma.norm();
    case NormKind::Spectral: return sigma.size() ? sigma(0) : 0.0;
    case NormKind::KyFan: {
      const auto k = std::clamp<Eigen::Index>(which.k, 1, sigma.size());
      return sigma.head(k).sum();
    }
    case NormKind::Schatten: {
      const double top = sigma.size() ? sigma.maxCoeff() : 0.0;
      if (top == 0.0) return 0.0;
      return top * std::pow((sigma / top).array().pow(which.k).sum(), 1.0 / which.k);
    }
  }
  return 0.0;
}

template <typename Scalar>
double norm(const Mat<Scalar>& m, Norm which) {
  if (which.kind == NormKind::Frobenius) return m.norm();
  return norm_from_singular_values(singular_values(m), which);
}

template <typename Scalar>
Mat<Scalar> hermitian_function(const Mat<Scalar>& h, const std::function<double(double)>& f) {
  const auto eig = hermitian_eigen(h);
  RVec fv = eig.values.unaryExpr(f);
  Mat<Scalar> out = eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
  return sym(out);
}

template HermitianEigen<double> hermitian_eigen(const RMat&);
template HermitianEigen<Complex> hermitian_eigen(const CMat&);
template Svd<double> svd(const RMat&);
template Svd<Complex> svd(const CMat&);
template RVec singular_values(const RMat&);
template RVec singular_values(const CMat&);
template double norm(const RMat&, Norm);
template double norm(const CMat&, Norm);
template RMat hermitian_function(const RMat&, const std::function<double(double)>&);
template CMat hermitian_function(const CMat&, const std::function<double(double)>&);

}  // namespace logpolar
