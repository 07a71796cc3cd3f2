#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "logpolar/types.hpp"

// Test-side generators, independent of the library's random module.
namespace gen {

using logpolar::CMat;
using logpolar::Complex;
using logpolar::RMat;
using logpolar::RVec;

struct Source {
  explicit Source(std::uint64_t seed) : eng(seed) {}

  double uni(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
  Complex cgauss() { return {gauss(), gauss()}; }

  RMat real(Eigen::Index n) {
    RMat m(n, n);
    for (auto& v : m.reshaped()) v = gauss();
    return m;
  }
  CMat complex(Eigen::Index n) {
    CMat m(n, n);
    for (auto& v : m.reshaped()) v = cgauss();
    return m;
  }
  CMat hermitian(Eigen::Index n) {
    const CMat g = complex(n);
    return (g + g.adjoint()) / 2.0;
  }

  // Frobenius norm drawn uniformly in [lo, hi].
  CMat scaled(Eigen::Index n, double lo, double hi) {
    CMat m = complex(n);
    return m * (uni(lo, hi) / m.norm());
  }

  CMat unitary(Eigen::Index n) {
    Eigen::HouseholderQR<CMat> qr(complex(n));
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return q;
  }

  RMat rotation(Eigen::Index n) {
    Eigen::HouseholderQR<RMat> qr(real(n));
    RMat q = qr.householderQ();
    const RMat r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
  }

  // Descending values, log-uniform in [lo, hi].
  RVec log_uniform(Eigen::Index n, double lo, double hi) {
    RVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(uni(std::log(lo), std::log(hi)));
    std::sort(d.data(), d.data() + n, std::greater<>());
    return d;
  }

  // R diag(s) S^T with rotations R, S and singular values inside [1, cond].
  RMat gl_plus(Eigen::Index n, double cond) {
    RVec s = log_uniform(n, 1.0, cond);
    return rotation(n) * s.asDiagonal() * rotation(n).transpose();
  }
  CMat gl_complex(Eigen::Index n, double cond) {
    RVec s = log_uniform(n, 1.0, cond);
    return unitary(n) * s.cast<Complex>().asDiagonal() * unitary(n).adjoint();
  }

  RMat spd(Eigen::Index n, double log_range) {
    RVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(uni(-log_range, log_range));
    const RMat q = rotation(n);
    return q * d.asDiagonal() * q.transpose();
  }
  CMat hpd(Eigen::Index n, double log_range) {
    RVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(uni(-log_range, log_range));
    const CMat q = unitary(n);
    return q * d.cast<Complex>().asDiagonal() * q.adjoint();
  }

  std::mt19937_64 eng;
};

}  // namespace gen
