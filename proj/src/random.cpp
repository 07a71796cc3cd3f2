#include "logpolar/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace logpolar {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename Scalar>
Mat<Scalar> q_with_phase_fix(const Mat<Scalar>& g) {
  Eigen::HouseholderQR<Mat<Scalar>> qr(g);
  const auto n = g.rows();
  Mat<Scalar> q = qr.householderQ() * Mat<Scalar>::Identity(n, n);
  const Mat<Scalar>& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

RMat gaussian_real(Rng& rng, Eigen::Index n) {
  RMat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  return g;
}

CMat gaussian_complex(Rng& rng, Eigen::Index n) {
  CMat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  return g;
}

CMat haar_unitary(Rng& rng, Eigen::Index n) { return q_with_phase_fix(gaussian_complex(rng, n)); }

RMat haar_rotation(Rng& rng, Eigen::Index n) {
  RMat q = q_with_phase_fix(gaussian_real(rng, n));
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

RVec log_uniform_descending(Rng& rng, Eigen::Index n, double lo, double hi) {
  RVec d(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(rng.uniform(a, b));
  std::sort(d.data(), d.data() + n, std::greater<>());
  return d;
}

RMat random_gl_plus(Rng& rng, Eigen::Index n, double max_condition) {
  const double half = 0.5 * std::log(max_condition);
  const RVec s = log_uniform_descending(rng, n, std::exp(-half), std::exp(half));
  const RMat r1 = haar_rotation(rng, n);
  const RMat r2 = haar_rotation(rng, n);
  return r1 * s.asDiagonal() * r2;
}

CMat random_gl_complex(Rng& rng, Eigen::Index n, double max_condition) {
  const double half = 0.5 * std::log(max_condition);
  const RVec s = log_uniform_descending(rng, n, std::exp(-half), std::exp(half));
  const CMat u = haar_unitary(rng, n);
  const CMat v = haar_unitary(rng, n);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

RMat scaled_real(Rng& rng, Eigen::Index n, double fro_lo, double fro_hi) {
  RMat g = gaussian_real(rng, n);
  const double target = rng.uniform(fro_lo, fro_hi);
  return g * (target / g.norm());
}

CMat scaled_complex(Rng& rng, Eigen::Index n, double fro_lo, double fro_hi) {
  CMat g = gaussian_complex(rng, n);
  const double target = rng.uniform(fro_lo, fro_hi);
  return g * (target / g.norm());
}

CMat random_hpd(Rng& rng, Eigen::Index n, double log_range) {
  const CMat v = haar_unitary(rng, n);
  CVec d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(rng.uniform(-log_range, log_range));
  CMat p = v * d.asDiagonal() * v.adjoint();
  return 0.5 * (p + p.adjoint());
}

RMat random_spd(Rng& rng, Eigen::Index n, double log_range) {
  const RMat v = haar_rotation(rng, n);
  RVec d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(rng.uniform(-log_range, log_range));
  RMat p = v * d.asDiagonal() * v.transpose();
  return 0.5 * (p + p.transpose());
}

}  // namespace logpolar
