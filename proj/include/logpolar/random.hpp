#pragma once

#include <cstdint>
#include <random>

#include "logpolar/types.hpp"

namespace logpolar {

/// Seeded random source. Uniform and Gaussian draws are computed from raw
/// 64-bit engine output so streams replay bit-exactly for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, index), used to split work across
  /// restarts and trials without depending on execution order.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  double uniform();                  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  Complex complex_normal();          // E|z|^2 = 1
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

RMat gaussian_real(Rng& rng, Eigen::Index n);
CMat gaussian_complex(Rng& rng, Eigen::Index n);

/// Haar-distributed U(n) and SO(n) elements (QR of a Gaussian matrix with the
/// diagonal phase of R removed).
CMat haar_unitary(Rng& rng, Eigen::Index n);
RMat haar_rotation(Rng& rng, Eigen::Index n);

/// R1 diag(s) R2 with R1, R2 Haar in SO(n) and log s uniform, so that
/// s_max / s_min <= max_condition.
RMat random_gl_plus(Rng& rng, Eigen::Index n, double max_condition);

/// U diag(s) V* with Haar U, V and the same singular value law.
CMat random_gl_complex(Rng& rng, Eigen::Index n, double max_condition);

/// Positive diagonal entries drawn log-uniform in [lo, hi], sorted descending.
RVec log_uniform_descending(Rng& rng, Eigen::Index n, double lo, double hi);

/// Gaussian matrix rescaled so that ||X||_F is uniform in [fro_lo, fro_hi].
RMat scaled_real(Rng& rng, Eigen::Index n, double fro_lo, double fro_hi);
CMat scaled_complex(Rng& rng, Eigen::Index n, double fro_lo, double fro_hi);

/// Random Hermitian positive definite matrix V diag(exp(l)) V* with l uniform
/// in [-log_range, log_range].
CMat random_hpd(Rng& rng, Eigen::Index n, double log_range);
RMat random_spd(Rng& rng, Eigen::Index n, double log_range);

}  // namespace logpolar
