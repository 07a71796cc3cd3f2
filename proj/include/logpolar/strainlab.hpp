#pragma once

#include <cstdint>
#include <optional>

#include "logpolar/linalg.hpp"

namespace logpolar {

/// Member of the Hill family selected by its exponent; m = 0 is Hencky.
struct StrainMeasureId {
  double m = 0.0;
};

/// (U^m - I) / m with U = sqrt(F^T F), or log U for m = 0.
/// Throws NotRealPositiveDet unless F is square, real and det F > 0.
RMat hill_strain(const RMat& f, StrainMeasureId id);

/// mu ||U - I||_F^2 + (lambda / 2) (tr(U - I))^2 at a single point.
double biot_energy_density(const RMat& f, double mu, double lambda);

/// | ||a_m(F^-1)|| - ||a_m(F)|| |, the larger of the Frobenius and spectral
/// values; zero for every F exactly when the measure is tension-compression
/// symmetric.
double tension_compression_asymmetry(const RMat& f, StrainMeasureId id);

enum class ProcrustesGroup { O, U };

/// argmin over the group of ||A - B Q||_F: the unitary polar factor of B* A.
/// Throws Singular when B* A is singular and InvalidArgument when the
/// orthogonal group is requested for complex input.
CMat procrustes_euclid(const CMat& a, const CMat& b, ProcrustesGroup group);
RMat procrustes_euclid(const RMat& a, const RMat& b);

/// ||A - B Q||_F^2.
double procrustes_euclid_objective(const CMat& a, const CMat& b, const CMat& q);

/// Geodesic Procrustes on SL(3): the polar factor of B^-1 A. Throws
/// NotSpecialLinear unless det A = det B = 1 to 1e-10.
RMat procrustes_geodesic(const RMat& a, const RMat& b);

/// ||Log(Q^T B^-1 A)||_F^2 minimized over the logarithms of Q^T B^-1 A
/// (shifts |k| <= 1). Its minimum over SO(3) is ||log sqrt(C)||_F^2 with
/// C = (B^-1 A)^T (B^-1 A), the squared geodesic distance of B^-1 A to SO(3).
double procrustes_geodesic_objective(const RMat& a, const RMat& b, const RMat& q);

/// A pair (A, B) in SL(3) whose geodesic and Euclidean Procrustes solutions
/// differ, each losing more than `min_gap` in the other's objective.
struct ProcrustesWitness {
  RMat a, b;
  RMat q_geodesic, q_euclid;
  double euclid_loss = 0.0;    // euclid objective at q_geodesic minus at q_euclid
  double geodesic_loss = 0.0;  // geodesic objective at q_euclid minus at q_geodesic
  int trial = 0;
};

std::optional<ProcrustesWitness> find_procrustes_witness(std::uint64_t seed, int trials,
                                                         double min_gap = 1e-3);

}  // namespace logpolar
