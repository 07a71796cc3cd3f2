#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "logpolar/linalg.hpp"

namespace logpolar {

enum class DistanceKind {
  EuclidToRotations,
  GeoPosDef,
  LogEuclidPosDef,
  GeoSpecialOrthogonal,
  OneParamPseudo,
  ScalarDSharp,
  GeodesicStrain,
};

std::string_view to_string(DistanceKind kind);
std::optional<DistanceKind> parse_distance_kind(std::string_view name);

/// True for distances that are not metrics (no triangle inequality).
constexpr bool is_pseudo(DistanceKind kind) { return kind == DistanceKind::OneParamPseudo; }

/// || sqrt(F^T F) - I ||_F for real F with det F > 0.
double dist_euclid_to_rotations(const RMat& f);

/// || log(P1^-1/2 P2 P1^-1/2) ||_F on Hermitian positive definite matrices.
double dist_geo_posdef(const CMat& p1, const CMat& p2);

/// Log-Euclidean distance || log P2 - log P1 ||_F.
double dist_logeuclid_posdef(const CMat& p1, const CMat& p2);

/// || log(Q1^-1 Q2) ||_F on SO(n). Throws AntipodalSpectrum when an
/// eigenvalue of Q1^T Q2 lies within 1e-10 of -1.
double dist_geo_so(const RMat& q1, const RMat& q2);

/// PSEUDO-distance || Log(X^-1 Y) ||_F for the logarithm selected by `shifts`
/// (empty = all zero, the principal branch). It is not a metric: it can
/// violate the triangle inequality.
double pseudo_dist_one_param(const CMat& x, const CMat& y, const std::vector<int>& shifts = {});

/// |log(z1^-1 z2)| on the disc |z - 1| < sqrt(2) - 1.
double scalar_dsharp_dist(Complex z1, Complex z2);

/// || log sqrt(F^T F) ||_F, the geodesic distance from F to SO(n).
double geodesic_strain_distance(const RMat& f);

/// Three matrices with d(X, Z) > d(X, Y) + d(Y, Z) + margin for the principal
/// one-parameter pseudo-distance.
struct TriangleWitness {
  CMat x, y, z;
  double d_xz = 0.0;
  double d_xy = 0.0;
  double d_yz = 0.0;
  std::uint64_t seed = 0;
  int trial = 0;
};

/// Randomized search in SL(2). Returns nullopt when no violation is found
/// within the budget (an inconclusive outcome, not a refutation).
std::optional<TriangleWitness> find_pseudo_triangle_violation(std::uint64_t seed, int trials,
                                                              double margin = 1e-6);

struct PosDefPairWitness {
  CMat p1, p2;
  double geo = 0.0;
  double log_euclid = 0.0;
};

/// Randomized search for a pair where the geodesic and log-Euclidean
/// distances differ by more than `min_gap`.
std::optional<PosDefPairWitness> find_logeuclid_gap(std::uint64_t seed, int trials, Eigen::Index n,
                                                    double min_gap = 1e-3);

}  // namespace logpolar
