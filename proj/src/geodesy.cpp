#include "logpolar/geodesy.hpp"

#include <cmath>

#include "logpolar/matfun.hpp"
#include "logpolar/random.hpp"

namespace logpolar {
namespace {

void require_real_positive_det(const RMat& f, const char* who) {
  if (f.rows() != f.cols() || f.rows() == 0 || !f.allFinite())
    throw Error(ErrorKind::NotRealPositiveDet, who);
  if (!(f.determinant() > 0.0)) throw Error(ErrorKind::NotRealPositiveDet, who);
}

RVec posdef_eigenvalues(const CMat& p, const char* who) {
  if (p.rows() != p.cols() || p.rows() == 0 || !is_hermitian(p))
    throw Error(ErrorKind::NotPositiveDefinite, who);
  const auto eig = hermitian_eigen(p);
  if (!(eig.values.minCoeff() > 1e-12)) throw Error(ErrorKind::NotPositiveDefinite, who);
  return eig.values;
}

double log_sum_of_squares(const RVec& positive) {
  return std::sqrt(positive.array().log().square().sum());
}

void require_orthogonal(const RMat& q, const char* who) {
  if (q.rows() != q.cols() || q.rows() == 0 || unitary_residual(q) > 1e-10)
    throw Error(ErrorKind::NotOrthogonal, who);
}

}  // namespace

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::EuclidToRotations: return "euclid-so";
    case DistanceKind::GeoPosDef: return "geo-pd";
    case DistanceKind::LogEuclidPosDef: return "logeuclid-pd";
    case DistanceKind::GeoSpecialOrthogonal: return "geo-so";
    case DistanceKind::OneParamPseudo: return "pseudo";
    case DistanceKind::ScalarDSharp: return "dsharp";
    case DistanceKind::GeodesicStrain: return "geodesic-strain";
  }
  return "?";
}

std::optional<DistanceKind> parse_distance_kind(std::string_view name) {
  for (auto kind : {DistanceKind::EuclidToRotations, DistanceKind::GeoPosDef,
                    DistanceKind::LogEuclidPosDef, DistanceKind::GeoSpecialOrthogonal,
                    DistanceKind::OneParamPseudo, DistanceKind::ScalarDSharp,
                    DistanceKind::GeodesicStrain})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

double dist_euclid_to_rotations(const RMat& f) {
  require_real_positive_det(f, "dist_euclid_to_rotations");
  return (singular_values(f).array() - 1.0).matrix().norm();
}

double dist_geo_posdef(const CMat& p1, const CMat& p2) {
  posdef_eigenvalues(p1, "dist_geo_posdef");
  posdef_eigenvalues(p2, "dist_geo_posdef");
  const CMat w = powm_hpd(p1, -0.5);
  const CMat m = sym(CMat(w * p2 * w));
  return log_sum_of_squares(posdef_eigenvalues(m, "dist_geo_posdef"));
}

double dist_logeuclid_posdef(const CMat& p1, const CMat& p2) {
  posdef_eigenvalues(p1, "dist_logeuclid_posdef");
  posdef_eigenvalues(p2, "dist_logeuclid_posdef");
  return (logm_hpd(p2) - logm_hpd(p1)).norm();
}

double dist_geo_so(const RMat& q1, const RMat& q2) {
  require_orthogonal(q1, "dist_geo_so");
  require_orthogonal(q2, "dist_geo_so");
  if (q1.rows() != q2.rows()) throw Error(ErrorKind::NotSquare, "dist_geo_so: size mismatch");
  const RMat r = q1.transpose() * q2;
  Eigen::EigenSolver<RMat> es(r, false);
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    if (std::abs(es.eigenvalues()(i) + 1.0) <= 1e-10)
      throw Error(ErrorKind::AntipodalSpectrum, "dist_geo_so: -1 in spec(Q1^T Q2)");
  return logm_principal(r).norm();
}

double pseudo_dist_one_param(const CMat& x, const CMat& y, const std::vector<int>& shifts) {
  require_square(x.rows(), x.cols(), "pseudo_dist_one_param");
  if (x.rows() != y.rows() || y.rows() != y.cols())
    throw Error(ErrorKind::NotSquare, "pseudo_dist_one_param: size mismatch");
  if (!(std::abs(x.partialPivLu().determinant()) > 1e-14))
    throw Error(ErrorKind::Singular, "pseudo_dist_one_param");
  const CMat rel = x.partialPivLu().solve(y);
  const LogEigenbasis eb = log_eigenbasis(rel);
  if (shifts.empty()) return eb.materialize_principal().norm();
  if (static_cast<Eigen::Index>(shifts.size()) != rel.rows())
    throw Error(ErrorKind::InvalidArgument, "pseudo_dist_one_param: shift vector length");
  return eb.materialize(shifts).norm();
}

double scalar_dsharp_dist(Complex z1, Complex z2) {
  const double radius = std::numbers::sqrt2 - 1.0;
  if (!(std::abs(z1 - 1.0) < radius) || !(std::abs(z2 - 1.0) < radius))
    throw Error(ErrorKind::OutsideDSharp, "scalar_dsharp_dist");
  return std::abs(std::log(z2 / z1));
}

double geodesic_strain_distance(const RMat& f) {
  require_real_positive_det(f, "geodesic_strain_distance");
  return log_sum_of_squares(singular_values(f));
}

std::optional<TriangleWitness> find_pseudo_triangle_violation(std::uint64_t seed, int trials,
                                                              double margin) {
  auto draw = [](Rng& rng) {
    RMat x(2, 2);
    x << rng.normal(), rng.normal(), rng.normal(), -0.0;
    x(1, 1) = -x(0, 0);
    x *= rng.uniform(0.1, 2.5) / x.norm();
    return CMat(sl2_exp(x).cast<Complex>());
  };
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    TriangleWitness w{draw(rng), draw(rng), draw(rng)};
    try {
      w.d_xz = pseudo_dist_one_param(w.x, w.z);
      w.d_xy = pseudo_dist_one_param(w.x, w.y);
      w.d_yz = pseudo_dist_one_param(w.y, w.z);
    } catch (const Error&) {
      continue;
    }
    if (w.d_xz > w.d_xy + w.d_yz + margin) {
      w.seed = seed;
      w.trial = t;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<PosDefPairWitness> find_logeuclid_gap(std::uint64_t seed, int trials, Eigen::Index n,
                                                    double min_gap) {
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    PosDefPairWitness w{random_hpd(rng, n, 1.5), random_hpd(rng, n, 1.5)};
    w.geo = dist_geo_posdef(w.p1, w.p2);
    w.log_euclid = dist_logeuclid_posdef(w.p1, w.p2);
    if (std::abs(w.geo - w.log_euclid) > min_gap) return w;
  }
  return std::nullopt;
}

}  // namespace logpolar
