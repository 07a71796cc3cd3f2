#include "logpolar/strainlab.hpp"

#include <algorithm>
#include <cmath>

#include "logpolar/matfun.hpp"
#include "logpolar/minimize.hpp"
#include "logpolar/polar.hpp"
#include "logpolar/random.hpp"

namespace logpolar {
namespace {

void require_gl_plus(const RMat& f, const char* who) {
  if (f.rows() != f.cols() || f.rows() == 0 || !f.allFinite() || !(f.determinant() > 0.0))
    throw Error(ErrorKind::NotRealPositiveDet, who);
}

void require_sl3(const RMat& m, const char* who) {
  if (m.rows() != 3 || m.cols() != 3 || !m.allFinite() || std::abs(m.determinant() - 1.0) > 1e-10)
    throw Error(ErrorKind::NotSpecialLinear, who);
}

RMat random_sl3(Rng& rng) {
  const RMat g = random_gl_plus(rng, 3, 20.0);
  return g / std::cbrt(g.determinant());
}

}  // namespace

RMat hill_strain(const RMat& f, StrainMeasureId id) {
  require_gl_plus(f, "hill_strain");
  if (!std::isfinite(id.m)) throw Error(ErrorKind::InvalidArgument, "hill_strain: m must be finite");
  const RMat c = sym(RMat(f.transpose() * f));
  const double m = id.m;
  // Eigenvalues of C are sigma^2, so U^m = C^(m/2).
  if (m == 0.0) return hermitian_function(c, [](double s) { return 0.5 * std::log(s); });
  return hermitian_function(c, [m](double s) { return std::expm1(0.5 * m * std::log(s)) / m; });
}

double biot_energy_density(const RMat& f, double mu, double lambda) {
  require_gl_plus(f, "biot_energy_density");
  if (!(mu >= 0.0) || !(lambda >= 0.0)) throw Error(ErrorKind::InvalidArgument, "biot: mu, lambda >= 0");
  const RMat e = hill_strain(f, {1.0});
  const double tr = e.trace();
  return mu * e.squaredNorm() + 0.5 * lambda * tr * tr;
}

double tension_compression_asymmetry(const RMat& f, StrainMeasureId id) {
  require_gl_plus(f, "tension_compression_asymmetry");
  const RMat e = hill_strain(f, id);
  const RMat e_inv = hill_strain(RMat(f.inverse()), id);
  double worst = 0.0;
  for (const Norm& n : {Norm::frobenius(), Norm::spectral()})
    worst = std::max(worst, std::abs(norm(e_inv, n) - norm(e, n)));
  return worst;
}

CMat procrustes_euclid(const CMat& a, const CMat& b, ProcrustesGroup group) {
  require_square(a.rows(), a.cols(), "procrustes_euclid");
  if (a.rows() != b.rows() || b.rows() != b.cols())
    throw Error(ErrorKind::NotSquare, "procrustes_euclid: size mismatch");
  if (group == ProcrustesGroup::O && !(is_real(a) && is_real(b)))
    throw Error(ErrorKind::InvalidArgument, "procrustes_euclid: O(n) needs real input");
  return polar_decompose(CMat(b.adjoint() * a)).up;
}

RMat procrustes_euclid(const RMat& a, const RMat& b) {
  require_square(a.rows(), a.cols(), "procrustes_euclid");
  if (a.rows() != b.rows() || b.rows() != b.cols())
    throw Error(ErrorKind::NotSquare, "procrustes_euclid: size mismatch");
  return polar_decompose(RMat(b.transpose() * a)).up;
}

double procrustes_euclid_objective(const CMat& a, const CMat& b, const CMat& q) {
  return (a - b * q).squaredNorm();
}

RMat procrustes_geodesic(const RMat& a, const RMat& b) {
  require_sl3(a, "procrustes_geodesic");
  require_sl3(b, "procrustes_geodesic");
  return polar_decompose(RMat(b.partialPivLu().solve(a))).up;
}

double procrustes_geodesic_objective(const RMat& a, const RMat& b, const RMat& q) {
  require_sl3(a, "procrustes_geodesic_objective");
  require_sl3(b, "procrustes_geodesic_objective");
  const RMat rel = b.partialPivLu().solve(a);
  WeightedFunctional f;
  return eval_functional(CMat(rel.cast<Complex>()), CMat(q.cast<Complex>()), f, 1);
}

std::optional<ProcrustesWitness> find_procrustes_witness(std::uint64_t seed, int trials, double min_gap) {
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    ProcrustesWitness w;
    w.a = random_sl3(rng);
    w.b = random_sl3(rng);
    w.trial = t;
    w.q_geodesic = procrustes_geodesic(w.a, w.b);
    w.q_euclid = procrustes_euclid(w.a, w.b);
    if (w.q_euclid.determinant() < 0.0) continue;
    const CMat a = w.a.cast<Complex>();
    const CMat b = w.b.cast<Complex>();
    w.euclid_loss = procrustes_euclid_objective(a, b, w.q_geodesic.cast<Complex>()) -
                    procrustes_euclid_objective(a, b, w.q_euclid.cast<Complex>());
    try {
      w.geodesic_loss = procrustes_geodesic_objective(w.a, w.b, w.q_euclid) -
                        procrustes_geodesic_objective(w.a, w.b, w.q_geodesic);
    } catch (const Error&) {
      continue;
    }
    if (w.euclid_loss > min_gap && w.geodesic_loss > min_gap) return w;
  }
  return std::nullopt;
}

}  // namespace logpolar
