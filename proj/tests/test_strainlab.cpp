#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "logpolar/matfun.hpp"
#include "logpolar/minimize.hpp"
#include "logpolar/polar.hpp"
#include "logpolar/strainlab.hpp"

using namespace logpolar;

namespace {

RMat diag(std::initializer_list<double> v) {
  RVec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

RMat unit_det(RMat m) { return m / std::cbrt(m.determinant()); }

}  // namespace

TEST_CASE("hill_strain examples") {
  for (double m : {-2.0, 0.0, 0.5, 1.0, 2.0}) CHECK(hill_strain(RMat::Identity(3, 3), {m}).norm() < 1e-15);
  CHECK((hill_strain(diag({2, 1, 1}), {1.0}) - diag({1, 0, 0})).norm() < 1e-14);
  CHECK((hill_strain(diag({2, 1, 1}), {0.0}) - diag({std::log(2.0), 0, 0})).norm() < 1e-14);
  CHECK((hill_strain(diag({2, 1, 1}), {2.0}) - diag({1.5, 0, 0})).norm() < 1e-14);
  CHECK_THROWS_AS(hill_strain(diag({-1, 1, 1}), {0.0}), Error);
}

TEST_CASE("property: Hill strains agree to first order with sym G") {
  gen::Source src(701);
  const double eps = 1e-4;
  for (int t = 0; t < 50; ++t) {
    const RMat g = src.real(3);
    const RMat f = RMat::Identity(3, 3) + eps * g;
    const RMat sg = (g + g.transpose()) / 2.0;
    for (double m : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      CHECK((hill_strain(f, {m}) / eps - sg).norm() <= 1e-6 * 100 * std::max(1.0, g.squaredNorm()));
      CHECK((hill_strain(f, {m}) - eps * sg).norm() <= 10 * eps * eps * std::max(1.0, g.squaredNorm()));
    }
  }
}

TEST_CASE("biot_energy_density examples") {
  CHECK(biot_energy_density(RMat::Identity(3, 3), 1.0, 1.0) == 0.0);
  CHECK(biot_energy_density(diag({2, 1, 1}), 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(biot_energy_density(diag({2, 2, 2}), 0.0, 2.0) == doctest::Approx(9.0));
}

TEST_CASE("tension-compression symmetry only for Hencky") {
  gen::Source src(702);
  for (int t = 0; t < 100; ++t) CHECK(tension_compression_asymmetry(src.gl_plus(3, 20.0), {0.0}) <= 1e-10);
  for (double m : {-2.0, -1.0, 0.5, 1.0, 2.0}) CHECK(tension_compression_asymmetry(diag({2, 1, 1}), {m}) > 1e-3);
  CHECK(tension_compression_asymmetry(diag({2, 1, 1}), {1.0}) == doctest::Approx(0.5));
}

TEST_CASE("procrustes_euclid examples") {
  gen::Source src(703);
  const RMat a = src.gl_plus(3, 10.0);
  CHECK((procrustes_euclid(a, RMat(RMat::Identity(3, 3))) - polar_decompose(a).up).norm() < 1e-12);
  CHECK((procrustes_euclid(a, a) - RMat::Identity(3, 3)).norm() < 1e-10);
  const RMat r = src.rotation(3);
  const RMat b = src.gl_plus(3, 10.0);
  CHECK((procrustes_euclid(RMat(b * r), b) - r).norm() < 1e-10);
  CHECK_THROWS_AS(procrustes_euclid(a, RMat(RMat::Zero(3, 3))), Error);
}

TEST_CASE("property: Euclidean Procrustes beats sampled group elements") {
  gen::Source src(704);
  for (int t = 0; t < 10; ++t) {
    const CMat a = src.complex(3), b = src.complex(3);
    const CMat q = procrustes_euclid(a, b, ProcrustesGroup::U);
    const double best = procrustes_euclid_objective(a, b, q);
    for (int k = 0; k < 1000; ++k) CHECK(procrustes_euclid_objective(a, b, src.unitary(3)) >= best - 1e-10);

    const RMat ra = src.real(3), rb = src.real(3);
    const RMat rq = procrustes_euclid(ra, rb);
    const double rbest = procrustes_euclid_objective(ra.cast<Complex>(), rb.cast<Complex>(), rq.cast<Complex>());
    for (int k = 0; k < 1000; ++k) {
      RMat o = src.rotation(3);
      if (k % 2) o.col(0) *= -1.0;
      CHECK(procrustes_euclid_objective(ra.cast<Complex>(), rb.cast<Complex>(), o.cast<Complex>()) >= rbest - 1e-10);
    }
  }
}

TEST_CASE("procrustes_geodesic examples") {
  gen::Source src(705);
  const RMat b = unit_det(src.gl_plus(3, 10.0));
  CHECK((procrustes_geodesic(b, b) - RMat::Identity(3, 3)).norm() < 1e-10);
  const RMat r = src.rotation(3);
  CHECK((procrustes_geodesic(RMat(b * r), b) - r).norm() < 1e-10);
  CHECK_THROWS_AS(procrustes_geodesic(RMat(2.0 * RMat::Identity(3, 3)), b), Error);
}

TEST_CASE("procrustes_geodesic objective equals the geodesic distance of B^-1 A") {
  gen::Source src(706);
  for (int t = 0; t < 5; ++t) {
    const RMat a = unit_det(src.gl_plus(3, 10.0)), b = unit_det(src.gl_plus(3, 10.0));
    const RMat q = procrustes_geodesic(a, b);
    const RMat m = b.inverse() * a;
    const double expect = singular_values(m).array().log().square().sum();
    CHECK(procrustes_geodesic_objective(a, b, q) == doctest::Approx(expect).epsilon(1e-9));
    WeightedFunctional f;
    SearchConfig cfg;
    cfg.restarts = 16;
    const auto r = minimize_over_rotations(m, f, cfg);
    CHECK(std::abs(r.best_value - expect) <= 1e-6 * std::max(1.0, expect));
  }
}

TEST_CASE("property: geodesic objective is left invariant") {
  gen::Source src(707);
  for (int t = 0; t < 50; ++t) {
    const RMat x = unit_det(src.gl_plus(3, 10.0)), y = unit_det(src.gl_plus(3, 10.0));
    const RMat g = unit_det(src.gl_plus(3, 10.0));
    const RMat q = src.rotation(3);
    double base;
    try {
      base = procrustes_geodesic_objective(x, y, q);
    } catch (const Error&) {
      continue;
    }
    CHECK(std::abs(procrustes_geodesic_objective(RMat(g * x), RMat(g * y), q) - base) <= 1e-8 * std::max(1.0, base));
  }
}

TEST_CASE("geodesic and Euclidean Procrustes solutions differ") {
  const auto w = find_procrustes_witness(42, 200);
  REQUIRE(w.has_value());
  CHECK(w->euclid_loss > 1e-3);
  CHECK(w->geodesic_loss > 1e-3);
  CHECK((w->q_geodesic - w->q_euclid).norm() > 1e-3);
}
