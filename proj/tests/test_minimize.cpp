#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "logpolar/matfun.hpp"
#include "logpolar/minimize.hpp"
#include "logpolar/polar.hpp"

using namespace logpolar;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

RMat diag(std::initializer_list<double> v) {
  RVec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

CMat c(const RMat& m) { return m.cast<Complex>(); }

WeightedFunctional make(Family fam, Part part, Norm nm = Norm::frobenius(), double mu = 1.0, double muc = 0.0) {
  WeightedFunctional f;
  f.family = fam;
  f.part = part;
  f.norm = nm;
  f.mu = mu;
  f.muc = muc;
  return f;
}

double sq(double v) { return v * v; }

// ||log sqrt(A*A)||_F^2 from singular values.
double hencky_sq(const CMat& a) { return singular_values(a).array().log().square().sum(); }

}  // namespace

TEST_CASE("names parse and print") {
  for (auto p : {Part::Full, Part::SymOnly, Part::SkewOnly, Part::SymPlusSkew, Part::DevSym, Part::DevFull})
    CHECK(parse_part(to_string(p)) == p);
  CHECK(parse_family("euclid") == Family::Euclidean);
  CHECK(parse_family("log") == Family::Logarithmic);
  CHECK(parse_group("SO") == Group::SO);
  CHECK(parse_group("U") == Group::U);
  CHECK_FALSE(parse_part("bogus").has_value());
}

TEST_CASE("functional validation") {
  WeightedFunctional f;
  f.mu = -1.0;
  CHECK_THROWS_AS(f.validate(), Error);
  f = make(Family::Logarithmic, Part::SymPlusSkew, Norm::frobenius(), 0.0, 0.0);
  CHECK_THROWS_AS(f.validate(), Error);
}

TEST_CASE("eval_functional examples") {
  const CMat id = CMat::Identity(3, 3);
  for (Family fam : {Family::Euclidean, Family::Logarithmic})
    for (Part p : {Part::Full, Part::SymOnly, Part::SkewOnly, Part::SymPlusSkew, Part::DevSym, Part::DevFull})
      CHECK(eval_functional(id, id, make(fam, p, Norm::frobenius(), 1.0, 1.0), 1) == doctest::Approx(0.0));

  CHECK(eval_functional(c(4.0 * RMat::Identity(3, 3)), id, make(Family::Euclidean, Part::SymOnly), 1) ==
        doctest::Approx(27.0));
  CHECK(eval_functional(c(diag({kE, 1})), CMat::Identity(2, 2), make(Family::Logarithmic, Part::Full, Norm::spectral()),
                        1) == doctest::Approx(1.0));
}

TEST_CASE("eval_functional: weights and parts against hand-built logarithms") {
  gen::Source src(501);
  for (int t = 0; t < 50; ++t) {
    const CMat a = src.gl_complex(3, 5.0);
    const CMat q = src.unitary(3);
    // Branch range 0 is the principal log when it exists.
    CMat l;
    try {
      l = logm_principal(CMat(q.adjoint() * a));
    } catch (const Error&) {
      continue;
    }
    const double mu = src.uni(0.1, 3.0), muc = src.uni(0.0, 3.0);
    CHECK(eval_functional(a, q, make(Family::Logarithmic, Part::SymPlusSkew, Norm::frobenius(), mu, muc), 0) ==
          doctest::Approx(mu * sym(l).squaredNorm() + muc * skew(l).squaredNorm()));
    CHECK(eval_functional(a, q, make(Family::Logarithmic, Part::DevSym, Norm::frobenius(), mu), 0) ==
          doctest::Approx(mu * dev(sym(l)).squaredNorm()));
    CHECK(eval_functional(a, q, make(Family::Logarithmic, Part::SkewOnly, Norm::frobenius(), mu, muc), 0) ==
          doctest::Approx(muc * skew(l).squaredNorm()));
    const CMat y = q.adjoint() * a - CMat::Identity(3, 3);
    CHECK(eval_functional(a, q, make(Family::Euclidean, Part::SymPlusSkew, Norm::frobenius(), mu, muc), 0) ==
          doctest::Approx(mu * sym(y).squaredNorm() + muc * skew(y).squaredNorm()));
    CHECK(eval_functional(a, q, make(Family::Euclidean, Part::DevFull, Norm::frobenius(), mu), 0) ==
          doctest::Approx(mu * dev(y).squaredNorm()));
    // Wider enumeration can only lower the minimum.
    const auto f = make(Family::Logarithmic, Part::Full);
    CHECK(eval_functional(a, q, f, 1) <= eval_functional(a, q, f, 0) + 1e-12);
  }
}

TEST_CASE("eval_functional: branch range 0 without a principal log") {
  try {
    eval_functional(c(diag({-1, -1})), CMat::Identity(2, 2), make(Family::Logarithmic, Part::Full), 0);
    FAIL("expected NegativeRealEigenvalue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRealEigenvalue);
  }
  // Branch range 1 picks log(-1) = +-i pi per eigenvalue.
  CHECK(eval_functional(c(diag({-1, -1})), CMat::Identity(2, 2), make(Family::Logarithmic, Part::Full), 1) ==
        doctest::Approx(2 * kPi * kPi));
}

TEST_CASE("predicted_minimum closed forms") {
  const CMat a = c(diag({4, 1, 0.25}));
  CHECK(predicted_minimum(a, make(Family::Logarithmic, Part::Full)) == doctest::Approx(2 * sq(std::log(4.0))));
  CHECK(predicted_minimum(a, make(Family::Logarithmic, Part::Full, Norm::spectral())) ==
        doctest::Approx(sq(std::log(4.0))));
  CHECK(predicted_minimum(a, make(Family::Logarithmic, Part::SkewOnly, Norm::frobenius(), 1, 1)) == 0.0);
  CHECK(std::isnan(predicted_minimum(a, make(Family::Euclidean, Part::Full))));
}

TEST_CASE("RotationChart maps generators onto the group") {
  gen::Source src(502);
  const RMat w = src.real(3);
  const CMat sk = c(RMat(w - w.transpose()));
  const auto ch = RotationChart::from_generator(Group::SO, sk);
  CHECK(unitary_residual(ch.q) <= 1e-10);
  CHECK(std::abs(ch.q.determinant() - 1.0) <= 1e-10);
  CHECK((ch.q - expm(sk)).norm() <= 1e-12);
  const CMat h = src.hermitian(3);
  const auto cu = RotationChart::from_generator(Group::U, CMat(Complex(0, 1) * h));
  CHECK(unitary_residual(cu.q) <= 1e-10);
  CHECK_THROWS_AS(RotationChart::from_generator(Group::SO, c(w)), Error);
}

TEST_CASE("minimize_over_rotations: diag(2, 1/2) over SO(2)") {
  SearchConfig cfg;
  const auto r = minimize_over_rotations(diag({2, 0.5}), make(Family::Logarithmic, Part::Full), cfg);
  CHECK(r.best_value == doctest::Approx(2 * sq(std::log(2.0))).epsilon(1e-10));
  CHECK((r.best_q - CMat::Identity(2, 2)).norm() <= 1e-5);
  CHECK_FALSE(r.violation);
  CHECK(r.restarts == 32);
  CHECK(r.restart_values.size() == 32);
}

TEST_CASE("minimize_over_rotations: nonclassical Euclidean minimizer for 4 I") {
  SearchConfig cfg;
  const auto r = minimize_over_rotations(RMat(4.0 * RMat::Identity(3, 3)), make(Family::Euclidean, Part::SymOnly), cfg);
  CHECK(r.best_value == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(r.value_at_polar == doctest::Approx(27.0));
  CHECK(r.violation);
  CHECK(std::abs(std::cos(rotation_angle(RMat(r.best_q.real()))) - 0.25) <= 1e-4);
  // Closed form diag(4 cos phi - 1, 4 cos phi - 1, 3) on a grid over the angle.
  double grid_best = 1e300;
  for (int k = 0; k <= 20000; ++k) {
    const double phi = kPi * k / 20000;
    grid_best = std::min(grid_best, 2 * sq(4 * std::cos(phi) - 1) + 9);
  }
  CHECK(r.best_value <= grid_best + 1e-9);
  REQUIRE_FALSE(r.distinct_minimizers.empty());
  for (const CMat& q : r.distinct_minimizers)
    CHECK(std::abs(std::cos(rotation_angle(RMat(q.real()))) - 0.25) <= 1e-3);
}

TEST_CASE("distinct minimizers collapse to the polar factor for distinct singular values") {
  gen::Source src(611);
  for (int t = 0; t < 3; ++t) {
    const CMat a = src.gl_complex(3, 20.0);
    SearchConfig cfg;
    cfg.group = Group::U;
    cfg.restarts = 8;
    cfg.seed = 100 + static_cast<std::uint64_t>(t);
    const auto r = minimize_over_rotations(a, make(Family::Logarithmic, Part::Full), cfg);
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CHECK(r.distinct_minimizers.size() == 1);
    CHECK((r.best_q - svd.matrixU() * svd.matrixV().adjoint()).norm() <= 1e-4);
  }
}

TEST_CASE("minimize_over_rotations: 4 I with the logarithmic sym functional") {
  SearchConfig cfg;
  const auto r = minimize_over_rotations(RMat(4.0 * RMat::Identity(3, 3)), make(Family::Logarithmic, Part::SymOnly), cfg);
  CHECK(r.best_value == doctest::Approx(3 * sq(std::log(4.0))).epsilon(1e-9));
  CHECK(r.gap >= -1e-9);
}

TEST_CASE("minimize_over_rotations: determinism and input checks") {
  gen::Source src(503);
  const RMat a = src.gl_plus(3, 100.0);
  SearchConfig cfg;
  cfg.restarts = 6;
  const auto f = make(Family::Logarithmic, Part::SymOnly);
  const auto r1 = minimize_over_rotations(a, f, cfg);
  const auto r2 = minimize_over_rotations(a, f, cfg);
  CHECK(r1.best_value == r2.best_value);
  CHECK(r1.best_q == r2.best_q);
  CHECK(r1.restart_values == r2.restart_values);
  CHECK(r1.evaluations == r2.evaluations);

  cfg.restarts = 0;
  CHECK_THROWS_AS(minimize_over_rotations(a, f, cfg), Error);
  cfg.restarts = 2;
  CHECK_THROWS_AS(minimize_over_rotations(c(RMat(RMat::Zero(3, 3))), f, cfg), Error);
  CHECK_THROWS_AS(minimize_over_rotations(src.gl_complex(3, 2.0), f, cfg), Error);
}

TEST_CASE("property: logarithmic minimum at the polar factor on random matrices") {
  gen::Source src(504);
  for (int t = 0; t < 6; ++t) {
    const Eigen::Index n = 2 + t % 2;
    const RMat a = src.gl_plus(n, 1e3);
    const double expect = hencky_sq(c(a));
    SearchConfig cfg;
    cfg.seed = 1000 + t;
    for (Part p : {Part::Full, Part::SymOnly}) {
      const auto r = minimize_over_rotations(a, make(Family::Logarithmic, p), cfg);
      CHECK(std::abs(r.best_value - expect) <= 1e-5 * std::max(1.0, expect));
      CHECK(r.gap >= -1e-6);
      CHECK(r.gap <= 1e-4);
      if (p == Part::Full) CHECK((r.best_q - c(polar_decompose(a).up)).norm() <= 1e-3);
    }
  }
}

TEST_CASE("property: spectral logarithmic minimum over U(n)") {
  gen::Source src(505);
  for (int t = 0; t < 4; ++t) {
    const Eigen::Index n = 2 + t;
    const CMat a = src.gl_complex(n, 1e2);
    const RVec s = singular_values(a);
    const double expect = sq(std::max(std::abs(std::log(s(0))), std::abs(std::log(s(n - 1)))));
    SearchConfig cfg;
    cfg.group = Group::U;
    cfg.restarts = 2;
    const auto r = minimize_over_rotations(a, make(Family::Logarithmic, Part::Full, Norm::spectral()), cfg);
    CHECK(std::abs(r.best_value - expect) <= 1e-6 * std::max(1.0, expect));
    CHECK(r.gap >= -1e-6);
  }
}

TEST_CASE("property: Euclidean family with muc >= mu recovers the polar factor") {
  gen::Source src(506);
  for (int t = 0; t < 5; ++t) {
    const RMat a = src.gl_plus(3, 10.0);
    SearchConfig cfg;
    cfg.restarts = 8;
    const auto r = minimize_over_rotations(a, make(Family::Euclidean, Part::SymPlusSkew, Norm::frobenius(), 1.0, 1.5), cfg);
    CHECK((r.best_q - c(polar_decompose(a).up)).norm() <= 1e-3);
  }
}

TEST_CASE("minimize_scalar_theta examples") {
  const auto neg = minimize_scalar_theta(-1.0, make(Family::Logarithmic, Part::Full));
  CHECK(neg.value <= 1e-20);
  CHECK(std::abs(std::remainder(neg.theta - kPi, 2 * kPi)) <= 1e-6);

  const auto four = minimize_scalar_theta(4.0, make(Family::Euclidean, Part::SymOnly));
  CHECK(four.value <= 1e-12);
  REQUIRE(four.minimizers.size() == 2);
  for (double th : four.minimizers) CHECK(std::cos(th) == doctest::Approx(0.25).epsilon(1e-8));

  const auto half = minimize_scalar_theta(0.5, make(Family::Euclidean, Part::SymOnly));
  CHECK(half.value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(half.theta) <= 1e-6);

  // With muc = 0 the sym log functional does not see the angle.
  const auto sym0 = minimize_scalar_theta(std::polar(2.0, 1.0), make(Family::Logarithmic, Part::SymOnly));
  CHECK(sym0.theta_unconstrained);
  CHECK(sym0.value == doctest::Approx(sq(std::log(2.0))));

  CHECK_THROWS_AS(minimize_scalar_theta(0.0, make(Family::Logarithmic, Part::Full)), Error);
}

TEST_CASE("property: scalar and CO(2) matrix minimizations agree") {
  gen::Source src(507);
  for (int t = 0; t < 20; ++t) {
    const Complex z = std::polar(std::exp(src.uni(-2, 2)), src.uni(-kPi, kPi));
    const auto f = make(Family::Logarithmic, Part::Full);
    const auto s = minimize_scalar_theta(z, f);
    CHECK(s.value == doctest::Approx(sq(std::log(std::abs(z)))).epsilon(1e-9));
    SearchConfig cfg;
    cfg.restarts = 4;
    const auto r = minimize_over_rotations(co2_embed(z), f, cfg);
    CHECK(std::abs(0.5 * r.best_value - s.value) <= 1e-8);
    const double theta = std::atan2(r.best_q(0, 1).real(), r.best_q(0, 0).real());
    CHECK(std::abs(std::remainder(theta - s.theta, 2 * kPi)) <= 1e-5);
  }
}

TEST_CASE("minimize_dev3 examples") {
  gen::Source src(508);
  SearchConfig cfg;
  cfg.restarts = 8;
  CHECK(minimize_dev3(src.rotation(3), Part::DevFull, cfg).best_value <= 1e-12);
  CHECK(minimize_dev3(diag({4, 1, 0.25}), Part::DevFull, cfg).best_value ==
        doctest::Approx(2 * sq(std::log(4.0))).epsilon(1e-9));
  CHECK(minimize_dev3(RMat(kE * RMat::Identity(3, 3)), Part::DevSym, cfg).best_value <= 1e-12);
  CHECK_THROWS_AS(minimize_dev3(diag({-1, 1, 1}), Part::DevFull, cfg), Error);
  CHECK_THROWS_AS(minimize_dev3(diag({1, 1, 1}), Part::Full, cfg), Error);
}

TEST_CASE("rotation_angle") {
  RMat r = RMat::Identity(3, 3);
  r.topLeftCorner(2, 2) << std::cos(0.4), -std::sin(0.4), std::sin(0.4), std::cos(0.4);
  CHECK(rotation_angle(r) == doctest::Approx(0.4));
}
