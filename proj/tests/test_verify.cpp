#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "generators.hpp"
#include "logpolar/verify.hpp"

using namespace logpolar;

namespace {

constexpr double kE = std::numbers::e;

RVec vec(std::initializer_list<double> v) {
  RVec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d;
}

CMat diag(std::initializer_list<double> v) { return vec(v).cast<Complex>().asDiagonal(); }

}  // namespace

TEST_CASE("check_bhatia examples") {
  gen::Source src(601);
  const CMat h = src.hermitian(3);
  for (Norm nm : {Norm::frobenius(), Norm::spectral()}) CHECK(std::abs(check_bhatia(h, nm)) <= 1e-12 * 100);

  CMat nil = CMat::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(check_bhatia(nil, Norm::frobenius()) == doctest::Approx(kE + 1.0 / kE - 3.0).epsilon(1e-13));
  CHECK(check_bhatia(nil, Norm::frobenius()) == doctest::Approx(0.0862).epsilon(1e-3));

  const CMat g = src.complex(3);
  const CMat sk = (g - g.adjoint()) / 2.0;
  CHECK(std::abs(check_bhatia(sk, Norm::frobenius())) <= 1e-12);
  CHECK_THROWS_AS(check_bhatia(CMat(CMat::Identity(2, 2) * 20.0), Norm::frobenius()), Error);
}

TEST_CASE("check_bernstein_trace matches the Frobenius Bhatia slack") {
  CMat nil = CMat::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(check_bernstein_trace(nil) == doctest::Approx(kE + 1.0 / kE - 3.0).epsilon(1e-13));
  gen::Source src(602);
  for (int t = 0; t < 50; ++t) {
    const CMat x = src.scaled(3, 0.1, 3.0);
    CHECK(check_bernstein_trace(x) == doctest::Approx(check_bhatia(x, Norm::frobenius())).epsilon(1e-10));
  }
}

TEST_CASE("check_golden_thompson examples") {
  gen::Source src(603);
  const CMat x = src.hermitian(3);
  CHECK(std::abs(check_golden_thompson(x, CMat::Zero(3, 3))) <= 1e-12);
  const CMat u = src.unitary(3);
  const CMat a = u * diag({0.3, -1.0, 2.0}) * u.adjoint();
  const CMat b = u * diag({1.1, 0.4, -0.7}) * u.adjoint();
  CHECK(std::abs(check_golden_thompson(a, b)) <= 1e-12 * 100);

  const CMat p = diag({1, -1});
  CMat q = CMat::Zero(2, 2);
  q(0, 1) = q(1, 0) = 1.0;
  // tr(e^X e^Y) = 2 cosh(1)^2 and tr e^{X+Y} = 2 cosh(sqrt 2) by hand.
  const double expect = 2 * std::cosh(1.0) * std::cosh(1.0) - 2 * std::cosh(std::sqrt(2.0));
  CHECK(expect > 0);
  CHECK(check_golden_thompson(p, q) == doctest::Approx(expect).epsilon(1e-13));
  CHECK_THROWS_AS(check_golden_thompson(src.complex(2), q), Error);
}

TEST_CASE("check_ssli examples") {
  const auto eq = check_ssli({vec({3, 1, 1.0 / 3}), vec({3, 1, 1.0 / 3})});
  CHECK(eq.hypotheses_hold);
  CHECK(eq.conclusion_slack == doctest::Approx(0.0));

  const auto r = check_ssli({vec({4, 1, 0.25}), vec({2, 2, 0.25})});
  CHECK(r.hypotheses_hold);
  CHECK(r.conclusion_slack == doctest::Approx(2 * std::pow(std::log(2.0), 2)).epsilon(1e-13));

  CHECK_THROWS_AS(check_ssli({vec({1, 2, 3, 4}), vec({1, 2, 3, 4})}), Error);
  CHECK_THROWS_AS(check_ssli({vec({1, -1}), vec({1, 1})}), Error);
}

TEST_CASE("comparison triples satisfy the generator conditions") {
  gen::Source src(604);
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index n = 2 + t % 2;
    const CMat q = src.unitary(n);
    const RVec d = src.log_uniform(n, 1e-2, 1e2);
    ComparisonTriple tri;
    try {
      tri = comparison_triple(q, d);
    } catch (const Error&) {
      continue;
    }
    const auto r = check_ssli(tri);
    CHECK(r.hypotheses_hold);
    CHECK(r.conclusion_slack >= -1e-10 * std::max(1.0, d.array().log().square().sum()));
    CHECK(check_spectral_conditions(tri));
    // Oracle for x: eigenvalues of exp(sym log(Q*D)) through Eigen's matrix functions.
    const CMat l = CMat(q.adjoint() * d.cast<Complex>().asDiagonal()).log();
    Eigen::SelfAdjointEigenSolver<CMat> es((l + l.adjoint()) / 2.0);
    RVec x = es.eigenvalues().array().exp();
    std::sort(x.data(), x.data() + n, std::greater<>());
    CHECK((x - tri.x).norm() <= 1e-8 * x.norm());
    CHECK(std::abs(tri.x.prod() - d.prod()) <= 1e-9 * d.prod());
  }
}

TEST_CASE("check_spectral_conditions examples") {
  CHECK(check_spectral_conditions({vec({2, 1, 0.5}), vec({2, 1, 0.5})}));
  CHECK(check_spectral_conditions({vec({4, 1, 0.25}), vec({2, 1, 0.5})}));
  CHECK_FALSE(check_spectral_conditions({vec({2, 1, 0.5}), vec({4, 1, 0.25})}));
  CHECK_THROWS_AS(check_spectral_conditions({vec({1, 0}), vec({1, 1})}), Error);
}

TEST_CASE("nonuniqueness witnesses") {
  const auto fam = nonuniqueness_spectral_witness(diag({kE, 1}), 42, 21);
  CHECK(fam.reference == doctest::Approx(1.0));
  CHECK(fam.max_deviation <= 1e-9);
  REQUIRE(fam.parameters.size() == 21);
  CHECK(fam.parameters.front() == doctest::Approx(-1.0));
  CHECK(fam.parameters.back() == doctest::Approx(1.0));

  const auto fam3 = nonuniqueness_spectral_witness(diag({kE * kE, kE, 1}), 42, 8);
  CHECK(fam3.reference == doctest::Approx(4.0));
  CHECK(fam3.max_deviation <= 1e-9);
  double spread = 0;
  for (const CMat& q : fam3.members) spread = std::max(spread, (q - CMat::Identity(3, 3)).norm());
  CHECK(spread > 1e-3);

  CHECK_THROWS_AS(nonuniqueness_spectral_witness(CMat(CMat::Identity(2, 2)), 42), Error);

  const auto sym_id = nonuniqueness_sym_witness(CMat::Identity(3, 3), 42, 8);
  CHECK(sym_id.reference_fro <= 1e-20);
  CHECK(sym_id.max_deviation <= 1e-9);
  CHECK(sym_id.multiplicities == std::vector<int>{3});

  const auto sym_d = nonuniqueness_sym_witness(diag({2, 1, 0.5}), 42, 8);
  CHECK(sym_d.multiplicities == std::vector<int>{1, 1, 1});
  CHECK(sym_d.max_deviation <= 1e-9);
}

TEST_CASE("appendix g") {
  CHECK(appendix_g(1 + 1e-6) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(appendix_g(2.0) < appendix_g(1 + 1e-6));
  CHECK(appendix_g(10.0) < appendix_g(2.0));
  CHECK(appendix_g(2.0) == doctest::Approx(std::pow(std::acosh(2.0), 2) / 3.0));
  CHECK_THROWS_AS(appendix_g(1.0), Error);
}

TEST_CASE("suites run clean at small sizes") {
  for (auto name : suite_names()) {
    if (name == "conjecture") continue;
    SuiteOptions opts;
    opts.trials = name == "optimality" || name == "uniqueness" ? 2 : 50;
    const SuiteReport r = run_suite(name, opts);
    INFO(std::string(name));
    CHECK(r.violations == 0);
    CHECK(r.witnesses.empty());
    CHECK(r.trials > 0);
  }
  CHECK_THROWS_AS(run_suite("nope", {}), Error);
}

TEST_CASE("conjecture probe is informational") {
  const SuiteReport r = conjecture_probe_general_norms(1, 3, 42, 2);
  CHECK(r.informational);
  CHECK(r.violations == 0);
  CHECK(r.metrics.size() == 3);
  const SuiteReport one = conjecture_probe_general_norms(2, 1, 42, 2);
  CHECK(one.worst_slack == 0.0);
}

TEST_CASE("suite reports are deterministic") {
  SuiteOptions opts;
  opts.trials = 20;
  opts.seed = 7;
  const auto a = run_suite("bhatia", opts), b = run_suite("bhatia", opts);
  CHECK(a.worst_slack == b.worst_slack);
  CHECK(a.metrics == b.metrics);
}
