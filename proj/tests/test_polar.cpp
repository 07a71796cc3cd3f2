#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "logpolar/linalg.hpp"
#include "logpolar/polar.hpp"

using namespace logpolar;

TEST_CASE("polar_decompose examples") {
  const auto id = polar_decompose(RMat(RMat::Identity(3, 3)));
  CHECK((id.up - RMat::Identity(3, 3)).norm() < 1e-15);
  CHECK((id.h - RMat::Identity(3, 3)).norm() < 1e-15);

  const double th = 0.7;
  RMat r(2, 2);
  r << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  const auto pr = polar_decompose(r);
  CHECK((pr.up - r).norm() < 1e-14);
  CHECK((pr.h - RMat::Identity(2, 2)).norm() < 1e-14);

  const auto p4 = polar_decompose(RMat(4.0 * RMat::Identity(3, 3)));
  CHECK((p4.up - RMat::Identity(3, 3)).norm() < 1e-14);
  CHECK((p4.h - 4.0 * RMat::Identity(3, 3)).norm() < 1e-14);
  CHECK_FALSE(p4.improper);
}

TEST_CASE("polar_decompose flags improper real input and rejects singular input") {
  RMat m = RMat::Identity(3, 3);
  m(2, 2) = -2.0;
  const auto p = polar_decompose(m);
  CHECK(p.improper);
  CHECK(p.up.determinant() == doctest::Approx(-1.0));
  CHECK_THROWS_AS(polar_decompose(RMat(RMat::Zero(2, 2))), Error);
}

TEST_CASE("nearest_unitary_gap examples") {
  CHECK(nearest_unitary_gap(RMat(RMat::Identity(2, 2)), Norm::frobenius()) < 1e-15);
  RMat d = RMat::Zero(2, 2);
  d.diagonal() << 2.0, 0.5;
  CHECK(nearest_unitary_gap(d, Norm::frobenius()) == doctest::Approx(std::sqrt(1.25)));
  d.diagonal() << std::numbers::e, 1.0;
  CHECK(nearest_unitary_gap(d, Norm::spectral()) == doctest::Approx(std::numbers::e - 1.0));
}

TEST_CASE("property: polar factors, residuals and H as the positive square root") {
  gen::Source src(301);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const CMat a = src.gl_complex(n, 1e3);
    const auto p = polar_decompose(a);
    CHECK(unitary_residual(p.up) <= 1e-10);
    CHECK(hermitian_residual(p.h) <= 1e-12 * tol_scale(p.h));
    CHECK((p.up * p.h - a).norm() <= 1e-9 * tol_scale(a));
    CHECK((p.h * p.h - a.adjoint() * a).norm() <= 1e-9 * tol_scale(CMat(a.adjoint() * a)));
    CHECK(hermitian_eigen(CMat(sym(p.h))).values.minCoeff() > 0.0);
  }
}

TEST_CASE("property: trace optimality of the polar factor") {
  gen::Source src(302);
  for (int t = 0; t < 100; ++t) {
    const RMat a = src.gl_plus(3, 1e2);
    const RMat up = polar_decompose(a).up;
    const double best = (up.transpose() * a).trace();
    for (int k = 0; k < 10; ++k) CHECK((src.rotation(3).transpose() * a).trace() <= best + 1e-10);

    const CMat c = src.gl_complex(3, 1e2);
    const CMat uc = polar_decompose(c).up;
    const double bc = (uc.adjoint() * c).trace().real();
    for (int k = 0; k < 10; ++k) CHECK((src.unitary(3).adjoint() * c).trace().real() <= bc + 1e-10);
  }
}

TEST_CASE("property: nearest_unitary_gap bounds ||A - Q|| over sampled unitaries") {
  gen::Source src(303);
  for (int t = 0; t < 50; ++t) {
    const CMat a = src.gl_complex(3, 10.0);
    const CMat up = polar_decompose(a).up;
    for (Norm nm : {Norm::frobenius(), Norm::spectral()}) {
      const double gap = nearest_unitary_gap(a, nm);
      CHECK(std::abs(norm(CMat(a - up), nm) - gap) <= 1e-10 * tol_scale(a));
      for (int k = 0; k < 20; ++k) CHECK(norm(CMat(a - src.unitary(3)), nm) >= gap - 1e-10);
    }
  }
}
