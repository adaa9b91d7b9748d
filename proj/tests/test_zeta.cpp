#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symzeta/errors.hpp"
#include "symzeta/exactnum.hpp"
#include "symzeta/zeta.hpp"

using namespace symzeta;
using std::numbers::pi;

TEST_CASE("riemann zeta through regularized sums") {
  CHECK(std::abs(riemann_zeta_reg(2.0).value - pi * pi / 6) < 1e-13);
  CHECK(std::abs(riemann_zeta_reg(-1.0).value + 1.0 / 12) < 1e-10);
  CHECK(std::abs(riemann_zeta_reg(0.0).value + 0.5) < 1e-10);
  CHECK(std::abs(riemann_zeta_reg(0.5).value - (-1.4603545088095868)) < 1e-10);
  const auto pole = riemann_zeta_reg(1.0);
  CHECK(pole.is_pole);
  CHECK(std::abs(pole.residue_in_z - 1.0) < 1e-8);
}

TEST_CASE("hurwitz zeta at negative integers") {
  for (int k = 0; k <= 4; ++k)
    for (double p : {0.5, 1.0, 3.0}) {
      const double expected = -bernoulli_poly(k + 1, Rational(p)).get_d() / (k + 1);
      CHECK(std::abs(hurwitz_zeta_reg(-static_cast<double>(k), p).value - expected) < 1e-9);
    }
  CHECK(std::abs(hurwitz_zeta_reg(3.0, 2.0).value - (1.2020569031595943 - 1)) < 1e-12);
  CHECK_THROWS_AS(hurwitz_zeta_reg(2.0, -1.0), PreconditionError);
}

TEST_CASE("epstein zeta of the identity form") {
  const auto q = QuadraticForm::identity(2);
  // 4 zeta(2) beta(2)
  CHECK(std::abs(quadratic_zeta(q, 2.0).value - 6.0268120396919401) < 1e-9);
  const auto pole = quadratic_zeta(q, 1.0);
  CHECK(pole.is_pole);
  CHECK(std::abs(pole.residue_in_z - 2 * pi) < 1e-6);
  CHECK(std::abs(pole.diagnostics.s_residue - pi) < 1e-6);
}

TEST_CASE("convergent epstein value matches the finite part") {
  // 4 zeta(1.3) beta(1.3)
  const double zeta13 = 3.9319492118095437, beta13 = 0.83675282780346173;
  CHECK(std::abs(quadratic_zeta(QuadraticForm::identity(2), 1.3).value - 4 * zeta13 * beta13) < 1e-6);
}

TEST_CASE("direct and finite-part pipelines agree on convergent points") {
  const QuadraticForm q({{1, 0.5}, {0.5, 1}});
  ZetaOptions direct;
  direct.tol = 1e-6;
  const auto a = quadratic_zeta(q, 3.0, direct);
  CHECK(a.diagnostics.pipeline == Pipeline::direct);
  ZetaOptions fp;
  fp.tol = 1e-300;
  const auto b = quadratic_zeta(q, 3.0, fp);
  CHECK(b.diagnostics.pipeline == Pipeline::fp_lattice);
  CHECK(std::abs(a.value - b.value) < 1e-6);
}

TEST_CASE("sphere residue of a quadratic form") {
  CHECK(std::abs(quadratic_zeta_residue(QuadraticForm::identity(2)) - 2 * pi) < 1e-12);
  CHECK(std::abs(quadratic_zeta_residue(QuadraticForm::identity(3)) - 4 * pi) < 1e-10);
  CHECK(std::abs(quadratic_zeta_residue(QuadraticForm({{1, 0}, {0, 4}})) - pi) < 1e-6);
}

TEST_CASE("defect of pure powers") {
  const auto q1 = QuadraticForm::identity(1);
  CHECK(std::abs(C_of_power(q1, -0.5) + 1.0 / 6) < 1e-7);
  const auto q2 = QuadraticForm::identity(2);
  CHECK(std::abs(C_of_power(q2, -0.7) - quadratic_zeta(q2, -0.7).value) < 1e-5);
  CHECK(std::abs(C_of_power(q2, -1.0)) < 1e-5);
  CHECK_THROWS_AS(C_of_power(q2, 0.5), PreconditionError);
}

TEST_CASE("torus zeta") {
  CHECK(std::abs(torus_zeta(1, 2.0).value - std::pow(pi, 4) / 45) < 1e-8);
  CHECK(std::abs(torus_zeta(2, -1.0).value) < 1e-5);
  CHECK(torus_zeta(2, 1.0).is_pole);
  CHECK_THROWS_AS(torus_zeta(4, 2.0), PreconditionError);
}

TEST_CASE("pipeline names") {
  CHECK(to_string(Pipeline::fp_lattice) == "fp_lattice");
  CHECK(to_string(Pipeline::direct) == "direct");
}
