#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symzeta/errors.hpp"
#include "symzeta/oracles.hpp"

using namespace symzeta;
using std::numbers::pi;

TEST_CASE("riemann oracle") {
  const auto z2 = riemann_zeta_oracle(2.0);
  CHECK(std::abs(z2.value - pi * pi / 6) < 1e-15);
  CHECK(z2.error_bound < 1e-25);
  CHECK(std::abs(riemann_zeta_oracle(-1.0).value + 1.0 / 12) < 1e-16);
  CHECK(std::abs(riemann_zeta_oracle(0.0).value + 0.5) < 1e-16);
  CHECK_THROWS_AS(riemann_zeta_oracle(1.0), DomainError);
  // first nontrivial zero
  CHECK(std::abs(riemann_zeta_oracle(cdouble(0.5, 14.134725141734693)).value) < 1e-12);
}

TEST_CASE("dirichlet beta oracle") {
  const auto b1 = dirichlet_beta_oracle(1.0);
  CHECK(std::abs(b1.value - pi / 4) < 1e-16);
  CHECK(b1.error_bound < 1e-25);
  CHECK(std::abs(dirichlet_beta_oracle(2.0).value - 0.915965594177219015) < 1e-16);
  CHECK(std::abs(dirichlet_beta_oracle(0.0).value - 0.5) < 1e-16);
}

TEST_CASE("hurwitz oracle and euler gamma") {
  CHECK(std::abs(hurwitz_zeta_oracle(2.0, 0.5).value - pi * pi / 2) < 1e-14);
  CHECK(std::abs(euler_gamma_oracle().value - 0.57721566490153286061) < 1e-16);
  CHECK_THROWS_AS(hurwitz_zeta_oracle(2.0, 0.0), PreconditionError);
}

TEST_CASE("epstein oracle reductions") {
  const auto q1 = QuadraticForm::identity(1);
  for (cdouble s : {cdouble(2.0), cdouble(0.7, 1.3), cdouble(-0.8), cdouble(1.6, -0.4)})
    CHECK(std::abs(epstein_oracle(q1, s).value - 2.0 * riemann_zeta_oracle(2.0 * s).value) < 1e-12);
  const auto q2 = QuadraticForm::identity(2);
  for (cdouble s : {cdouble(2.0), cdouble(3.0), cdouble(0.5, 2.0), cdouble(-1.5), cdouble(-0.3), cdouble(1.5, 0.5),
                    cdouble(0.25), cdouble(2.5, -1.0)})
    CHECK(std::abs(epstein_oracle(q2, s).value - 4.0 * riemann_zeta_oracle(s).value * dirichlet_beta_oracle(s).value) <
          1e-10);
}

TEST_CASE("epstein oracle at s = 3 equals the direct sum") {
  const auto q2 = QuadraticForm::identity(2);
  long double direct = 0, carry = 0;
  const int N = 3000;
  for (int a = N; a >= -N; --a)
    for (int b = N; b >= 0; --b) {
      if (b == 0 && a <= 0) continue;
      const long double r2 = (long double)a * a + (long double)b * b;
      const long double term = 2 / (r2 * r2 * r2), t = direct + term;
      carry += (direct - t) + term;
      direct = t;
    }
  direct += carry;
  // tail beyond the box: at most 2 pi / (4 N^4)
  CHECK(std::abs(epstein_oracle(q2, 3.0).value - static_cast<double>(direct)) < 1e-12);
}

TEST_CASE("epstein oracle pole data") {
  const auto r = epstein_oracle(QuadraticForm::identity(2), 1.0);
  CHECK(r.at_pole);
  CHECK(std::abs(r.s_residue_at_d_half - pi) < 1e-15);
  const auto q = epstein_oracle(QuadraticForm({{1, 0}, {0, 4}}), 0.3);
  CHECK(std::abs(q.s_residue_at_d_half - pi / 2) < 1e-15);
  CHECK(std::abs(epstein_oracle(QuadraticForm::identity(2), 0.0).value + 1.0) < 1e-15);
}

TEST_CASE("oracle truncation checks") {
  OracleConfig tiny;
  tiny.truncation = 1;
  CHECK_THROWS_AS(epstein_oracle(QuadraticForm::identity(2), 2.0, tiny), AccuracyError);
  OracleConfig low;
  low.precision_bits = 64;
  CHECK_THROWS_AS(riemann_zeta_oracle(2.0, low), PreconditionError);
  // doubling the truncation moves the value by less than the reported bound
  OracleConfig a, b;
  a.truncation = 6;
  b.truncation = 12;
  a.target_tol = b.target_tol = 1e-10;
  const auto ra = epstein_oracle(QuadraticForm::identity(2), 0.4, a);
  const auto rb = epstein_oracle(QuadraticForm::identity(2), 0.4, b);
  CHECK(std::abs(ra.value - rb.value) <= ra.error_bound + rb.error_bound + 1e-16);
}

TEST_CASE("oracle derivative gives the torus determinant in one dimension") {
  const auto d = epstein_oracle_derivative(QuadraticForm::identity(1), 0.0);
  CHECK(std::exp(-d.value.real()) == doctest::Approx(4 * pi * pi).epsilon(1e-14));
}
