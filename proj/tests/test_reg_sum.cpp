#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symzeta/errors.hpp"
#include "symzeta/reg_integral.hpp"
#include "symzeta/reg_sum.hpp"

using namespace symzeta;
using std::numbers::pi;

namespace {
const double zeta3 = 1.2020569031595942854;
const double zeta15 = 2.6123753486854883433;
}  // namespace

TEST_CASE("euler-maclaurin identity holds for smooth test functions") {
  const JetMap f = [](const ComplexJet& x) { return pow(x + ComplexJet(x.order(), 1.0), -1.5); };
  for (int K : {2, 3, 4, 6}) CHECK(em_identity_check(f, 1, 20, K).gap < 1e-12);
  const JetMap g = [](const ComplexJet& x) { return exp(x * ComplexJet(x.order(), -0.3)); };
  CHECK(em_identity_check(g, 0, 10, 4).gap < 1e-12);
  CHECK_THROWS(em_identity_check(f, 5, 5, 2));
}

TEST_CASE("cutoff_sum_1d on convergent symbols") {
  CHECK(std::abs(cutoff_sum_1d(power_symbol(1, -3.0)) - 2 * zeta3) < 1e-13);
  CHECK(std::abs(cutoff_sum_1d(power_symbol(1, -1.5)) - 2 * zeta15) < 1e-13);
}

TEST_CASE("cutoff_sum_1d at positive orders") {
  // Non-integer orders give 2 zeta(-a); at integer orders the finite part of the
  // Faulhaber polynomial has no constant term.
  CHECK(std::abs(cutoff_sum_1d(power_symbol(1, 0.5)) - 2 * -0.20788622497735456) < 1e-11);
  CHECK(std::abs(cutoff_sum_1d(power_symbol(1, 2.0))) < 1e-11);
  CHECK(std::abs(cutoff_sum_1d(power_symbol(1, 1.0))) < 1e-11);
}

TEST_CASE("cutoff_sum_1d parameter checks") {
  CHECK_THROWS_AS(cutoff_sum_1d(power_symbol(1, -1.5), {3}), ParameterError);
  CHECK_THROWS_AS(cutoff_sum_1d(power_symbol(1, 5.0), {4}), ParameterError);
  CHECK_THROWS_AS(cutoff_sum_1d(power_symbol(2, -1.5)), DimensionMismatch);
  CHECK_THROWS_AS(cutoff_sum_1d(power_symbol(1, -1.0), {}, 1.0), PreconditionError);
}

TEST_CASE("finite part fit recovers a known expansion") {
  std::vector<std::pair<double, cdouble>> samples;
  for (int n = 8; n <= 40; n += 2) samples.push_back({double(n), 3.0 + 2.0 * std::pow(n, 0.5) - 0.7 * std::pow(n, -0.5)});
  AsymptoticModel m;
  m.exponents = {0.5, -0.5};
  const auto f = finite_part_extract(samples, m);
  CHECK(std::abs(f.constant - 3.0) < 1e-12);
  CHECK(f.residual_norm < 1e-12);
  REQUIRE(f.power_coeffs.size() == 2);
  CHECK(std::abs(f.power_coeffs[0].second - 2.0) < 1e-11);
}

TEST_CASE("finite part fit with a log term") {
  std::vector<std::pair<double, cdouble>> samples;
  for (int n = 8; n <= 64; n += 4) samples.push_back({double(n), 1.25 + 0.5 * std::log(n) + 1.0 / n});
  const auto f = finite_part_extract(samples, expansion_model(-1.0, 1, 3));
  CHECK(f.log_coeff.real() == doctest::Approx(0.5));
  CHECK(std::abs(f.constant - 1.25) < 1e-11);
}

TEST_CASE("finite part fit failure modes") {
  std::vector<std::pair<double, cdouble>> few = {{1, 1.0}, {2, 2.0}, {3, 3.0}};
  AsymptoticModel m;
  m.exponents = {1.0, -1.0};
  CHECK_THROWS_AS(finite_part_extract(few, m), PreconditionError);
  AsymptoticModel dup;
  dup.exponents = {1.0, 1.0};
  CHECK_THROWS_AS(dup.validate(), PreconditionError);
  std::vector<std::pair<double, cdouble>> noisy;
  for (int n = 8; n <= 40; n += 2) noisy.push_back({double(n), 1.0 + ((n / 2) % 2 ? 1e-3 : -1e-3)});
  FitOptions strict;
  strict.residual_tol = 1e-8;
  AsymptoticModel flat;
  flat.exponents = {-1.0};
  CHECK_THROWS_AS(finite_part_extract(noisy, flat, strict), PoorFitError);
}

TEST_CASE("lattice finite part agrees with the 1-D Euler-Maclaurin pipeline") {
  const auto s = power_symbol(1, -1.5);
  CHECK(std::abs(cutoff_sum_lattice(s).constant - cutoff_sum_1d(s)) < 1e-7);
  const auto p = power_symbol(1, 0.5);
  CHECK(std::abs(cutoff_sum_lattice(p).constant - cutoff_sum_1d(p)) < 1e-7);
}

TEST_CASE("lattice finite part of a convergent epstein sum") {
  const auto s = quadratic_symbol(QuadraticForm::identity(2), 1.3);
  const auto f = cutoff_sum_lattice(s);
  // 4 zeta(1.3) beta(1.3)
  CHECK(std::abs(f.constant - 4 * 3.9319492118095437 * 0.83675282780346173) < 1e-8);
  CHECK(f.residual_norm < 1e-10);
}

TEST_CASE("log coefficient of |x|^{-2} sums is the sphere integral") {
  const auto f = cutoff_sum_lattice(power_symbol(2, -2.0));
  CHECK(std::abs(f.log_coeff - 2 * pi) < 1e-4);
}

TEST_CASE("C constant of |x|^{-1.5} in one dimension") {
  const auto s = power_symbol(1, -1.5);
  CHECK(std::abs(C_constant(s) - (cutoff_sum_1d(s) - cutoff_integral(s).value)) < 1e-7);
}

TEST_CASE("translated 1-D defect is unchanged by lattice translations") {
  const auto s = power_symbol(1, -1.5);
  const cdouble base = C_constant(s);
  CHECK(std::abs(C_constant(s, {2.0}) - base) < 1e-7);
  CHECK(std::abs(cutoff_integral_translated(translate(s, {2.0})).constant - cutoff_integral(s).value) < 1e-9);
}

TEST_CASE("sup-norm cutoff integral equals the ball one at non-integer order") {
  const auto s = power_symbol(2, -1.3);
  CHECK(std::abs(supball_cutoff_integral(s).constant - cutoff_integral(s).value) < 1e-8);
}

TEST_CASE("radius ladders") {
  CHECK(default_radii(2, RadiusProfile::sparse) == std::vector<int>{8, 12, 16, 24, 32, 48, 64});
  CHECK(default_radii(3, RadiusProfile::sparse) == std::vector<int>{4, 6, 8, 12, 16});
  CHECK(default_radii(2).back() == 100);
  CHECK(default_radii(3).back() == 16);
}

TEST_CASE("polynomial sums") {
  Polynomial P;
  P.dim = 2;
  P.terms[{2, 0}] = 1;
  P.terms[{1, 1}] = make_rational(3, 2);
  P.terms[{0, 0}] = 4;
  // sum_{|n|<=1} (x^2 + 4) = 3 * 2 + 9 * 4
  CHECK(kp_hypercube_polynomial_sum(P, 1) == 42);
  CHECK(enumerate_hypercube_polynomial_sum(P, 3) == kp_hypercube_polynomial_sum(P, 3));
  CHECK(polynomial_finite_part_exact(P) == 4);
  CHECK(std::abs(cutoff_sum_lattice(P).constant - 4.0) < 1e-9);
}

TEST_CASE("finite part of a polynomial equals its value at the origin") {
  Polynomial P;
  P.dim = 3;
  P.terms[{4, 0, 0}] = make_rational(-2, 3);
  P.terms[{0, 2, 2}] = 5;
  P.terms[{0, 0, 0}] = make_rational(7, 5);
  CHECK(polynomial_finite_part_exact(P) == make_rational(7, 5));
  CHECK(std::abs(cutoff_sum_lattice(P).constant - 1.4) < 1e-9);
}
