#include <doctest.h>

#include <cmath>

#include "symzeta/errors.hpp"
#include "symzeta/symbols.hpp"

using namespace symzeta;

TEST_CASE("cutoff function bridge") {
  const CutoffFunction chi;
  CHECK(chi(0.3) == 0.0);
  CHECK(chi(1.2) == 1.0);
  CHECK(chi(0.75) == doctest::Approx(0.5));
  CHECK(CutoffFunction::none()(0.0) == 1.0);
  CHECK_THROWS(CutoffFunction(1.0, 0.5));
}

TEST_CASE("power symbol values") {
  const auto s = power_symbol(2, -1.5);
  CHECK(std::abs(s.evaluate({3.0, 4.0}) - std::pow(5.0, -1.5)) < 1e-15);
  CHECK(s.evaluate({0.0, 0.0}) == 0.0);
  CHECK(s.order() == cdouble(-1.5));
  CHECK_FALSE(s.is_integer_order());
  CHECK(power_symbol(2, -2.0).is_integer_order());
}

TEST_CASE("quadratic symbol follows the form") {
  const QuadraticForm q({{2, 0.5}, {0.5, 1}});
  const double x[2] = {1.0, 2.0};
  CHECK(q(Point(x, 2)) == doctest::Approx(2 + 2 * 0.5 * 2 + 4));
  const auto s = quadratic_symbol(q, 0.75);
  CHECK(std::abs(s.evaluate({1.0, 2.0}) - std::pow(8.0, -0.75)) < 1e-14);
  CHECK(s.order() == cdouble(-1.5));
}

TEST_CASE("quadratic form checks") {
  CHECK_THROWS_AS(QuadraticForm({{1, 2}, {2, 1}}), PreconditionError);
  CHECK_THROWS_AS(QuadraticForm({{1, 0.2}, {0.3, 1}}), PreconditionError);
  const QuadraticForm q({{1, 0.5}, {0.5, 1}});
  CHECK(q.determinant() == doctest::Approx(0.75));
  CHECK(q.min_eigenvalue() == doctest::Approx(0.5));
  CHECK(q.max_eigenvalue() == doctest::Approx(1.5));
  CHECK(q.integer_scale() == 1);
  CHECK(q.inverse().entry(0, 1) == doctest::Approx(-2.0 / 3));
  CHECK(QuadraticForm::identity(3).is_identity());
}

TEST_CASE("translate shifts evaluation points") {
  const auto s = power_symbol(1, -1.5);
  const auto t = translate(s, {2.0});
  const double x[1] = {3.0};
  CHECK(std::abs(t.evaluate(Point(x, 1)) - std::pow(5.0, -1.5)) < 1e-15);
  CHECK_THROWS_AS(translate(s, {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("derivative_1d matches finite differences") {
  const auto s = power_symbol(1, -0.5);
  const auto d2 = derivative_1d(s, 2);
  const double x = 3.0, h = 1e-3;
  auto f = [&](double y) { return std::pow(y, -0.5); };
  const double fd = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
  CHECK(std::abs(d2(x) - fd) < 1e-6);
  CHECK(std::abs(d2(x) - 0.75 * std::pow(3.0, -2.5)) < 1e-14);
}

TEST_CASE("riesz family scales the order") {
  const auto fam = riesz_family(power_symbol(2, -2.0), -1.0);
  CHECK(fam.order_at(0.5) == cdouble(-2.5));
  const double x[2] = {3.0, 4.0};
  CHECK(std::abs(fam.evaluate(0.5, Point(x, 2)) - std::pow(5.0, -2.5)) < 1e-14);
  CHECK(std::abs(fam.derivative_at_zero(Point(x, 2)) - (-std::log(5.0) / 25.0)) < 1e-14);
}

TEST_CASE("combine requires aligned orders") {
  const auto a = power_symbol(1, -1.5), b = power_symbol(1, -2.5);
  const auto c = combine({{2.0, a}, {1.0, b}});
  CHECK(c.order() == cdouble(-1.5));
  CHECK(std::abs(c.evaluate({2.0}) - (2 * std::pow(2.0, -1.5) + std::pow(2.0, -2.5))) < 1e-15);
  CHECK_THROWS(combine({{1.0, a}, {1.0, power_symbol(1, -1.2)}}));
}

TEST_CASE("one-sided power symbol vanishes on the left") {
  const auto s = one_sided_power_symbol(-1.5);
  CHECK(s.evaluate({-3.0}) == 0.0);
  CHECK(std::abs(s.evaluate({4.0}) - 0.125) < 1e-15);
}

TEST_CASE("symbol jets agree with values") {
  const auto s = power_symbol(1, -1.5);
  const auto jet = s.evaluate_jet(RealJet::variable(3, 2.0));
  CHECK(std::abs(jet.value() - std::pow(2.0, -1.5)) < 1e-15);
  CHECK(std::abs(jet.derivative(1) - (-1.5 * std::pow(2.0, -2.5))) < 1e-14);
}
