#include <doctest.h>

#include <cmath>
#include <thread>

#include "symzeta/errors.hpp"
#include "symzeta/exactnum.hpp"

using namespace symzeta;

TEST_CASE("bernoulli numbers, first values") {
  CHECK(bernoulli_number(0) == 1);
  CHECK(bernoulli_number(1) == make_rational(-1, 2));
  CHECK(bernoulli_number(2) == make_rational(1, 6));
  CHECK(bernoulli_number(4) == make_rational(-1, 30));
  CHECK(bernoulli_number(6) == make_rational(1, 42));
  CHECK(bernoulli_number(12) == make_rational(-691, 2730));
  for (unsigned n = 3; n < 40; n += 2) CHECK(bernoulli_number(n) == 0);
}

TEST_CASE("bernoulli number B_60 numerator") {
  const Rational b = bernoulli_number(60);
  CHECK(b.get_den() == 56786730);
  CHECK(b.get_num().get_str() == "-1215233140483755572040304994079820246041491");
}

TEST_CASE("bernoulli recurrence sum_k binom(n+1,k) B_k = 0") {
  for (unsigned n = 1; n <= 30; ++n) {
    Rational acc = 0;
    for (unsigned k = 0; k <= n; ++k) acc += Rational(binomial(n + 1, k)) * bernoulli_number(k);
    CHECK(acc == 0);
  }
}

TEST_CASE("bernoulli polynomials") {
  CHECK(bernoulli_poly(2, make_rational(1, 3)) == make_rational(1, 9) - make_rational(1, 3) + make_rational(1, 6));
  for (unsigned n = 0; n <= 12; ++n) {
    CHECK(bernoulli_poly(n, 0) == bernoulli_number(n));
    // reflection B_n(1 - x) = (-1)^n B_n(x)
    const Rational x = make_rational(2, 7);
    const Rational lhs = bernoulli_poly(n, 1 - x);
    const Rational rhs = (n % 2 ? -1 : 1) * bernoulli_poly(n, x);
    CHECK(lhs == rhs);
    // B_n(x + 1) - B_n(x) = n x^{n-1}
    if (n >= 1) {
      Rational pow = 1;
      for (unsigned i = 0; i + 1 < n; ++i) pow *= x;
      CHECK(bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * pow);
    }
  }
}

TEST_CASE("periodic bernoulli") {
  CHECK(periodic_bernoulli(2, 0.25) == doctest::Approx(0.0625 - 0.25 + 1.0 / 6));
  CHECK(periodic_bernoulli(2, 3.25) == doctest::Approx(periodic_bernoulli(2, 0.25)));
  CHECK(periodic_bernoulli(3, -0.75) == doctest::Approx(periodic_bernoulli(3, 0.25)));
  CHECK(static_cast<double>(periodic_bernoulli(4, 0.5L)) == doctest::Approx(bernoulli_poly(4, make_rational(1, 2)).get_d()));
}

TEST_CASE("faulhaber sums") {
  for (unsigned p = 0; p <= 8; ++p)
    for (long N = 1; N <= 12; ++N) {
      BigInt brute = 0;
      for (long n = 1; n <= N; ++n) {
        BigInt t;
        mpz_pow_ui(t.get_mpz_t(), BigInt(n).get_mpz_t(), p);
        brute += t;
      }
      CHECK(faulhaber_sum(p, N) == Rational(brute));
    }
  CHECK(faulhaber_sum(3, 100) == Rational(25502500));
}

TEST_CASE("table snapshot and concurrent access agree") {
  const auto table = bernoulli_table(20);
  REQUIRE(table.numbers.size() == 21);
  CHECK(table.numbers[10] == make_rational(5, 66));
  std::vector<Rational> seen(8);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) pool.emplace_back([&seen, t] { seen[t] = bernoulli_number(80 + 2 * (t % 2)); });
  for (auto& th : pool) th.join();
  for (int t = 0; t < 8; ++t) CHECK(seen[t] == bernoulli_number(80 + 2 * (t % 2)));
}

TEST_CASE("make_rational rejects a zero denominator") { CHECK_THROWS(make_rational(1, 0)); }
