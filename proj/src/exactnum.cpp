#include "symzeta/exactnum.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace symzeta {

namespace {

// Memo of B_n / n! and B_n; grown under a lock, never shrunk.
class BernoulliMemo {
 public:
  Rational number(unsigned n) {
    std::lock_guard<std::mutex> lock(mutex_);
    grow(n);
    return numbers_[n];
  }

  std::vector<Rational> numbers(unsigned n) {
    std::lock_guard<std::mutex> lock(mutex_);
    grow(n);
    return {numbers_.begin(), numbers_.begin() + n + 1};
  }

 private:
  void grow(unsigned n) {
    if (numbers_.empty()) {
      scaled_.push_back(1);
      numbers_.push_back(1);
      factorial_.push_back(1);
    }
    while (numbers_.size() <= n) {
      const unsigned m = numbers_.size();
      factorial_.push_back(factorial_.back() * m);
      // (e^t - 1)/t = sum_k t^k/(k+1)!; its inverse has coefficients B_m/m!.
      Rational acc = 0;
      for (unsigned k = 1; k <= m; ++k) {
        acc += scaled_[m - k] / Rational(factorial_[k] * (k + 1));
      }
      Rational c = -acc;
      c.canonicalize();
      scaled_.push_back(c);
      Rational b = c * Rational(factorial_[m]);
      b.canonicalize();
      numbers_.push_back(b);
    }
  }

  std::mutex mutex_;
  std::vector<Rational> scaled_;
  std::vector<Rational> numbers_;
  std::vector<BigInt> factorial_;
};

BernoulliMemo& memo() {
  static BernoulliMemo instance;
  return instance;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Rational bernoulli_number(unsigned n) { return memo().number(n); }

std::vector<Rational> bernoulli_poly_coeffs(unsigned n) {
  const auto b = memo().numbers(n);
  std::vector<Rational> coeffs(n + 1);
  // B_n(x) = sum_k C(n,k) B_k x^{n-k}
  for (unsigned k = 0; k <= n; ++k) coeffs[n - k] = Rational(binomial(n, k)) * b[k];
  return coeffs;
}

Rational bernoulli_poly(unsigned n, const Rational& x) {
  const auto c = bernoulli_poly_coeffs(n);
  Rational acc = 0;
  for (unsigned i = n + 1; i-- > 0;) acc = acc * x + c[i];
  acc.canonicalize();
  return acc;
}

namespace {

template <class Real>
Real periodic_bernoulli_impl(unsigned k, Real x) {
  if (k == 0) return Real(1);
  const auto c = bernoulli_poly_coeffs(k);
  const Real t = x - std::floor(x);
  Real acc = 0;
  for (unsigned i = k + 1; i-- > 0;) acc = acc * t + Real(c[i].get_d());
  return acc;
}

}  // namespace

double periodic_bernoulli(unsigned k, double x) { return periodic_bernoulli_impl<double>(k, x); }

long double periodic_bernoulli(unsigned k, long double x) {
  return periodic_bernoulli_impl<long double>(k, x);
}

Rational faulhaber_sum(unsigned p, long N) {
  // (B_{p+1}(N+1) - B_{p+1}(1)) / (p+1), a polynomial identity valid for every integer N.
  const Rational top = bernoulli_poly(p + 1, Rational(N + 1)) - bernoulli_poly(p + 1, Rational(1));
  Rational r = top / Rational(p + 1);
  r.canonicalize();
  return r;
}

BernoulliTable bernoulli_table(unsigned max_index) {
  BernoulliTable table;
  table.max_index = max_index;
  table.numbers = memo().numbers(max_index);
  table.poly_coeffs.reserve(max_index + 1);
  for (unsigned n = 0; n <= max_index; ++n) table.poly_coeffs.push_back(bernoulli_poly_coeffs(n));
  return table;
}

}  // namespace symzeta
