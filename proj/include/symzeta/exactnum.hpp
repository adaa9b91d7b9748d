#pragma once

#include <gmpxx.h>

#include <vector>

namespace symzeta {

// Exact rational backed by GMP; gmpxx keeps results in lowest terms.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den);

// B_n with the convention B_1 = -1/2, from the series t/(e^t - 1).
Rational bernoulli_number(unsigned n);

// Coefficients of B_n(x) in ascending powers of x.
std::vector<Rational> bernoulli_poly_coeffs(unsigned n);

Rational bernoulli_poly(unsigned n, const Rational& x);

// B_k(x - floor(x)).
double periodic_bernoulli(unsigned k, double x);
long double periodic_bernoulli(unsigned k, long double x);

// Polynomial in N agreeing with sum_{n=1}^N n^p for N >= 1.
Rational faulhaber_sum(unsigned p, long N);

// Snapshot of the memoized tables up to max_index.
struct BernoulliTable {
  unsigned max_index = 0;
  std::vector<Rational> numbers;                  // B_0 .. B_max
  std::vector<std::vector<Rational>> poly_coeffs;  // row n: coefficients of B_n(x)
};

BernoulliTable bernoulli_table(unsigned max_index);

// Binomial coefficient as an exact integer.
BigInt binomial(unsigned n, unsigned k);

}  // namespace symzeta
