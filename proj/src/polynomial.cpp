// Exact hypercube sums of polynomials.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

#include "symzeta/reg_sum.hpp"
#include "symzeta/symbols.hpp"

namespace symzeta {

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [alpha, c] : terms) {
    if (c == 0) continue;
    int total = 0;
    for (int e : alpha) total += e;
    deg = std::max(deg, total);
  }
  return deg;
}

Rational Polynomial::evaluate(const std::vector<long>& n) const {
  if (static_cast<int>(n.size()) != dim) throw DimensionMismatch("Polynomial: dimension mismatch");
  Rational acc = 0;
  for (const auto& [alpha, c] : terms) {
    BigInt mono = 1;
    for (int i = 0; i < dim; ++i) {
      BigInt p;
      mpz_pow_ui(p.get_mpz_t(), BigInt(n[i]).get_mpz_t(), alpha[i]);
      mono *= p;
    }
    acc += c * Rational(mono);
  }
  acc.canonicalize();
  return acc;
}

double Polynomial::evaluate(Point x) const {
  if (static_cast<int>(x.size()) != dim) throw DimensionMismatch("Polynomial: dimension mismatch");
  double acc = 0;
  for (const auto& [alpha, c] : terms) {
    double mono = c.get_d();
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < alpha[i]; ++k) mono *= x[i];
    acc += mono;
  }
  return acc;
}

namespace {

// sum_{n=-N}^{N} n^p as a polynomial in N (0^0 = 1).
Rational symmetric_power_sum(unsigned p, long N) {
  if (p == 0) return Rational(2 * N + 1);
  if (p % 2 == 1) return Rational(0);
  return Rational(2) * faulhaber_sum(p, N);
}

}  // namespace

Rational kp_hypercube_polynomial_sum(const Polynomial& P, long N) {
  if (P.dim < 1 || P.dim > 3) throw PreconditionError("kp_hypercube_polynomial_sum: d must be in 1..3");
  if (N < 0) throw PreconditionError("kp_hypercube_polynomial_sum: N must be nonnegative");
  Rational total = 0;
  for (const auto& [alpha, c] : P.terms) {
    if (static_cast<int>(alpha.size()) != P.dim) throw DimensionMismatch("Polynomial: multi-index length");
    Rational prod = c;
    for (int e : alpha) prod *= symmetric_power_sum(static_cast<unsigned>(e), N);
    total += prod;
  }
  total.canonicalize();
  return total;
}

Rational enumerate_hypercube_polynomial_sum(const Polynomial& P, long N) {
  Rational total = 0;
  std::vector<long> n(P.dim, -N);
  std::function<void(int)> walk = [&](int axis) {
    if (axis == P.dim) {
      total += P.evaluate(n);
      return;
    }
    for (long v = -N; v <= N; ++v) {
      n[axis] = v;
      walk(axis + 1);
    }
  };
  walk(0);
  total.canonicalize();
  return total;
}

// The sum is a polynomial in N; its value at N = 0 is the constant term.
Rational polynomial_finite_part_exact(const Polynomial& P) { return kp_hypercube_polynomial_sum(P, 0); }

namespace {

quad to_quad(const Rational& r) {
  // 40 significant digits survive the round trip through text.
  mpf_class f(r, 160);
  mp_exp_t exp10 = 0;
  const std::string digits = f.get_str(exp10, 10, 40);
  if (digits.empty()) return 0;
  const bool neg = digits[0] == '-';
  const std::string text = std::string(neg ? "-0." : "0.") + digits.substr(neg ? 1 : 0) + "e" + std::to_string(exp10);
  return strtoflt128(text.c_str(), nullptr);
}

}  // namespace

FinitePartResult cutoff_sum_lattice(const Polynomial& P, const LatticeOptions& opts) {
  if (P.dim < 1 || P.dim > 3) throw PreconditionError("cutoff_sum_lattice: d must be in 1..3");
  const auto radii = opts.radii.empty() ? default_radii(P.dim) : opts.radii;
  const int nmax = radii.back();
  // Exact shell sums by enumeration.
  std::vector<Rational> shells(nmax + 1, Rational(0));
  std::vector<long> n(P.dim, -nmax);
  while (true) {
    long shell = 0;
    for (long v : n) shell = std::max(shell, std::labs(v));
    shells[shell] += P.evaluate(n);
    int i = 0;
    while (i < P.dim && n[i] == nmax) n[i++] = -nmax;
    if (i == P.dim) break;
    ++n[i];
  }
  std::vector<QuadSample> samples;
  Rational running = 0;
  std::size_t next = 0;
  for (int m = 0; m <= nmax && next < radii.size(); ++m) {
    running += shells[m];
    if (m == radii[next]) samples.push_back({static_cast<double>(m), QComplex(to_quad(running))}), ++next;
  }
  // The sums are polynomials of degree deg + d in N, so no negative powers.
  const int terms = opts.terms > 0 ? opts.terms : P.degree() + P.dim + 1;
  AsymptoticModel model = expansion_model(static_cast<double>(P.degree()), P.dim, terms);
  return finite_part_extract(samples, model, opts.fit);
}

}  // namespace symzeta
