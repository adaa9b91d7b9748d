// Euler-Maclaurin summation: identity check and the one-dimensional canonical sum.

#include <algorithm>
#include <cmath>
#include <limits>

#include "symzeta/quadrature.hpp"
#include "symzeta/reg_integral.hpp"
#include "symzeta/reg_sum.hpp"

namespace symzeta {

namespace {

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// B_k(t) for t in [0, 1] with double coefficients.
class BernoulliPolyEval {
 public:
  explicit BernoulliPolyEval(int k) {
    for (const auto& c : bernoulli_poly_coeffs(k)) coeffs_.push_back(c.get_d());
  }
  double operator()(double t) const {
    double acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
  }

 private:
  std::vector<double> coeffs_;
};

ComplexJet jet_at(const JetMap& f, double x, int order) {
  return f(RealJet::variable(order, x).cast<cdouble>());
}

constexpr int kGaussNodes = 24;

}  // namespace

EMCheck em_identity_check(const JetMap& f, long M, long N, int K) {
  if (M >= N) throw PreconditionError("em_identity_check: need M < N");
  if (K < 1) throw ParameterError("em_identity_check: K must be positive");
  EMCheck out;
  for (long n = M; n <= N; ++n) out.lhs += jet_at(f, static_cast<double>(n), 0).value();

  cdouble integral = 0.0, remainder = 0.0;
  const BernoulliPolyEval bk(K);
  for (long n = M; n < N; ++n) {
    const double a = static_cast<double>(n);
    integral += integrate_gauss([&](double x) { return jet_at(f, x, 0).value(); }, a, a + 1, kGaussNodes);
    remainder += integrate_gauss(
        [&](double x) { return bk(x - a) * jet_at(f, x, K).derivative(K); }, a, a + 1, kGaussNodes);
  }
  const ComplexJet fm = jet_at(f, static_cast<double>(M), std::max(K - 1, 0));
  const ComplexJet fn = jet_at(f, static_cast<double>(N), std::max(K - 1, 0));
  cdouble corrections = 0.0;
  for (int k = 2; k <= K; ++k) {
    const double coef = ((k % 2 == 0) ? 1.0 : -1.0) * bernoulli_number(k).get_d() / factorial(k);
    corrections += coef * (fn.derivative(k - 1) - fm.derivative(k - 1));
  }
  const double rem_sign = ((K - 1) % 2 == 0) ? 1.0 : -1.0;
  out.rhs = 0.5 * (fm.value() + fn.value()) + integral + corrections + rem_sign / factorial(K) * remainder;
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

EMParams EMParams::for_order(cdouble order, int dim) {
  EMParams p;
  const double bound = order.real() + 1.0 + dim;
  int k = 2;
  while (!(k > bound)) k += 2;
  p.K = k;
  return p;
}

namespace {

// fp_N sum_{k=0}^{N} (x0 + k)^b by Euler-Maclaurin from x0; terms of the
// asymptotic Bernoulli series are added until they stop decreasing.
// at_integer_end adds the constants contributed by the upper end when b is a
// nonnegative integer and the summation points are integers.
cdouble homogeneous_tail(cdouble b, double x0, int min_terms, bool at_integer_end) {
  const double lx = std::log(x0);
  cdouble total;
  const bool log_case = std::abs(b + 1.0) < 1e-14;
  total = log_case ? cdouble(-lx) : -std::exp((b + 1.0) * lx) / (b + 1.0);
  total += 0.5 * std::exp(b * lx);
  // f^{(k-1)}(x0) = (b)_{k-1} x0^{b-k+1}
  cdouble falling = b;  // (b)_1
  double last = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 200; k += 2) {
    if (k > 2) falling *= (b - static_cast<double>(k - 3)) * (b - static_cast<double>(k - 2));
    const cdouble term = bernoulli_number(k).get_d() / factorial(k) * falling *
                         std::exp((b - static_cast<double>(k - 1)) * lx);
    const double mag = std::abs(term);
    if (k > min_terms && mag > last) break;
    total -= term;
    last = mag;
    if (k >= min_terms && mag <= 1e-18 * std::abs(total)) break;
    if (falling == 0.0) break;
  }
  if (at_integer_end && std::abs(b.imag()) < 1e-14 && b.real() > -0.5) {
    const long m = std::lround(b.real());
    if (std::abs(b.real() - static_cast<double>(m)) < 1e-12) total += (m == 0) ? 0.5 : bernoulli_number(m + 1).get_d() / (m + 1);
  }
  return total;
}

}  // namespace

cdouble cutoff_sum_1d(const ClassicalSymbol& sigma, const EMParams& params, double shift) {
  if (sigma.dimension() != 1) throw DimensionMismatch("cutoff_sum_1d: one-dimensional symbols only");
  if (sigma.cutoff().is_none()) throw PreconditionError("cutoff_sum_1d: symbol needs a cutoff at the origin");
  const cdouble a = sigma.order();
  if (shift != 0.0 && sigma.is_integer_order())
    throw PreconditionError("cutoff_sum_1d: translated sums need non-integer order");
  const int K = params.K > 0 ? params.K : EMParams::for_order(a).K;
  if (K < 2 || K % 2 != 0) throw ParameterError("cutoff_sum_1d: K must be even and at least 2");
  if (!(K > a.real() + 2.0)) throw ParameterError("cutoff_sum_1d: K too small for a convergent remainder");

  const auto& rem = sigma.remainder();
  double reach = sigma.cutoff().r1();
  if (rem && rem->compact()) reach = std::max(reach, rem->support_radius);
  // The Bernoulli tail series reaches ~e^{-2 pi X} before diverging; a small X
  // keeps cancellation in the direct part low for positive orders.
  const long X = std::max<long>(10, static_cast<long>(std::ceil(std::abs(shift) + reach)) + 8);

  // Points y = n + shift with |y| < X are summed directly.
  const long n_lo = static_cast<long>(std::floor(-X - shift)) + 1;
  const long n_hi = static_cast<long>(std::ceil(X - shift)) - 1;
  cdouble direct = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) {
    const double y[1] = {static_cast<double>(n) + shift};
    if (std::abs(y[0]) < X) direct += sigma.evaluate(Point(y, 1));
  }
  // first points at or beyond +X and -X
  const double y_plus = static_cast<double>(n_hi + 1) + shift;
  const double y_minus = -(static_cast<double>(n_lo - 1) + shift);
  const long n_plus = n_hi + 1, n_minus = n_lo - 1;
  if (std::abs(static_cast<double>(n_plus) + shift) < X || std::abs(static_cast<double>(n_minus) + shift) < X)
    throw Error("cutoff_sum_1d: internal split error");

  const double plus[1] = {1.0}, minus[1] = {-1.0};
  cdouble tails = 0.0;
  const bool integer_points = shift == 0.0;
  for (const auto& c : sigma.components()) {
    if (c.is_zero()) continue;
    const cdouble cp = c.profile(Point(plus, 1)), cm = c.profile(Point(minus, 1));
    if (cp != 0.0) tails += cp * homogeneous_tail(c.degree, y_plus, K, integer_points);
    if (cm != 0.0) tails += cm * homogeneous_tail(c.degree, y_minus, K, integer_points);
  }

  // A non-compact remainder is summed directly beyond the split.
  if (rem && !rem->compact()) {
    for (double side : {1.0, -1.0}) {
      int quiet = 0;
      for (long k = 0; k < 1000000 && quiet < 32; ++k) {
        const double y[1] = {side > 0 ? y_plus + k : -(y_minus + k)};
        const cdouble v = rem->value(Point(y, 1));
        tails += v;
        quiet = std::abs(v) < 1e-20 ? quiet + 1 : 0;
      }
    }
  }
  return direct + tails;
}

}  // namespace symzeta
