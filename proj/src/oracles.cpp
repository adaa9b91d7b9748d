// Independent reference values in MPFR precision.

#include "symzeta/oracles.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <mutex>

#include "symzeta/errors.hpp"
#include "symzeta/exactnum.hpp"

namespace symzeta {

namespace {

using Real = boost::multiprecision::mpfr_float;

struct MC {
  Real re, im;
  MC() : re(0), im(0) {}
  MC(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}
  explicit MC(cdouble z) : re(z.real()), im(z.imag()) {}
  cdouble to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

MC operator+(const MC& a, const MC& b) { return {a.re + b.re, a.im + b.im}; }
MC operator-(const MC& a, const MC& b) { return {a.re - b.re, a.im - b.im}; }
MC operator-(const MC& a) { return {-a.re, -a.im}; }
MC operator*(const MC& a, const MC& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
MC operator*(const MC& a, const Real& s) { return {a.re * s, a.im * s}; }
MC operator/(const MC& a, const MC& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Real abs(const MC& a) { return sqrt(a.re * a.re + a.im * a.im); }
MC exp(const MC& a) {
  const Real m = boost::multiprecision::exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}
MC log(const MC& a) { return {boost::multiprecision::log(abs(a)), atan2(a.im, a.re)}; }
// x^{a} for real x > 0.
MC rpow(const Real& x, const MC& a) { return exp(MC(a.re * boost::multiprecision::log(x), a.im * boost::multiprecision::log(x))); }

Real from_rational(const Rational& r) {
  Real x;
  mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

Real pi() {
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

// All oracle work runs under one lock with its own default precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits) : lock_(mutex()), saved_(Real::default_precision()) {
    if (bits < 128) throw PreconditionError("oracle: precision_bits must be at least 128");
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }

 private:
  static std::recursive_mutex& mutex() {
    static std::recursive_mutex m;
    return m;
  }
  std::lock_guard<std::recursive_mutex> lock_;
  unsigned saved_;
};

Real epsilon(int bits) { return boost::multiprecision::ldexp(Real(1), -bits); }

// 1 / Gamma(z): recurrence up to Re z >= shift, then the Stirling series.
MC rgamma(const MC& z, int bits) {
  if (z.im == 0 && z.re <= 0 && z.re == boost::multiprecision::floor(z.re)) return MC(Real(0));
  const double shift = std::max(20.0, bits / 3.0);
  MC w = z, prod(Real(1));
  while (w.re < shift) {
    prod = prod * w;
    w = w + MC(Real(1));
  }
  const MC lw = log(w);
  MC lg = (w - MC(Real(0.5))) * lw - w + MC(Real(0.5) * boost::multiprecision::log(2 * pi()));
  const MC w2 = w * w;
  MC wpow = w;  // w^{2k-1}
  const Real eps = epsilon(bits + 8);
  for (int k = 1; k < 200; ++k) {
    const Real coef = from_rational(bernoulli_number(2 * k)) / Real(2 * k * (2 * k - 1));
    const MC term = MC(coef) / wpow;
    lg = lg + term;
    if (abs(term) < eps * abs(lg)) break;
    wpow = wpow * w2;
  }
  return prod * exp(-lg);
}

// e^{x} x^{-a} Gamma(a, x) for real x > 0 by the Legendre continued fraction
// (modified Lentz).
MC scaled_upper_gamma(const MC& a, const Real& x, int bits) {
  const Real tiny = boost::multiprecision::ldexp(Real(1), -4 * bits);
  const Real eps = epsilon(bits + 4);
  MC b = MC(x + 1) - a;
  MC c(1 / tiny);
  MC d = MC(Real(1)) / b;
  MC h = d;
  for (int i = 1; i < 200000; ++i) {
    const MC an = -(MC(Real(i)) * (MC(Real(i)) - a));
    b = b + MC(Real(2));
    d = an * d + b;
    if (abs(d) < tiny) d = MC(tiny);
    c = b + an / c;
    if (abs(c) < tiny) c = MC(tiny);
    d = MC(Real(1)) / d;
    const MC del = d * c;
    h = h * del;
    if (abs(del - MC(Real(1))) < eps) return h;
  }
  throw AccuracyError("oracle: incomplete gamma continued fraction did not converge", 1.0);
}

struct FormData {
  int d;
  std::vector<std::vector<Real>> a, inv;
  Real det;
  double lambda_min, lambda_min_inv;
};

FormData form_data(const QuadraticForm& q) {
  FormData f;
  f.d = q.dimension();
  f.a.assign(f.d, std::vector<Real>(f.d));
  for (int i = 0; i < f.d; ++i)
    for (int j = 0; j < f.d; ++j) f.a[i][j] = Real(q.entry(i, j));
  // Gauss-Jordan inverse and determinant in full precision.
  auto m = f.a;
  f.inv.assign(f.d, std::vector<Real>(f.d, Real(0)));
  for (int i = 0; i < f.d; ++i) f.inv[i][i] = 1;
  f.det = 1;
  for (int col = 0; col < f.d; ++col) {
    int piv = col;
    for (int r = col + 1; r < f.d; ++r)
      if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(f.inv[piv], f.inv[col]);
      f.det = -f.det;
    }
    const Real p = m[col][col];
    f.det *= p;
    for (int k = 0; k < f.d; ++k) {
      m[col][k] /= p;
      f.inv[col][k] /= p;
    }
    for (int r = 0; r < f.d; ++r) {
      if (r == col) continue;
      const Real factor = m[r][col];
      for (int k = 0; k < f.d; ++k) {
        m[r][k] -= factor * m[col][k];
        f.inv[r][k] -= factor * f.inv[col][k];
      }
    }
  }
  f.lambda_min = q.min_eigenvalue();
  f.lambda_min_inv = 1.0 / q.max_eigenvalue();
  return f;
}

Real form_value(const std::vector<std::vector<Real>>& a, const std::vector<long>& n) {
  Real v = 0;
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = 0; j < n.size(); ++j) v += a[i][j] * n[i] * n[j];
  return v;
}

// Rigorous bound for sum over |n|_sup > B of e^{-x}/x * 2 with x = pi lambda |n|^2.
double theta_tail(int d, double lambda, long B) {
  double total = 0;
  for (long k = B + 1; k < B + 100000; ++k) {
    const double x = M_PI * lambda * static_cast<double>(k) * k;
    const double term = 2.0 * d * std::pow(2.0 * k + 1, d - 1) * 2.0 * std::exp(-x) / x;
    total += term;
    if (term < 1e-300 || term < 1e-30 * total) break;
  }
  return total;
}

// Smallest box half-width with tail below tol and x beyond the range where the
// continued-fraction bound holds.
long theta_box(int d, double lambda, double abs_a, double tol) {
  long B = 1;
  while (M_PI * lambda * (B + 1.0) * (B + 1.0) < 2 * (abs_a + 1) || theta_tail(d, lambda, B) > tol) ++B;
  return B;
}

// sum_{n != 0, |n|_sup <= B} e^{-x} x^{-a} Gamma(a, x) with x = pi q(n).
MC theta_half_sum(const std::vector<std::vector<Real>>& a, int d, long B, const MC& expo, int bits) {
  MC total;
  std::vector<long> n(d, -B);
  const Real p = pi();
  while (true) {
    bool zero = true;
    for (long v : n) zero = zero && v == 0;
    if (!zero) {
      const Real x = p * form_value(a, n);
      total = total + scaled_upper_gamma(expo, x, bits) * boost::multiprecision::exp(-x);
    }
    int i = 0;
    while (i < d && n[i] == B) n[i++] = -B;
    if (i == d) break;
    ++n[i];
  }
  return total;
}

struct EpsteinParts {
  MC sums;          // both incomplete-gamma sums
  Real D;           // det^{-1/2}
  double bound;
};

// Boxes chosen so the tail bound holds for every exponent within margin of s.
struct EpsteinBoxes {
  long primal = 0, dual = 0;
};

EpsteinBoxes epstein_boxes(const FormData& f, const MC& s, double margin, const OracleConfig& cfg) {
  if (cfg.truncation > 0) return {cfg.truncation, cfg.truncation};
  const MC dual_exp = MC(Real(f.d) / 2) - s;
  const double as = abs(s).convert_to<double>() + margin, ad = abs(dual_exp).convert_to<double>() + margin;
  return {theta_box(f.d, f.lambda_min, as, 0.01 * cfg.target_tol),
          theta_box(f.d, f.lambda_min_inv, ad, 0.01 * cfg.target_tol)};
}

EpsteinParts epstein_parts(const FormData& f, const MC& s, const EpsteinBoxes& box, int bits) {
  const MC dual_exp = MC(Real(f.d) / 2) - s;
  EpsteinParts out;
  out.D = 1 / sqrt(f.det);
  out.sums = theta_half_sum(f.a, f.d, box.primal, s, bits) + theta_half_sum(f.inv, f.d, box.dual, dual_exp, bits) * out.D;
  out.bound = theta_tail(f.d, f.lambda_min, box.primal) +
              out.D.convert_to<double>() * theta_tail(f.d, f.lambda_min_inv, box.dual);
  return out;
}

// pi^s / Gamma(s)
MC pi_rgamma(const MC& s, int bits) { return rpow(pi(), s) * rgamma(s, bits); }

void check_bound(double bound, const OracleConfig& cfg, const char* what) {
  if (bound > cfg.target_tol) throw AccuracyError(std::string(what) + ": truncation too small for target_tol", bound);
}

void check_precision(const OracleConfig& cfg, const char* what) {
  const double floor = std::ldexp(1.0, 24 - cfg.precision_bits);
  if (cfg.target_tol < floor) throw AccuracyError(std::string(what) + ": target_tol below working precision", floor);
}

struct EpsteinMP {
  MC value;
  MC residue;
  bool at_pole = false;
  double bound = 0;
};

EpsteinMP epstein_mp(const FormData& f, const MC& s, const EpsteinBoxes& box, int bits) {
  const auto parts = epstein_parts(f, s, box, bits);
  const MC half_d(Real(f.d) / 2);
  EpsteinMP r;
  r.residue = pi_rgamma(half_d, bits) * parts.D;
  const MC gap = s - half_d;
  r.at_pole = gap.re == 0 && gap.im == 0;
  // pi^s / Gamma(s + 1) written as pi^{s+1} / Gamma(s + 1) / pi
  MC value = pi_rgamma(s, bits) * parts.sums - pi_rgamma(s + MC(Real(1)), bits) * rpow(pi(), MC(Real(-1)));
  if (r.at_pole) {
    // Constant term of D pi^s / (Gamma(s) (s - d/2)) is D times the derivative of pi^s / Gamma(s).
    const Real h = boost::multiprecision::ldexp(Real(1), -bits / 3);
    const MC deriv = (pi_rgamma(s + MC(h), bits) - pi_rgamma(s - MC(h), bits)) * (1 / (2 * h));
    value = value + deriv * parts.D;
  } else {
    value = value + pi_rgamma(s, bits) * parts.D / gap;
  }
  r.value = value;
  r.bound = parts.bound * std::max(1.0, abs(pi_rgamma(s, bits)).convert_to<double>());
  return r;
}

}  // namespace

EpsteinOracleResult epstein_oracle(const QuadraticForm& q, cdouble s_in, const OracleConfig& cfg) {
  if (q.dimension() > 3) throw PreconditionError("epstein_oracle: d <= 3");
  PrecisionScope scope(cfg.precision_bits);
  check_precision(cfg, "epstein_oracle");
  const FormData f = form_data(q);
  const MC s(s_in);
  const auto mp = epstein_mp(f, s, epstein_boxes(f, s, 0.0, cfg), cfg.precision_bits);
  EpsteinOracleResult r;
  r.value = mp.value.to_complex();
  r.s_residue_at_d_half = mp.residue.to_complex();
  r.at_pole = mp.at_pole;
  r.error_bound = mp.bound;
  check_bound(r.error_bound, cfg, "epstein_oracle");
  return r;
}

OracleValue epstein_oracle_derivative(const QuadraticForm& q, cdouble s_in, const OracleConfig& cfg) {
  if (q.dimension() > 3) throw PreconditionError("epstein_oracle_derivative: d <= 3");
  PrecisionScope scope(cfg.precision_bits);
  check_precision(cfg, "epstein_oracle_derivative");
  const int bits = cfg.precision_bits;
  const FormData f = form_data(q);
  const MC s(s_in);
  // One box for both evaluations, valid on the unit disc around s; the
  // truncation error is analytic there, so Cauchy's estimate bounds its derivative.
  const auto box = epstein_boxes(f, s, 1.0, cfg);
  const Real h = boost::multiprecision::ldexp(Real(1), -bits / 4);
  const auto plus = epstein_mp(f, s + MC(h), box, bits), minus = epstein_mp(f, s - MC(h), box, bits);
  const double disc_scale = std::max({1.0, abs(pi_rgamma(s + MC(Real(1)), bits)).convert_to<double>(),
                                      abs(pi_rgamma(s - MC(Real(1)), bits)).convert_to<double>()});
  OracleValue v;
  v.value = ((plus.value - minus.value) * (1 / (2 * h))).to_complex();
  v.error_bound = std::max(plus.bound, minus.bound) * disc_scale + std::ldexp(1.0, -bits / 2);
  check_bound(v.error_bound, cfg, "epstein_oracle_derivative");
  return v;
}

namespace {

// sum_{n=0}^{N-1} (n+p)^{-s} + Euler-Maclaurin tail from N + p, without the
// (N+p)^{1-s}/(s-1) term, which the callers add (it has the pole at s = 1).
struct HurwitzPieces {
  MC head;
  Real x;  // N + p
  double bound;
};

HurwitzPieces hurwitz_pieces(const MC& s, const Real& p, const OracleConfig& cfg) {
  const int bits = cfg.precision_bits;
  const double sabs = abs(s).convert_to<double>();
  const long N = cfg.truncation > 0 ? cfg.truncation : static_cast<long>(std::ceil(sabs + bits / 4.0)) + 16;
  HurwitzPieces out;
  for (long n = 0; n < N; ++n) out.head = out.head + rpow(Real(n) + p, -s);
  out.x = Real(N) + p;
  out.head = out.head + rpow(out.x, -s) * Real(0.5);
  // B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}
  MC rising = s;  // (s)_1
  Real fact = 2;  // (2k)!
  const Real x2 = out.x * out.x;
  MC xpow = rpow(out.x, -s - MC(Real(1)));
  const double sigma = s.re.convert_to<double>();
  double bound = INFINITY;
  for (int k = 1; k < 400; ++k) {
    const MC term = rising * xpow * (from_rational(bernoulli_number(2 * k)) / fact);
    out.head = out.head + term;
    // Remainder after k terms: |(s)_{2k+1} B_{2k+2} / (2k+2)! x^{-sigma-2k-1} / (sigma+2k+1)|
    MC next_rising = rising * (s + MC(Real(2 * k - 1))) * (s + MC(Real(2 * k)));
    const Real next_fact = fact * (2 * k + 1) * (2 * k + 2);
    const double denom = sigma + 2 * k + 1;
    if (denom > 0) {
      const Real est = abs(next_rising) * abs(from_rational(bernoulli_number(2 * k + 2))) / next_fact *
                       boost::multiprecision::pow(out.x, -(sigma + 2 * k + 1)) / denom;
      bound = est.convert_to<double>();
      if (next_rising.re == 0 && next_rising.im == 0) bound = 0;
      if (bound < 1e-3 * cfg.target_tol && bound < std::ldexp(1.0, -bits + 8)) break;
    }
    rising = next_rising;
    fact = next_fact;
    xpow = xpow / x2;
  }
  out.bound = bound;
  return out;
}

}  // namespace

OracleValue hurwitz_zeta_oracle(cdouble s_in, double p, const OracleConfig& cfg) {
  if (!(p > 0)) throw PreconditionError("hurwitz_zeta_oracle: p must be positive");
  if (s_in == cdouble(1.0)) throw DomainError("hurwitz_zeta_oracle: pole at s = 1");
  PrecisionScope scope(cfg.precision_bits);
  check_precision(cfg, "hurwitz_zeta_oracle");
  const MC s(s_in);
  const auto pieces = hurwitz_pieces(s, Real(p), cfg);
  const MC one(Real(1));
  const MC value = pieces.head + rpow(pieces.x, one - s) / (s - one);
  check_bound(pieces.bound, cfg, "hurwitz_zeta_oracle");
  return {value.to_complex(), pieces.bound};
}

OracleValue riemann_zeta_oracle(cdouble s, const OracleConfig& cfg) { return hurwitz_zeta_oracle(s, 1.0, cfg); }

OracleValue dirichlet_beta_oracle(cdouble s_in, const OracleConfig& cfg) {
  PrecisionScope scope(cfg.precision_bits);
  check_precision(cfg, "dirichlet_beta_oracle");
  const MC s(s_in);
  // beta(s) = 4^{-s} (zeta(s, 1/4) - zeta(s, 3/4)); the pole terms are combined.
  const auto a = hurwitz_pieces(s, Real(0.25), cfg), b = hurwitz_pieces(s, Real(0.75), cfg);
  const MC one(Real(1));
  MC pole_terms;
  if (s_in == cdouble(1.0))
    pole_terms = MC(boost::multiprecision::log(b.x / a.x));
  else
    pole_terms = (rpow(a.x, one - s) - rpow(b.x, one - s)) / (s - one);
  const MC value = rpow(Real(4), -s) * (a.head - b.head + pole_terms);
  const double bound = (a.bound + b.bound) * abs(rpow(Real(4), -s)).convert_to<double>();
  check_bound(bound, cfg, "dirichlet_beta_oracle");
  return {value.to_complex(), bound};
}

OracleValue euler_gamma_oracle(const OracleConfig& cfg) {
  PrecisionScope scope(cfg.precision_bits);
  check_precision(cfg, "euler_gamma_oracle");
  // zeta(s) - 1/(s-1) at s = 1: the EM pieces plus the limit of (N^{1-s} - 1)/(s-1) = -log N.
  const auto pieces = hurwitz_pieces(MC(Real(1)), Real(1), cfg);
  const MC value = pieces.head - MC(boost::multiprecision::log(pieces.x));
  check_bound(pieces.bound, cfg, "euler_gamma_oracle");
  return {value.to_complex(), pieces.bound};
}

}  // namespace symzeta
