// Riemann, Hurwitz, Epstein and torus zeta values from regularized sums.

#include "symzeta/zeta.hpp"

#include <cmath>
#include <numbers>

#include "symzeta/reg_integral.hpp"

namespace symzeta {

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::direct:
      return "direct";
    case Pipeline::em:
      return "em";
    case Pipeline::fp_lattice:
      return "fp_lattice";
    case Pipeline::oracle:
      return "oracle";
  }
  return "unknown";
}

namespace {

// The 1-D pipeline is cheap; 32 points push the aliasing from the pole at s = 1
// (distance 1 in z) below 1e-19.
constexpr int kOneDimSweepPoints = 32;

bool is_integer(cdouble s) { return s.imag() == 0.0 && std::abs(s.real() - std::round(s.real())) < 1e-12; }

ZetaResult from_sweep(const LaurentFit& fit, double factor, bool pole, Pipeline pipeline) {
  ZetaResult r;
  r.value = factor * fit.c0;
  r.is_pole = pole;
  r.diagnostics.pipeline = pipeline;
  r.diagnostics.residual = factor * fit.max_aliasing_estimate;
  r.diagnostics.swept = true;
  if (pole) r.residue_in_z = factor * fit.c_minus1;
  return r;
}

}  // namespace

ZetaResult riemann_zeta_reg(cdouble s) {
  const ClassicalSymbol sigma = power_symbol(1, -s);
  if (is_integer(s) && s.real() < 1.5) {
    // Integer order below the convergent range: read the constant term off a
    // Riesz sweep. At s = 1 the sweep is 2 zeta(1 + z), residue 2.
    SweepOptions opts;
    opts.pipeline = SumPipeline::euler_maclaurin;
    opts.npoints = kOneDimSweepPoints;
    const auto fit = zsweep_regularized_sum(riesz_family(sigma, -1.0), opts);
    const bool pole = std::lround(s.real()) == 1;
    ZetaResult r = from_sweep(fit, 0.5, pole, Pipeline::em);
    if (pole) r.diagnostics.s_residue = r.residue_in_z;
    return r;
  }
  ZetaResult r;
  r.value = 0.5 * cutoff_sum_1d(sigma);
  r.diagnostics.pipeline = Pipeline::em;
  return r;
}

namespace {

// sum_{n >= 0} (n + p)^{-s} for non-integer s through the translated one-sided symbol
// tau(x) = chi(x) x_+^{-s}, corrected on the points where chi is not 1.
cdouble hurwitz_noninteger(cdouble s, double p) {
  const ClassicalSymbol tau = one_sided_power_symbol(-s);
  const CutoffFunction& chi = tau.cutoff();
  cdouble value = cutoff_sum_1d(tau, {}, p);
  for (long n = static_cast<long>(std::floor(-p)); n < 0 || n + p < chi.r1(); ++n) {
    const double y = n + p;
    if (y <= 0) continue;
    const cdouble term = std::exp(-s * std::log(y));
    // n < 0 lies outside the Hurwitz range; n >= 0 needs the full term.
    value += (n < 0) ? -chi(y) * term : (1.0 - chi(y)) * term;
  }
  return value;
}

}  // namespace

ZetaResult hurwitz_zeta_reg(cdouble s, double p) {
  if (!(p > 0)) throw PreconditionError("hurwitz_zeta_reg: p must be positive");
  if (is_integer(s)) {
    // Contour average of the non-integer values around s.
    const auto fit =
        laurent_fit([&](cdouble z) { return hurwitz_noninteger(s + z, p); }, 0.25, kOneDimSweepPoints);
    const bool pole = std::lround(s.real()) == 1;
    ZetaResult r = from_sweep(fit, 1.0, pole, Pipeline::em);
    if (pole) r.diagnostics.s_residue = r.residue_in_z;
    return r;
  }
  ZetaResult r;
  r.value = hurwitz_noninteger(s, p);
  r.diagnostics.pipeline = Pipeline::em;
  return r;
}

// ---------------------------------------------------------------- Epstein zeta

cdouble quadratic_zeta_residue(const QuadraticForm& q) {
  const int d = q.dimension();
  if (d > 4) throw PreconditionError("quadratic_zeta_residue: d <= 4");
  return sphere_integral([&](Point w) { return cdouble(std::pow(q(w), -0.5 * d)); }, d);
}

namespace {

int default_nmax(int d) { return d == 1 ? 256 : (d == 2 ? 100 : 16); }

LatticeOptions lattice_options(int d, const ZetaOptions& opts) {
  LatticeOptions lo;
  const int nmax = opts.nmax > 0 ? opts.nmax : default_nmax(d);
  for (int n : default_radii(d, opts.profile))
    if (n <= nmax) lo.radii.push_back(n);
  return lo;
}

// Rigorous bound on sum_{|n|_sup > N} q(n)^{-Re s} for Re(2s) > d.
double tail_bound(const QuadraticForm& q, double sigma, int N) {
  const int d = q.dimension();
  return std::pow(q.min_eigenvalue(), -sigma) * 2.0 * d * std::pow(3.0, d - 1) * std::pow(N, d - 2 * sigma) /
         (2 * sigma - d);
}

}  // namespace

ZetaResult quadratic_zeta(const QuadraticForm& q, cdouble s, const ZetaOptions& opts) {
  const int d = q.dimension();
  if (d > 3) throw PreconditionError("quadratic_zeta: d <= 3");
  const int nmax = opts.nmax > 0 ? opts.nmax : default_nmax(d);
  const double excess = 2 * s.real() - d;

  if (excess > 0.5 && tail_bound(q, s.real(), nmax) < opts.tol) {
    ZetaResult r;
    r.value = lattice_sum_supball(quadratic_symbol(q, s), nmax);
    r.diagnostics.pipeline = Pipeline::direct;
    r.diagnostics.residual = tail_bound(q, s.real(), nmax);
    r.diagnostics.nmax = nmax;
    return r;
  }

  const LatticeOptions lo = lattice_options(d, opts);
  const cdouble order = -2.0 * s;
  const double integer_gap = std::abs(order - std::round(order.real()));
  const bool pole = std::abs(2.0 * s - static_cast<double>(d)) < 1e-12;

  if (!pole && integer_gap > 0.1) {
    const auto fit = cutoff_sum_lattice(quadratic_symbol(q, s), lo);
    ZetaResult r;
    r.value = fit.constant;
    r.diagnostics.pipeline = Pipeline::fp_lattice;
    r.diagnostics.residual = fit.residual_norm;
    r.diagnostics.condition = fit.condition;
    r.diagnostics.nmax = fit.nmax;
    return r;
  }

  // Near-integer order: contour in z over the members q^{-(s + z/2)}, whose
  // order is -2s - z. The only pole of the map is at 2s + z = d.
  double radius = opts.sweep_radius;
  if (!pole) radius = std::min(radius, 0.25 * std::abs(2.0 * s - static_cast<double>(d)));
  double condition = 0.0, residual = 0.0;
  const auto fit = laurent_fit(
      [&](cdouble z) {
        const auto f = cutoff_sum_lattice(quadratic_symbol(q, s + 0.5 * z), lo);
        condition = std::max(condition, f.condition);
        residual = std::max(residual, f.residual_norm);
        return f.constant;
      },
      radius, opts.sweep_points);
  if (fit.non_simple_pole) throw PoleOrderError("quadratic_zeta: pole of order > 1 detected");
  ZetaResult r = from_sweep(fit, 1.0, pole, Pipeline::fp_lattice);
  r.diagnostics.residual = std::max(residual, fit.max_aliasing_estimate);
  r.diagnostics.condition = condition;
  r.diagnostics.nmax = lo.radii.back();
  if (pole) r.diagnostics.s_residue = 0.5 * r.residue_in_z;
  return r;
}

cdouble C_of_power(const QuadraticForm& q, cdouble s, const ZetaOptions& opts) {
  if (s.real() > 0) throw PreconditionError("C_of_power: Re(s) must be <= 0");
  const int d = q.dimension();
  if (std::abs(2.0 * s - static_cast<double>(d)) < 1e-12) throw PreconditionError("C_of_power: 2s = d");
  const LatticeOptions lo = lattice_options(d, opts);
  // Pure power without cutoff; its value at n = 0 is taken as 0.
  auto defect = [&](cdouble t) {
    const ClassicalSymbol pure = quadratic_symbol(q, t, CutoffFunction::none());
    return cutoff_sum_lattice(pure, lo).constant - cutoff_integral(pure).value;
  };
  const cdouble order = -2.0 * s;
  if (std::abs(order - std::round(order.real())) > 0.1) return defect(s);
  // At integer order the value is that of the holomorphic map z -> C(q^{-(s + z/2)}).
  const double radius = std::min(opts.sweep_radius, 0.25 * std::abs(2.0 * s - static_cast<double>(d)));
  return laurent_fit([&](cdouble z) { return defect(s + 0.5 * z); }, radius, opts.sweep_points).c0;
}

// ---------------------------------------------------------------- torus

ZetaResult torus_zeta(int dim, cdouble s, const ZetaOptions& opts) {
  if (dim < 1 || dim > 3) throw PreconditionError("torus_zeta: 1 <= d <= 3");
  return quadratic_zeta(QuadraticForm::identity(dim), s, opts);
}

double torus_zeta_determinant(int dim, const ZetaOptions& opts) {
  if (dim < 1 || dim > 2) throw PreconditionError("torus_zeta_determinant: 1 <= d <= 2");
  auto central = [&](double h) {
    return (torus_zeta(dim, h, opts).value.real() - torus_zeta(dim, -h, opts).value.real()) / (2 * h);
  };
  const double coarse = central(1e-3), fine = central(5e-4);
  // The h^2 error term shrinks by 4 between the steps.
  const double derivative = (4 * fine - coarse) / 3;
  const double spread = std::abs(fine - coarse);
  if (spread > 1e-3 * std::max(1.0, std::abs(derivative)))
    throw AccuracyError("torus_zeta_determinant: derivative estimates disagree", spread);
  return std::exp(-derivative);
}

}  // namespace symzeta
