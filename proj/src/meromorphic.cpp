// Laurent coefficients at z = 0 of regularized sums and integrals along families.

#include "symzeta/meromorphic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "symzeta/reg_integral.hpp"

namespace symzeta {

namespace {

struct Coefficients {
  cdouble c_minus2, c_minus1, c0;
  std::vector<cdouble> higher;
};

std::vector<cdouble> contour_values(const ComplexMap& F, double radius, int npoints) {
  std::vector<cdouble> values(npoints);
  detail::parallel_for(npoints, [&](std::size_t j) {
    const cdouble z = std::polar(radius, 2 * std::numbers::pi * static_cast<double>(j) / npoints);
    try {
      values[j] = F(z);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "contour evaluation failed at z = " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
          << "i: " << e.what();
      throw ContourError(msg.str(), z);
    }
    if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag()))
      throw ContourError("contour evaluation returned a non-finite value", z);
  });
  return values;
}

Coefficients coefficients(const std::vector<cdouble>& values, double radius, int higher_terms) {
  const int n = static_cast<int>(values.size());
  auto coef = [&](int k) {
    cdouble acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const cdouble z = std::polar(radius, 2 * std::numbers::pi * j / n);
      acc += values[j] * std::pow(z, -k);
    }
    return acc / static_cast<double>(n);
  };
  Coefficients c;
  c.c_minus2 = coef(-2);
  c.c_minus1 = coef(-1);
  c.c0 = coef(0);
  for (int k = 1; k <= higher_terms; ++k) c.higher.push_back(coef(k));
  return c;
}

}  // namespace

LaurentFit laurent_fit(const ComplexMap& F, double radius, int npoints, int higher_terms, double pole_order_tol) {
  if (!(radius > 0)) throw PreconditionError("laurent_fit: radius must be positive");
  if (npoints < 8 || (npoints & (npoints - 1)) != 0)
    throw PreconditionError("laurent_fit: npoints must be a power of two, at least 8");
  if (higher_terms < 0 || higher_terms > npoints / 2 - 3)
    throw PreconditionError("laurent_fit: too many higher coefficients for npoints");
  const auto outer_values = contour_values(F, radius, npoints);
  const auto outer = coefficients(outer_values, radius, higher_terms);
  const auto inner = coefficients(contour_values(F, 0.5 * radius, npoints), 0.5 * radius, 0);
  LaurentFit fit;
  fit.c_minus2 = outer.c_minus2;
  fit.c_minus1 = outer.c_minus1;
  fit.c0 = outer.c0;
  fit.higher = outer.higher;
  fit.radius = radius;
  fit.npoints = npoints;
  for (int j = 0; j < npoints; ++j)
    fit.samples.emplace_back(std::polar(radius, 2 * std::numbers::pi * static_cast<double>(j) / npoints), outer_values[j]);
  fit.max_aliasing_estimate = std::max(std::abs(outer.c_minus1 - inner.c_minus1), std::abs(outer.c0 - inner.c0));
  fit.non_simple_pole = std::abs(outer.c_minus2) > pole_order_tol * std::max(1.0, std::abs(outer.c_minus1));
  return fit;
}

namespace {

LaurentFit guarded_sweep(const ComplexMap& F, const SweepOptions& opts, const char* what) {
  auto fit = laurent_fit(F, opts.radius, opts.npoints, opts.higher_terms, opts.pole_order_tol);
  if (fit.non_simple_pole) {
    std::ostringstream msg;
    msg << what << ": pole of order > 1 at z = 0 (|c_-2| = " << std::abs(fit.c_minus2)
        << ", c_-1 = " << fit.c_minus1 << ")";
    throw PoleOrderError(msg.str());
  }
  return fit;
}

void check_family(const HolomorphicFamily& family) {
  if (family.slope() == 0.0) throw PreconditionError("sweep: family slope must be nonzero");
  if (family.dimension() > 3) throw PreconditionError("sweep: d <= 3");
}

// Poles sit where alpha(z) is an integer >= -d; the contour stays within a
// quarter of the distance to the nearest one other than z = 0.
SweepOptions fitted_radius(const HolomorphicFamily& family, SweepOptions opts) {
  const cdouble a = family.base().order();
  const double b = family.slope();
  double nearest = std::numeric_limits<double>::infinity();
  const double lo = -family.dimension();
  const double center = a.real();
  for (double k = std::max(lo, std::floor(center) - 3); k <= std::ceil(center) + 3; k += 1.0) {
    const cdouble zp = (cdouble(k) - a) / b;
    if (std::abs(zp) > 1e-9) nearest = std::min(nearest, std::abs(zp));
  }
  opts.radius = std::min(opts.radius, 0.25 * nearest);
  return opts;
}

}  // namespace

LaurentFit zsweep_regularized_sum(const HolomorphicFamily& family, const SweepOptions& opts) {
  check_family(family);
  if (opts.pipeline == SumPipeline::euler_maclaurin && family.dimension() != 1)
    throw PreconditionError("zsweep_regularized_sum: Euler-Maclaurin pipeline needs d = 1");
  ComplexMap F = [&](cdouble z) -> cdouble {
    const ClassicalSymbol member = family.at(z);
    if (opts.pipeline == SumPipeline::euler_maclaurin) return cutoff_sum_1d(member, opts.em);
    return cutoff_sum_lattice(member, opts.lattice).constant;
  };
  return guarded_sweep(F, fitted_radius(family, opts), "zsweep_regularized_sum");
}

LaurentFit zsweep_regularized_integral(const HolomorphicFamily& family, const SweepOptions& opts) {
  check_family(family);
  ComplexMap F = [&](cdouble z) { return cutoff_integral(family.at(z)).value; };
  return guarded_sweep(F, fitted_radius(family, opts), "zsweep_regularized_integral");
}

cdouble predicted_sweep_residue(const HolomorphicFamily& family) {
  const double d = family.dimension();
  return -std::pow(2 * std::numbers::pi, d / 2) * noncommutative_residue(family.base()) / family.slope();
}

namespace {

void check_comparable(const HolomorphicFamily& a, const HolomorphicFamily& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("compare_regularizations: dimension mismatch");
  if (std::abs(a.base().order() - b.base().order()) > 1e-12 || a.slope() != b.slope())
    throw PreconditionError("compare_regularizations: families need the same order function");
}

}  // namespace

cdouble compare_regularizations(const HolomorphicFamily& fam1, const HolomorphicFamily& fam2,
                                const SweepOptions& opts) {
  check_comparable(fam1, fam2);
  return zsweep_regularized_sum(fam1, opts).c0 - zsweep_regularized_sum(fam2, opts).c0;
}

cdouble predicted_regularization_difference(const HolomorphicFamily& fam1, const HolomorphicFamily& fam2) {
  check_comparable(fam1, fam2);
  // Far out sigma'_1(0) - sigma'_2(0) = b sigma (log scale_2 - log scale_1); the
  // cutoff bands only add compactly supported terms, which carry no residue.
  const double d = fam1.dimension();
  const cdouble res = noncommutative_residue(fam1.base());
  return -std::pow(2 * std::numbers::pi, d / 2) * (std::log(fam2.scale()) - std::log(fam1.scale())) * res;
}

}  // namespace symzeta
