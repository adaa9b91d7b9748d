// Finite parts fitted from integrals over growing domains.

#include <algorithm>
#include <cmath>

#include "symzeta/reg_integral.hpp"
#include "symzeta/reg_sum.hpp"

namespace symzeta {

FinitePartResult cutoff_integral_translated(const TranslatedSymbol& tau, const std::vector<double>& radii,
                                            const FitOptions& fit) {
  // The expansion coefficients grow like |shift|^j, so 1-D fits start well
  // beyond the shift; higher dimensions stay small for quadrature cost.
  double shift_norm = 0;
  for (double v : tau.shift) shift_norm = std::max(shift_norm, std::abs(v));
  std::vector<double> rs = radii;
  if (rs.empty()) {
    if (tau.dimension == 1)
      for (double r = std::max(32.0, 16 * shift_norm); rs.size() < 31; r += 16) rs.push_back(r);
    else
      for (double r = 8; r <= 64; r += 4) rs.push_back(r);
  }
  std::vector<QuadSample> samples;
  for (double r : rs) samples.push_back({r, QComplex(ball_integral_numeric(tau, r))});
  const int terms = std::min<int>(tau.dimension == 1 ? 10 : 6, static_cast<int>(rs.size()) - 3);
  return finite_part_extract(samples, expansion_model(tau.order, tau.dimension, terms), fit);
}

FinitePartResult supball_cutoff_integral(const ClassicalSymbol& sigma, const std::vector<double>& radii,
                                         const FitOptions& fit) {
  const std::vector<double> rs = radii.empty() ? std::vector<double>{4, 6, 8, 12, 16, 24, 32} : radii;
  std::vector<QuadSample> samples;
  for (double r : rs) samples.push_back({r, QComplex(supball_integral_numeric(sigma, r))});
  // Exact for R >= r1 when there is no remainder: one power per component.
  int terms = static_cast<int>(sigma.components().size());
  if (sigma.remainder()) terms = std::min<int>(6, static_cast<int>(rs.size()) - 3);
  return finite_part_extract(samples, expansion_model(sigma.order(), sigma.dimension(), std::max(terms, 1)), fit);
}

cdouble C_constant(const ClassicalSymbol& sigma, const std::vector<double>& shift, const LatticeOptions& opts) {
  const TranslatedSymbol tau = translate(sigma, shift);
  cdouble sum;
  if (sigma.dimension() == 1 && !sigma.is_integer_order())
    sum = cutoff_sum_1d(sigma, {}, shift[0]);
  else
    sum = cutoff_sum_lattice(tau, opts).constant;
  return sum - cutoff_integral_translated(tau).constant;
}

}  // namespace symzeta
