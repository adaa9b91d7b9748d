#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "symzeta/reg_sum.hpp"
#include "symzeta/symbols.hpp"

namespace symzeta {

struct LaurentFit {
  cdouble c_minus1;
  cdouble c0;
  std::vector<cdouble> higher;  // c_1 .. c_m
  double radius = 0.0;
  int npoints = 0;
  double max_aliasing_estimate = 0.0;  // change of c_{-1}, c_0 when the radius is halved
  cdouble c_minus2;                    // probe for a double pole
  bool non_simple_pole = false;
  std::vector<std::pair<cdouble, cdouble>> samples;  // (z, F(z)) on the outer contour
};

using ComplexMap = std::function<cdouble(cdouble)>;

// Discrete contour averages c_k = mean F(z_j) z_j^{-k} on |z| = radius, repeated at
// radius / 2 for the aliasing estimate. npoints must be a power of two, at least 8.
LaurentFit laurent_fit(const ComplexMap& F, double radius, int npoints, int higher_terms = 3,
                       double pole_order_tol = 1e-6);

enum class SumPipeline { lattice, euler_maclaurin };

struct SweepOptions {
  double radius = 0.25;  // upper bound; sweeps shrink it to a quarter of the distance to the next pole
  int npoints = 16;
  int higher_terms = 3;
  double pole_order_tol = 1e-6;  // relative to max(1, |c_{-1}|)
  SumPipeline pipeline = SumPipeline::lattice;
  LatticeOptions lattice;
  EMParams em;
};

// Laurent data at z = 0 of z -> canonical sum of sigma(z). Throws PoleOrderError
// when a double pole is detected.
LaurentFit zsweep_regularized_sum(const HolomorphicFamily& family, const SweepOptions& opts = {});
// Same for z -> cut-off integral of sigma(z).
LaurentFit zsweep_regularized_integral(const HolomorphicFamily& family, const SweepOptions& opts = {});

// -(2 pi)^{d/2} res(sigma) / alpha'(0): the residue at z = 0 of either sweep.
cdouble predicted_sweep_residue(const HolomorphicFamily& family);

// c_0 of the sum sweep of fam1 minus that of fam2. Both families need the same
// base order, dimension and slope.
cdouble compare_regularizations(const HolomorphicFamily& fam1, const HolomorphicFamily& fam2,
                                const SweepOptions& opts = {});
// -(2 pi)^{d/2} res(sigma'_1(0) - sigma'_2(0)) / alpha'(0) for two Riesz-type families.
cdouble predicted_regularization_difference(const HolomorphicFamily& fam1, const HolomorphicFamily& fam2);

}  // namespace symzeta
