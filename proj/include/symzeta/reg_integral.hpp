#pragma once

#include <complex>
#include <vector>

#include "symzeta/symbols.hpp"

namespace symzeta {

// Quadrature on the unit sphere S^{d-1}. For d = 1 the "sphere" is {-1, +1}
// with counting measure.
struct SphereQuadrature {
  int dimension = 2;
  int level = 0;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;

  // Trapezoid (d = 2) or Gauss-Legendre tensor rules in the angles (d = 3, 4);
  // node counts double with each level.
  static SphereQuadrature make(int dim, int level);
  cdouble integrate(const Evaluator& f) const;
};

struct SphereIntegralOptions {
  double tol = 1e-13;
  int max_level = -1;  // -1 picks a dimension-dependent cap
};

cdouble sphere_integral(const Evaluator& f, int dim, const SphereIntegralOptions& opts = {});

// (2 pi)^{-d/2} times the sphere integral of the degree -d component.
cdouble noncommutative_residue(const ClassicalSymbol& sigma);

struct RegIntegralResult {
  cdouble value;
  cdouble remainder_part;
  cdouble ball_part;
  std::vector<cdouble> sphere_parts;  // one entry per component (0 for log components)
  bool had_log_obstruction = false;
  cdouble log_coefficient;  // sphere integral of the degree -d component
};

RegIntegralResult cutoff_integral(const ClassicalSymbol& sigma);

struct NumericIntegralOptions {
  double tol = 1e-13;
};

cdouble ball_integral_numeric(const ClassicalSymbol& sigma, double radius, const NumericIntegralOptions& opts = {});
cdouble ball_integral_numeric(const TranslatedSymbol& tau, double radius, const NumericIntegralOptions& opts = {});
cdouble supball_integral_numeric(const ClassicalSymbol& sigma, double radius,
                                 const NumericIntegralOptions& opts = {});
cdouble supball_integral_numeric(const TranslatedSymbol& tau, double radius,
                                 const NumericIntegralOptions& opts = {});

// Integral of an arbitrary evaluator over the whole space (polar coordinates).
cdouble whole_space_integral(const Evaluator& f, int dim, double decay, double support_radius = 0.0,
                             double tol = 1e-12);

// Hypercube [-half_width, half_width]^d.
struct HypercubeShape {
  double half_width = 1.0;
};

// Signed integral of the degree -d component over the cube minus the unit ball.
cdouble polytope_ball_correction(const ClassicalSymbol& sigma, const HypercubeShape& cube = {});

}  // namespace symzeta
