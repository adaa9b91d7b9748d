#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "symzeta/jet.hpp"

namespace symzeta {

using cdouble = std::complex<double>;
using Point = std::span<const double>;
using Evaluator = std::function<cdouble(Point)>;
using JetMap = std::function<ComplexJet(const ComplexJet&)>;

// Orders within this distance of an integer are treated as integer orders.
inline constexpr double kNearIntegerTol = 1e-6;

bool is_near_integer(cdouble a, double tol = kNearIntegerTol);
double euclidean_norm(Point x);

// Radial cutoff chi(|x|): 0 for |x| <= r0, 1 for |x| >= r1, with the smooth bridge
// psi(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}) in between. The "none" cutoff is
// identically 1 and is used for pure homogeneous functions.
class CutoffFunction {
 public:
  CutoffFunction() : CutoffFunction(0.5, 1.0) {}
  CutoffFunction(double r0, double r1);
  static CutoffFunction none();

  double r0() const { return r0_; }
  double r1() const { return r1_; }
  bool is_none() const { return none_; }

  static double bridge(double u);
  double operator()(double radius) const;
  double at(Point x) const { return (*this)(euclidean_norm(x)); }
  RealJet on_radius(const RealJet& radius) const;

 private:
  double r0_ = 0.5;
  double r1_ = 1.0;
  bool none_ = false;
};

struct HomogeneousComponent {
  cdouble degree;
  // Values on the unit sphere; empty means the zero component.
  Evaluator profile;

  bool is_zero() const { return !profile; }
  // |x|^degree * profile(x/|x|) for x != 0.
  cdouble value(Point x) const;
};

// Remainder r(x) with |r(x)| <= C (1+|x|)^decay. Compactly supported remainders
// set decay to -infinity and record a radius containing the support.
struct Remainder {
  Evaluator value;
  double decay = -std::numeric_limits<double>::infinity();
  double support_radius = 0.0;
  JetMap jet;  // optional, one-dimensional symbols only

  bool compact() const { return support_radius > 0.0; }
};

class QuadraticForm {
 public:
  explicit QuadraticForm(std::vector<std::vector<double>> matrix);
  static QuadraticForm identity(int dim);

  int dimension() const { return static_cast<int>(a_.size()); }
  double entry(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<double>>& matrix() const { return a_; }
  double operator()(Point x) const;
  double determinant() const { return det_; }
  double min_eigenvalue() const { return lambda_min_; }
  double max_eigenvalue() const { return lambda_max_; }
  QuadraticForm inverse() const;
  bool is_identity() const;
  // Smallest M in 1..64 such that M*q takes integer values on the lattice, or 0.
  long integer_scale() const;

 private:
  std::vector<std::vector<double>> a_;
  double det_ = 1.0;
  double lambda_min_ = 1.0;
  double lambda_max_ = 1.0;
};

// Fast-path description x -> scale * q(x)^{-s} * |x|^{-w}, exact for |x| >= radius.
struct PowerLaw {
  QuadraticForm form;
  cdouble s;
  cdouble w{0.0, 0.0};
  cdouble scale{1.0, 0.0};
  double radius = 1.0;

  cdouble value(Point x) const;
};

class ClassicalSymbol {
 public:
  // components[j] has degree order - j; empty profiles stand for zero components.
  ClassicalSymbol(int dim, cdouble order, std::vector<HomogeneousComponent> components,
                  CutoffFunction cutoff = CutoffFunction(), std::optional<Remainder> remainder = {});

  int dimension() const { return dim_; }
  cdouble order() const { return order_; }
  bool is_integer_order() const { return is_near_integer(order_); }
  const std::vector<HomogeneousComponent>& components() const { return components_; }
  const CutoffFunction& cutoff() const { return cutoff_; }
  const std::optional<Remainder>& remainder() const { return remainder_; }
  const std::optional<PowerLaw>& power_law() const { return power_law_; }

  ClassicalSymbol with_power_law(PowerLaw law) const;

  cdouble evaluate(Point x) const;
  cdouble operator()(Point x) const { return evaluate(x); }
  cdouble evaluate(std::initializer_list<double> x) const;

  // Taylor jet of the one-dimensional symbol at a real point.
  ComplexJet evaluate_jet(const RealJet& x) const;

  // Index j with degree order - j equal to -dimension, if any.
  std::optional<std::size_t> residue_component() const;

 private:
  int dim_;
  cdouble order_;
  std::vector<HomogeneousComponent> components_;
  CutoffFunction cutoff_;
  std::optional<Remainder> remainder_;
  std::optional<PowerLaw> power_law_;
};

// z -> sigma(z) with sigma(z)(x) = (1 - chi_R) sigma + chi_R sigma (|x|/scale)^{b z}.
class HolomorphicFamily {
 public:
  HolomorphicFamily(ClassicalSymbol base, double slope, CutoffFunction family_cutoff, double scale = 1.0);

  const ClassicalSymbol& base() const { return base_; }
  double slope() const { return slope_; }
  double scale() const { return scale_; }
  const CutoffFunction& family_cutoff() const { return chi_; }
  int dimension() const { return base_.dimension(); }
  cdouble order_at(cdouble z) const { return base_.order() + slope_ * z; }

  cdouble evaluate(cdouble z, Point x) const;
  // Member at z represented as a classical symbol (same cutoff as the base).
  ClassicalSymbol at(cdouble z) const;
  // Derivative in z at z = 0, a log-homogeneous function: chi_R sigma b log(|x|/scale).
  cdouble derivative_at_zero(Point x) const;

 private:
  ClassicalSymbol base_;
  double slope_;
  CutoffFunction chi_;
  double scale_;
};

// Pointwise translate x -> sigma(x + p); not a classical-form object.
struct TranslatedSymbol {
  Evaluator evaluate;
  std::vector<double> shift;
  int dimension = 1;
  cdouble order;
  bool classical_form = false;
};

cdouble evaluate(const ClassicalSymbol& sigma, Point x);
TranslatedSymbol translate(const ClassicalSymbol& sigma, std::vector<double> p);
TranslatedSymbol translate(const TranslatedSymbol& tau, const std::vector<double>& p);

// k-th derivative of a one-dimensional symbol, valid for |x| >= r1.
std::function<cdouble(double)> derivative_1d(const ClassicalSymbol& sigma, int k);

HolomorphicFamily riesz_family(const ClassicalSymbol& sigma, double b);
HolomorphicFamily riesz_family(const ClassicalSymbol& sigma, double b, const CutoffFunction& family_cutoff,
                               double scale = 1.0);

// chi(x) q(x)^{-s}.
ClassicalSymbol quadratic_symbol(const QuadraticForm& q, cdouble s, const CutoffFunction& cutoff = {});
// chi(x) |x|^a.
ClassicalSymbol power_symbol(int dim, cdouble a, const CutoffFunction& cutoff = {});
// One-dimensional chi(x) x_+^a (zero for x < 0).
ClassicalSymbol one_sided_power_symbol(cdouble a, const CutoffFunction& cutoff = {});

// Linear combination of symbols with aligned degree sets (same dimension,
// orders differing by integers); the result uses the first symbol's cutoff.
ClassicalSymbol combine(const std::vector<std::pair<cdouble, ClassicalSymbol>>& terms);

}  // namespace symzeta
