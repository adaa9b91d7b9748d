#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symzeta/errors.hpp"
#include "symzeta/exactnum.hpp"
#include "symzeta/quad.hpp"
#include "symzeta/symbols.hpp"

namespace symzeta {

// ---------------------------------------------------------------- Euler-Maclaurin

struct EMCheck {
  cdouble lhs;
  cdouble rhs;
  double gap = 0.0;
};

// Compares sum_{n=M}^N f(n) with the Euler-Maclaurin right-hand side of order K.
// Derivatives are read off Taylor jets of f.
EMCheck em_identity_check(const JetMap& f, long M, long N, int K);

struct EMParams {
  int K = 0;  // minimum Bernoulli correction order (even); 0 selects automatically

  static EMParams for_order(cdouble order, int dim = 1);
};

// Canonical regularized sum over Z of a one-dimensional symbol translated by
// shift (sum of sigma(n + shift)). Points with |n + shift| < X are summed
// directly; each homogeneous tail beyond X goes through Euler-Maclaurin.
// Nonzero shifts need non-integer order.
cdouble cutoff_sum_1d(const ClassicalSymbol& sigma, const EMParams& params = {}, double shift = 0.0);

// ---------------------------------------------------------------- fitting

struct AsymptoticModel {
  std::vector<cdouble> exponents;
  bool include_log = false;
  // Exponents equal to anchor + integer are formed exactly from the anchor
  // (defaults to the first exponent).
  std::optional<cdouble> anchor;

  void validate() const;
};

struct FinitePartResult {
  cdouble constant;
  cdouble log_coeff;
  std::vector<std::pair<cdouble, cdouble>> power_coeffs;  // (exponent, coefficient)
  double residual_norm = 0.0;
  double condition = 0.0;
  int samples = 0;
  int nmax = 0;
};

class PoorFitError : public Error {
 public:
  PoorFitError(const std::string& what, FinitePartResult best) : Error(what), best_(std::move(best)) {}
  const FinitePartResult& best_fit() const { return best_; }

 private:
  FinitePartResult best_;
};

struct FitOptions {
  double max_condition = 1e12;
  std::optional<double> residual_tol;  // absolute; unchecked when empty
};

struct QuadSample {
  double N;
  QComplex value;
};

FinitePartResult finite_part_extract(const std::vector<QuadSample>& samples, const AsymptoticModel& model,
                                     const FitOptions& opts = {});
FinitePartResult finite_part_extract(const std::vector<std::pair<double, cdouble>>& samples,
                                     const AsymptoticModel& model, const FitOptions& opts = {});

// Exponents a + d - j, j = 0..J (near-zero ones replaced by a log term).
AsymptoticModel expansion_model(cdouble order, int dim, int terms);

// ---------------------------------------------------------------- lattice sums

// Every integer radius in [lo, hi].
std::vector<int> radius_range(int lo, int hi);

enum class RadiusProfile { fast, standard, sparse };

// Sample radii for the given dimension; "sparse" is the documented geometric ladder.
std::vector<int> default_radii(int dim, RadiusProfile profile = RadiusProfile::standard);

struct LatticeOptions {
  std::vector<int> radii;  // empty selects default_radii(dim)
  int terms = -1;          // model size; -1 selects automatically
  FitOptions fit;
};

// Partial sums S(N) = sum_{|n|_sup <= N} sigma(n) for N = 0..nmax in binary128.
std::vector<QComplex> lattice_partial_sums(const ClassicalSymbol& sigma, int nmax);
std::vector<QComplex> lattice_partial_sums(const Evaluator& f, int dim, int nmax);

cdouble lattice_sum_supball(const ClassicalSymbol& sigma, int N);

FinitePartResult cutoff_sum_lattice(const ClassicalSymbol& sigma, const LatticeOptions& opts = {});
// Same for a translated (non-classical) evaluator of known order.
FinitePartResult cutoff_sum_lattice(const TranslatedSymbol& tau, const LatticeOptions& opts = {});

// Canonical sum minus cut-off integral (lattice pipeline for the sum).
cdouble C_constant(const ClassicalSymbol& sigma, const LatticeOptions& opts = {});

// fp as R -> infinity of the integral of a translated symbol over the ball of
// radius R, fitted against the exponents order + d - j. Empty radii select
// 8, 10, ..., 64.
FinitePartResult cutoff_integral_translated(const TranslatedSymbol& tau, const std::vector<double>& radii = {},
                                            const FitOptions& fit = {});
// fp as R -> infinity of the integral over the sup-norm ball [-R, R]^d.
// Empty radii select 4, 6, 8, 12, 16, 24, 32.
FinitePartResult supball_cutoff_integral(const ClassicalSymbol& sigma, const std::vector<double>& radii = {},
                                         const FitOptions& fit = {});
// Canonical sum minus cut-off integral of a translated symbol. One-dimensional
// translates of classical symbols go through Euler-Maclaurin, others through
// the lattice fit.
cdouble C_constant(const ClassicalSymbol& sigma, const std::vector<double>& shift, const LatticeOptions& opts = {});

// ---------------------------------------------------------------- polynomials

struct Polynomial {
  int dim = 1;
  std::map<std::vector<int>, Rational> terms;  // exponent multi-index -> coefficient

  int degree() const;
  Rational evaluate(const std::vector<long>& n) const;
  double evaluate(Point x) const;
};

// Exact sum over |n|_sup <= N by per-axis Faulhaber polynomials (no enumeration).
Rational kp_hypercube_polynomial_sum(const Polynomial& P, long N);
// Reference enumeration.
Rational enumerate_hypercube_polynomial_sum(const Polynomial& P, long N);
// Finite part of the hypercube sums read off the exact polynomial in N.
Rational polynomial_finite_part_exact(const Polynomial& P);
// Same finite part from the generic fit of partial sums (order = degree).
FinitePartResult cutoff_sum_lattice(const Polynomial& P, const LatticeOptions& opts = {});

}  // namespace symzeta
