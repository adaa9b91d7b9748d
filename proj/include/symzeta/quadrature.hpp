#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace symzeta {

using cdouble = std::complex<double>;

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Memoized n-point rule (Newton iteration on P_n).
const GaussRule& gauss_legendre(int n);

cdouble integrate_gauss(const std::function<cdouble(double)>& f, double a, double b, int n);

struct AdaptiveResult {
  cdouble value;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on [a, b] split at the given interior breakpoints.
AdaptiveResult integrate_adaptive(const std::function<cdouble(double)>& f, double a, double b, double tol,
                                  const std::vector<double>& breakpoints = {});

}  // namespace symzeta
