#pragma once

// High-precision reference values, computed without the regularization
// machinery: theta-function continuation for Epstein zeta and Euler-Maclaurin
// with explicit remainder bounds for Riemann, Hurwitz and Dirichlet beta.

#include <complex>

#include "symzeta/symbols.hpp"

namespace symzeta {

struct OracleConfig {
  int precision_bits = 160;  // at least 128
  int truncation = 0;        // lattice box half-width (Epstein) or EM cut N; 0 chooses automatically
  double target_tol = 1e-20;
};

struct OracleValue {
  cdouble value;
  double error_bound = 0.0;
};

struct EpsteinOracleResult {
  cdouble value;  // Laurent constant term when s = d/2
  cdouble s_residue_at_d_half;
  double error_bound = 0.0;
  bool at_pole = false;
};

EpsteinOracleResult epstein_oracle(const QuadraticForm& q, cdouble s, const OracleConfig& cfg = {});
// d/ds Z_q at s by a symmetric difference at high precision.
OracleValue epstein_oracle_derivative(const QuadraticForm& q, cdouble s, const OracleConfig& cfg = {});

OracleValue riemann_zeta_oracle(cdouble s, const OracleConfig& cfg = {});
OracleValue hurwitz_zeta_oracle(cdouble s, double p, const OracleConfig& cfg = {});
OracleValue dirichlet_beta_oracle(cdouble s, const OracleConfig& cfg = {});
// Euler's constant as the constant term of zeta at s = 1.
OracleValue euler_gamma_oracle(const OracleConfig& cfg = {});

}  // namespace symzeta
