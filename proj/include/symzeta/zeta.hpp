#pragma once

#include <complex>
#include <string>

#include "symzeta/meromorphic.hpp"
#include "symzeta/reg_sum.hpp"
#include "symzeta/symbols.hpp"

namespace symzeta {

enum class Pipeline { direct, em, fp_lattice, oracle };

std::string to_string(Pipeline p);

struct ZetaDiagnostics {
  Pipeline pipeline = Pipeline::em;
  double residual = 0.0;   // fit residual, tail bound or contour aliasing estimate
  double condition = 0.0;  // fit condition estimate (0 when no fit was made)
  cdouble s_residue;       // residue in the s variable when is_pole
  int nmax = 0;            // largest lattice radius used (0 for the 1-D pipeline)
  bool swept = false;      // value read off a contour in z
};

struct ZetaResult {
  cdouble value;  // Laurent constant term at a pole
  bool is_pole = false;
  cdouble residue_in_z;
  ZetaDiagnostics diagnostics;
};

struct ZetaOptions {
  int nmax = 0;                  // 0: 256 (d = 1), 100 (d = 2), 16 (d = 3)
  double tol = 1e-12;            // direct summation is used when the tail bound is below tol
  RadiusProfile profile = RadiusProfile::standard;
  double sweep_radius = 0.25;
  int sweep_points = 16;
};

// Riemann zeta as half the canonical sum of chi |x|^{-s} over Z.
ZetaResult riemann_zeta_reg(cdouble s);
// Hurwitz zeta sum_{n >= 0} (n + p)^{-s} from translated one-sided sums.
ZetaResult hurwitz_zeta_reg(cdouble s, double p);

// Epstein zeta sum_{n != 0} q(n)^{-s}, continued through finite parts.
ZetaResult quadratic_zeta(const QuadraticForm& q, cdouble s, const ZetaOptions& opts = {});
// Integral of q^{-d/2} over the unit sphere: the z-residue at 2s = d.
cdouble quadratic_zeta_residue(const QuadraticForm& q);
// Canonical sum minus cut-off integral of the pure power q^{-s} (Re s <= 0).
cdouble C_of_power(const QuadraticForm& q, cdouble s, const ZetaOptions& opts = {});

// Spectral zeta of the flat torus Laplacian on R^d / (2 pi Z)^d.
ZetaResult torus_zeta(int dim, cdouble s, const ZetaOptions& opts = {});
// exp(-zeta'(0)) with zeta'(0) from Richardson-combined central differences.
double torus_zeta_determinant(int dim, const ZetaOptions& opts = {});

}  // namespace symzeta
