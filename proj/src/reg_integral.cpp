#include "symzeta/reg_integral.hpp"

#include <algorithm>
#include <cmath>

#include "symzeta/errors.hpp"
#include "symzeta/quadrature.hpp"

namespace symzeta {

// ---------------------------------------------------------------- sphere quadrature

SphereQuadrature SphereQuadrature::make(int dim, int level) {
  if (dim < 1 || dim > 4) throw PreconditionError("SphereQuadrature: dimension must be in 1..4");
  SphereQuadrature q;
  q.dimension = dim;
  q.level = level;
  if (dim == 1) {
    q.nodes = {{-1.0}, {1.0}};
    q.weights = {1.0, 1.0};
    return q;
  }
  if (dim == 2) {
    const int m = 8 << level;
    for (int k = 0; k < m; ++k) {
      const double th = 2 * M_PI * k / m;
      q.nodes.push_back({std::cos(th), std::sin(th)});
      q.weights.push_back(2 * M_PI / m);
    }
    return q;
  }
  const int n = 4 << level;
  const int m = 2 * n;
  const auto& gl = gauss_legendre(n);
  if (dim == 3) {
    for (int i = 0; i < n; ++i) {
      const double u = gl.nodes[i], st = std::sqrt(1 - u * u);
      for (int k = 0; k < m; ++k) {
        const double ph = 2 * M_PI * k / m;
        q.nodes.push_back({st * std::cos(ph), st * std::sin(ph), u});
        q.weights.push_back(gl.weights[i] * 2 * M_PI / m);
      }
    }
    return q;
  }
  // d = 4: (cos psi, sin psi cos th, sin psi sin th cos ph, sin psi sin th sin ph)
  for (int a = 0; a < n; ++a) {
    const double psi = 0.5 * M_PI * (gl.nodes[a] + 1);
    const double wpsi = 0.5 * M_PI * gl.weights[a] * std::sin(psi) * std::sin(psi);
    for (int i = 0; i < n; ++i) {
      const double u = gl.nodes[i], st = std::sqrt(1 - u * u);
      for (int k = 0; k < m; ++k) {
        const double ph = 2 * M_PI * k / m;
        const double sp = std::sin(psi);
        q.nodes.push_back({std::cos(psi), sp * u, sp * st * std::cos(ph), sp * st * std::sin(ph)});
        q.weights.push_back(wpsi * gl.weights[i] * 2 * M_PI / m);
      }
    }
  }
  return q;
}

cdouble SphereQuadrature::integrate(const Evaluator& f) const {
  // Neumaier summation; fine 4-D rules have ~10^5 nodes.
  double sum[2] = {0, 0}, comp[2] = {0, 0};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cdouble term = weights[i] * f(Point(nodes[i]));
    const double parts[2] = {term.real(), term.imag()};
    for (int c = 0; c < 2; ++c) {
      const double t = sum[c] + parts[c];
      comp[c] += std::abs(sum[c]) >= std::abs(parts[c]) ? (sum[c] - t) + parts[c] : (parts[c] - t) + sum[c];
      sum[c] = t;
    }
  }
  return {sum[0] + comp[0], sum[1] + comp[1]};
}

cdouble sphere_integral(const Evaluator& f, int dim, const SphereIntegralOptions& opts) {
  if (dim < 1 || dim > 4) throw PreconditionError("sphere_integral: dimension must be in 1..4");
  if (dim == 1) return SphereQuadrature::make(1, 0).integrate(f);
  int max_level = opts.max_level;
  if (max_level < 0) max_level = dim == 2 ? 13 : (dim == 3 ? 6 : 4);
  cdouble prev = SphereQuadrature::make(dim, 0).integrate(f);
  double diff = 0;
  for (int level = 1; level <= max_level; ++level) {
    const cdouble cur = SphereQuadrature::make(dim, level).integrate(f);
    diff = std::abs(cur - prev);
    if (diff <= opts.tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw AccuracyError("sphere_integral: refinement did not converge", diff);
}

cdouble noncommutative_residue(const ClassicalSymbol& sigma) {
  const auto j = sigma.residue_component();
  if (!j) return 0.0;
  const int d = sigma.dimension();
  const cdouble s = sphere_integral(sigma.components()[*j].profile, d);
  return s / std::pow(2 * M_PI, 0.5 * d);
}

// ---------------------------------------------------------------- radial integrals

namespace {

// int_{lo}^{hi} chi(r) r^p dr with lo >= 0.
cdouble radial_integral(cdouble p, const CutoffFunction& chi, double lo, double hi, double tol) {
  if (hi <= lo) return 0.0;
  auto power_antiderivative = [p](double a, double b) -> cdouble {
    const cdouble e = p + 1.0;
    if (std::abs(e) < 1e-14) return std::log(b / a);
    const cdouble fb = std::exp(e * std::log(b)) / e;
    const cdouble fa = a > 0 ? std::exp(e * std::log(a)) / e : cdouble(0.0);
    return fb - fa;
  };
  if (chi.is_none()) {
    if (lo == 0 && (p + 1.0).real() <= 0) throw PreconditionError("radial integral diverges at the origin");
    return power_antiderivative(lo, hi);
  }
  cdouble total = 0.0;
  const double a = std::max(lo, chi.r0());
  const double b = std::min(hi, chi.r1());
  if (b > a) {
    auto f = [&](double r) { return chi(r) * std::exp(p * std::log(r)); };
    total += integrate_adaptive(f, a, b, tol).value;
  }
  const double c = std::max(lo, chi.r1());
  if (hi > c) total += power_antiderivative(c, hi);
  return total;
}

std::vector<cdouble> component_sphere_integrals(const ClassicalSymbol& sigma) {
  std::vector<cdouble> out;
  for (const auto& c : sigma.components())
    out.push_back(c.is_zero() ? cdouble(0.0) : sphere_integral(c.profile, sigma.dimension()));
  return out;
}

// int_0^R f(r w) r^{d-1} dr, split into unit pieces.
cdouble radial_line(const Evaluator& f, const std::vector<double>& w, double lo, double hi, double tol) {
  const int d = static_cast<int>(w.size());
  std::vector<double> x(d);
  auto g = [&](double r) {
    for (int i = 0; i < d; ++i) x[i] = r * w[i];
    return f(Point(x)) * std::pow(r, d - 1);
  };
  std::vector<double> cuts;
  for (double c = std::floor(lo) + 0.5; c < hi; c += 0.5) cuts.push_back(c);
  return integrate_adaptive(g, lo, hi, tol, cuts).value;
}

}  // namespace

cdouble whole_space_integral(const Evaluator& f, int dim, double decay, double support_radius, double tol) {
  const bool compact = support_radius > 0;
  if (!compact && !(decay < -dim)) throw PreconditionError("whole_space_integral: integrand decays too slowly");
  auto tail = [&](const std::vector<double>& w) -> cdouble {
    // int_1^inf f(r w) r^{d-1} dr with r = 1/t
    const int d = static_cast<int>(w.size());
    std::vector<double> x(d);
    auto g = [&](double t) {
      const double r = 1.0 / t;
      for (int i = 0; i < d; ++i) x[i] = r * w[i];
      return f(Point(x)) * std::pow(r, d - 1) / (t * t);
    };
    return integrate_adaptive(g, 0.0, 1.0, tol, {0.5, 0.25, 0.125, 0.0625}).value;
  };
  auto along = [&](Point w) -> cdouble {
    std::vector<double> dir(w.begin(), w.end());
    if (compact) return radial_line(f, dir, 0.0, support_radius, tol);
    return radial_line(f, dir, 0.0, 1.0, tol) + tail(dir);
  };
  if (dim == 1) {
    const double up[1] = {1.0}, down[1] = {-1.0};
    return along(Point(up, 1)) + along(Point(down, 1));
  }
  SphereIntegralOptions opts;
  opts.tol = std::max(tol, 1e-12);
  return sphere_integral(along, dim, opts);
}

// ---------------------------------------------------------------- cut-off integral

RegIntegralResult cutoff_integral(const ClassicalSymbol& sigma) {
  const int d = sigma.dimension();
  if (d > 4) throw PreconditionError("cutoff_integral: dimension must be at most 4");
  RegIntegralResult res;
  if (const auto& rem = sigma.remainder()) {
    if (!rem->compact() && !(rem->decay < -d))
      throw PreconditionError("cutoff_integral: remainder decay must be below -d; include more components");
    res.remainder_part = whole_space_integral(rem->value, d, rem->decay, rem->support_radius);
  }
  const auto sphere = component_sphere_integrals(sigma);
  const auto& comps = sigma.components();
  for (std::size_t j = 0; j < comps.size(); ++j) {
    res.sphere_parts.push_back(0.0);
    if (comps[j].is_zero()) continue;
    const cdouble shifted = comps[j].degree + static_cast<double>(d);
    if (sigma.cutoff().is_none() && shifted.real() <= 0 && !is_near_integer(shifted))
      throw PreconditionError("cutoff_integral: pure homogeneous term not integrable at the origin");
    if (is_near_integer(shifted) && std::lround(shifted.real()) == 0) {
      res.had_log_obstruction = true;
      res.log_coefficient += sphere[j];
      if (sigma.cutoff().is_none())
        throw PreconditionError("cutoff_integral: degree -d term needs a cutoff at the origin");
      res.ball_part += sphere[j] * radial_integral(comps[j].degree + static_cast<double>(d - 1), sigma.cutoff(),
                                                   0.0, 1.0, 1e-14);
      continue;
    }
    res.ball_part +=
        sphere[j] * radial_integral(comps[j].degree + static_cast<double>(d - 1), sigma.cutoff(), 0.0, 1.0, 1e-14);
    res.sphere_parts[j] = -sphere[j] / shifted;
  }
  res.value = res.remainder_part + res.ball_part;
  for (const auto& v : res.sphere_parts) res.value += v;
  return res;
}

// ---------------------------------------------------------------- numeric ball integrals

namespace {

cdouble generic_ball(const Evaluator& f, int d, double radius, double tol) {
  if (d == 1) {
    auto g = [&](double x) { return f(Point(&x, 1)); };
    std::vector<double> cuts;
    for (double c = -std::floor(radius); c <= radius; c += 0.5) cuts.push_back(c);
    return integrate_adaptive(g, -radius, radius, tol, cuts).value;
  }
  SphereIntegralOptions opts;
  opts.tol = std::max(tol, 1e-12);
  auto along = [&](Point w) {
    std::vector<double> dir(w.begin(), w.end());
    return radial_line(f, dir, 0.0, radius, tol);
  };
  return sphere_integral(along, d, opts);
}

// Sum over the 2d pyramids with apex 0 over the faces of [-R, R]^d; radial_breaks
// are radii where the integrand changes character.
cdouble pyramid_integral(const Evaluator& f, int d, double radius, const std::vector<double>& radial_breaks,
                         double tol) {
  if (d < 2 || d > 3) throw PreconditionError("supball integral: generic path supports d in 2..3");
  std::vector<double> y(d), x(d);
  auto face_value = [&](int axis, double sign, const std::vector<double>& u) {
    int k = 0;
    for (int i = 0; i < d; ++i) y[i] = (i == axis) ? sign * radius : radius * u[k++];
    const double ny = euclidean_norm(Point(y));
    std::vector<double> cuts;
    for (double b : radial_breaks)
      if (b < ny) cuts.push_back(b / ny);
    // unit-length pieces along the ray
    for (double c = 1.0; c < ny; c += 1.0) cuts.push_back(c / ny);
    auto g = [&](double t) {
      for (int i = 0; i < d; ++i) x[i] = t * y[i];
      return f(Point(x)) * std::pow(t, d - 1);
    };
    return integrate_adaptive(g, 0.0, 1.0, tol, cuts).value * std::pow(radius, d);
  };
  auto faces_with_order = [&](int n) {
    const auto& gl = gauss_legendre(n);
    cdouble total = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      for (double sign : {-1.0, 1.0}) {
        if (d == 2) {
          for (int i = 0; i < n; ++i) total += gl.weights[i] * face_value(axis, sign, {gl.nodes[i]});
        } else {
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              total += gl.weights[i] * gl.weights[j] * face_value(axis, sign, {gl.nodes[i], gl.nodes[j]});
        }
      }
    }
    return total;
  };
  cdouble prev = faces_with_order(8);
  double diff = 0;
  const int max_n = d == 2 ? 256 : 64;
  for (int n = 16; n <= max_n; n *= 2) {
    const cdouble cur = faces_with_order(n);
    diff = std::abs(cur - prev);
    if (diff <= std::max(tol, 1e-13) * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw AccuracyError("supball integral: face quadrature did not converge", diff);
}

// Face quadrature with closed-form radial integrals along each ray; the face
// integrand is analytic, so Gauss-Legendre doubling converges fast.
cdouble supball_radial(const ClassicalSymbol& sigma, double radius, double tol) {
  const int d = sigma.dimension();
  const auto& comps = sigma.components();
  const double r1 = sigma.cutoff().is_none() ? 0.0 : sigma.cutoff().r1();
  std::vector<cdouble> powers, band;
  for (const auto& c : comps) {
    const cdouble p = c.degree + static_cast<double>(d - 1);
    powers.push_back(p);
    band.push_back(c.is_zero() ? cdouble(0.0) : radial_integral(p, sigma.cutoff(), 0.0, r1, 1e-14));
  }
  auto ray = [&](const std::vector<double>& y) {
    const double ny = euclidean_norm(Point(y));
    std::vector<double> unit(y);
    for (auto& v : unit) v /= ny;
    cdouble total = 0.0;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (comps[j].is_zero()) continue;
      const cdouble e = powers[j] + 1.0;
      const cdouble radial = band[j] + (std::abs(e) < 1e-14 ? cdouble(std::log(ny / r1))
                                                            : (std::exp(e * std::log(ny)) -
                                                               (r1 > 0 ? std::exp(e * std::log(r1)) : 0.0)) / e);
      total += comps[j].profile(Point(unit)) * radial;
    }
    return total * std::pow(radius / ny, d);
  };
  auto with_order = [&](int n) {
    const auto& gl = gauss_legendre(n);
    cdouble total = 0.0;
    std::vector<double> y(d);
    for (int axis = 0; axis < d; ++axis)
      for (double sign : {-1.0, 1.0}) {
        if (d == 2) {
          for (int i = 0; i < n; ++i) {
            y[axis] = sign * radius;
            y[1 - axis] = radius * gl.nodes[i];
            total += gl.weights[i] * ray(y);
          }
        } else {
          for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
              int slot = 0;
              const double u[2] = {gl.nodes[i], gl.nodes[k]};
              for (int a = 0; a < d; ++a) y[a] = a == axis ? sign * radius : radius * u[slot++];
              total += gl.weights[i] * gl.weights[k] * ray(y);
            }
        }
      }
    return total;
  };
  cdouble prev = with_order(8);
  double diff = 0;
  for (int n = 16; n <= 512; n *= 2) {
    const cdouble cur = with_order(n);
    diff = std::abs(cur - prev);
    if (diff <= std::max(tol, 1e-14) * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw AccuracyError("supball integral: face quadrature did not converge", diff);
}

}  // namespace

cdouble ball_integral_numeric(const ClassicalSymbol& sigma, double radius, const NumericIntegralOptions& opts) {
  const double r1 = sigma.cutoff().is_none() ? 0.0 : sigma.cutoff().r1();
  if (!(radius > r1)) throw PreconditionError("ball_integral_numeric: radius must exceed r1");
  if (!sigma.remainder()) {
    // Radial reduction: each component contributes (sphere integral) x (radial integral).
    const auto sphere = component_sphere_integrals(sigma);
    cdouble total = 0.0;
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      if (sphere[j] == 0.0) continue;
      const cdouble p = sigma.components()[j].degree + static_cast<double>(sigma.dimension() - 1);
      total += sphere[j] * radial_integral(p, sigma.cutoff(), 0.0, radius, opts.tol);
    }
    return total;
  }
  return generic_ball([&](Point x) { return sigma.evaluate(x); }, sigma.dimension(), radius, opts.tol);
}

cdouble ball_integral_numeric(const TranslatedSymbol& tau, double radius, const NumericIntegralOptions& opts) {
  return generic_ball(tau.evaluate, tau.dimension, radius, opts.tol);
}

cdouble supball_integral_numeric(const ClassicalSymbol& sigma, double radius, const NumericIntegralOptions& opts) {
  const double r1 = sigma.cutoff().is_none() ? 0.0 : sigma.cutoff().r1();
  if (!(radius > r1)) throw PreconditionError("supball_integral_numeric: radius must exceed r1");
  if (sigma.dimension() == 1) return ball_integral_numeric(sigma, radius, opts);
  if (!sigma.remainder() && sigma.dimension() <= 3) return supball_radial(sigma, radius, opts.tol);
  std::vector<double> breaks;
  if (!sigma.cutoff().is_none()) breaks = {sigma.cutoff().r0(), sigma.cutoff().r1()};
  return pyramid_integral([&](Point x) { return sigma.evaluate(x); }, sigma.dimension(), radius, breaks, opts.tol);
}

cdouble supball_integral_numeric(const TranslatedSymbol& tau, double radius, const NumericIntegralOptions& opts) {
  if (tau.dimension == 1) return ball_integral_numeric(tau, radius, opts);
  return pyramid_integral(tau.evaluate, tau.dimension, radius, {}, opts.tol);
}

// ---------------------------------------------------------------- polytope correction

cdouble polytope_ball_correction(const ClassicalSymbol& sigma, const HypercubeShape& cube) {
  const auto j = sigma.residue_component();
  if (!j) return 0.0;
  const int d = sigma.dimension();
  if (d > 3) throw PreconditionError("polytope_ball_correction: dimension must be at most 3");
  const double half = cube.half_width;
  if (!(half > 0)) throw PreconditionError("polytope_ball_correction: half width must be positive");
  const HomogeneousComponent& comp = sigma.components()[*j];
  const int inner_nodes = 40;

  // Signed radial integral from the unit sphere to the cube boundary along y.
  auto segment = [&](const std::vector<double>& y) -> cdouble {
    const double ny = euclidean_norm(Point(y));
    std::vector<double> x(d);
    auto g = [&](double t) {
      for (int i = 0; i < d; ++i) x[i] = t * y[i];
      return comp.value(Point(x)) * std::pow(t, d - 1);
    };
    return integrate_gauss(g, 1.0 / ny, 1.0, inner_nodes);
  };

  if (d == 1) {
    // Pyramids degenerate to the two segments [1, L] and [-L, -1].
    return segment({half}) * half + segment({-half}) * half;
  }

  auto with_order = [&](int n) {
    const auto& gl = gauss_legendre(n);
    cdouble total = 0.0;
    std::vector<double> y(d);
    for (int axis = 0; axis < d; ++axis) {
      for (double sign : {-1.0, 1.0}) {
        if (d == 2) {
          for (int i = 0; i < n; ++i) {
            y[axis] = sign * half;
            y[1 - axis] = half * gl.nodes[i];
            total += gl.weights[i] * segment(y);
          }
        } else {
          for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
              int slot = 0;
              const double u[2] = {gl.nodes[i], gl.nodes[k]};
              for (int a = 0; a < d; ++a) y[a] = a == axis ? sign * half : half * u[slot++];
              total += gl.weights[i] * gl.weights[k] * segment(y);
            }
          }
        }
      }
    }
    return total * std::pow(half, d);
  };
  cdouble prev = with_order(8);
  double diff = 0;
  for (int n = 16; n <= 256; n *= 2) {
    const cdouble cur = with_order(n);
    diff = std::abs(cur - prev);
    if (diff <= 1e-13 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw AccuracyError("polytope_ball_correction: quadrature did not converge", diff);
}

}  // namespace symzeta
