// Lattice sums over sup-norm hypercubes and their finite parts.

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "symzeta/reg_integral.hpp"
#include "symzeta/reg_sum.hpp"

namespace symzeta {

std::vector<int> radius_range(int lo, int hi) {
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::vector<int> default_radii(int dim, RadiusProfile profile) {
  switch (profile) {
    case RadiusProfile::sparse:
      if (dim == 1) return {8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256};
      if (dim == 2) return {8, 12, 16, 24, 32, 48, 64};
      return {4, 6, 8, 12, 16};
    case RadiusProfile::fast:
      if (dim == 1) return radius_range(8, 64);
      if (dim == 2) return radius_range(8, 64);
      return radius_range(4, 12);
    case RadiusProfile::standard:
    default:
      if (dim == 1) return radius_range(16, 256);
      if (dim == 2) return radius_range(8, 100);
      return radius_range(4, 16);
  }
}

namespace {

// Calls visit(n, shell) for every n in [-nmax, nmax]^d in lexicographic order.
template <class Visit>
void for_each_point(int dim, int nmax, Visit&& visit) {
  std::vector<double> n(dim);
  if (dim == 1) {
    for (int a = -nmax; a <= nmax; ++a) {
      n[0] = a;
      visit(n, std::abs(a));
    }
  } else if (dim == 2) {
    for (int a = -nmax; a <= nmax; ++a)
      for (int b = -nmax; b <= nmax; ++b) {
        n[0] = a;
        n[1] = b;
        visit(n, std::max(std::abs(a), std::abs(b)));
      }
  } else if (dim == 3) {
    for (int a = -nmax; a <= nmax; ++a)
      for (int b = -nmax; b <= nmax; ++b)
        for (int c = -nmax; c <= nmax; ++c) {
          n[0] = a;
          n[1] = b;
          n[2] = c;
          visit(n, std::max({std::abs(a), std::abs(b), std::abs(c)}));
        }
  } else {
    throw PreconditionError("lattice sums support d <= 3");
  }
}

std::vector<QComplex> prefix(std::vector<QComplex> shells) {
  for (std::size_t m = 1; m < shells.size(); ++m) shells[m] += shells[m - 1];
  return shells;
}

// T[k] = k^{-e} for 1 <= k <= kmax, built multiplicatively from prime powers.
std::vector<QComplex> power_table(long kmax, const QComplex& e) {
  std::vector<QComplex> t(kmax + 1);
  std::vector<int> spf(kmax + 1, 0);
  for (long i = 2; i <= kmax; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= kmax; j += i)
      if (spf[j] == 0) spf[j] = static_cast<int>(i);
  }
  if (kmax >= 1) t[1] = QComplex(1);
  for (long k = 2; k <= kmax; ++k) {
    const long p = spf[k];
    t[k] = (p == k) ? qpow_neg(static_cast<quad>(k), e) : t[p] * t[k / p];
  }
  return t;
}

std::vector<QComplex> power_law_partial_sums(const ClassicalSymbol& sigma, const PowerLaw& law, int nmax) {
  const int d = sigma.dimension();
  const auto& q = law.form;
  std::vector<QComplex> shells(nmax + 1), inner(nmax + 1);
  const QComplex s(law.s);
  const QComplex half_w(0.5 * law.w);
  const bool has_w = law.w != 0.0;
  const long scale_int = q.integer_scale();

  auto is_inner = [&](const std::vector<double>& n) {
    double r2 = 0;
    for (double v : n) r2 += v * v;
    return r2 == 0 || r2 < law.radius * law.radius;
  };

  QComplex prefactor = QComplex(law.scale);
  if (scale_int > 0) {
    std::vector<long> a(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a[i * d + j] = std::lround(2.0 * scale_int * q.entry(i, j));
    // 2 M q(n) = n^T (2 M A) n is an integer.
    long bound = 0;
    for (long v : a) bound += std::labs(v);
    bound = bound * nmax * nmax / 2 + 1;
    const bool identity = q.is_identity();
    const long norm_bound = static_cast<long>(d) * nmax * nmax;
    std::vector<QComplex> t_form, t_norm;
    if (identity) {
      t_form = power_table(norm_bound, s + half_w);
    } else {
      t_form = power_table(bound, s);
      if (has_w) t_norm = power_table(norm_bound, half_w);
      // q^{-s} = (M q)^{-s} M^{s}
      prefactor = prefactor * qpow_neg(static_cast<quad>(scale_int), -s);
    }
    for_each_point(d, nmax, [&](const std::vector<double>& n, int shell) {
      if (is_inner(n)) {
        inner[shell] += QComplex(sigma.evaluate(Point(n)));
        return;
      }
      long norm2 = 0, form2 = 0;
      for (int i = 0; i < d; ++i) {
        const long ni = std::lround(n[i]);
        norm2 += ni * ni;
        for (int j = 0; j < d; ++j) form2 += a[i * d + j] * ni * std::lround(n[j]);
      }
      if (identity) {
        shells[shell] += t_form[norm2];
      } else {
        const long key = form2 / 2;
        shells[shell] += has_w ? t_form[key] * t_norm[norm2] : t_form[key];
      }
    });
  } else {
    for_each_point(d, nmax, [&](const std::vector<double>& n, int shell) {
      if (is_inner(n)) {
        inner[shell] += QComplex(sigma.evaluate(Point(n)));
        return;
      }
      quad qv = 0, norm2 = 0;
      for (int i = 0; i < d; ++i) {
        norm2 += static_cast<quad>(n[i]) * n[i];
        for (int j = 0; j < d; ++j) qv += static_cast<quad>(q.entry(i, j)) * n[i] * n[j];
      }
      const quad lq = logq(qv), ln = logq(norm2);
      shells[shell] += qexp(QComplex(-(s.re * lq + half_w.re * ln), -(s.im * lq + half_w.im * ln)));
    });
  }
  for (int m = 0; m <= nmax; ++m) shells[m] = shells[m] * prefactor + inner[m];
  return prefix(std::move(shells));
}

}  // namespace

std::vector<QComplex> lattice_partial_sums(const Evaluator& f, int dim, int nmax) {
  if (nmax < 0) throw PreconditionError("lattice_partial_sums: nmax must be nonnegative");
  std::vector<QComplex> shells(nmax + 1);
  for_each_point(dim, nmax, [&](const std::vector<double>& n, int shell) { shells[shell] += QComplex(f(Point(n))); });
  return prefix(std::move(shells));
}

std::vector<QComplex> lattice_partial_sums(const ClassicalSymbol& sigma, int nmax) {
  if (sigma.dimension() > 3) throw PreconditionError("lattice sums support d <= 3");
  if (sigma.power_law()) return power_law_partial_sums(sigma, *sigma.power_law(), nmax);
  return lattice_partial_sums([&](Point x) { return sigma.evaluate(x); }, sigma.dimension(), nmax);
}

cdouble lattice_sum_supball(const ClassicalSymbol& sigma, int N) {
  if (N < 1) throw PreconditionError("lattice_sum_supball: N must be positive");
  return lattice_partial_sums(sigma, N).back().to_complex();
}

namespace {

int automatic_terms(cdouble order, int dim, std::size_t nsamples) {
  const double top = order.real() + dim;
  const double floor_exp = dim == 1 ? -12.0 : (dim == 2 ? -8.0 : -4.0);
  int terms = static_cast<int>(std::floor(top - floor_exp)) + 1;
  const int cap_unknowns = std::min<int>(static_cast<int>(nsamples) - 2, dim == 3 ? 11 : 18);
  terms = std::min(terms, cap_unknowns - 2);
  return std::max(terms, 1);
}

FinitePartResult fit_partial_sums(const std::vector<QComplex>& sums, const std::vector<int>& radii, cdouble order,
                                  int dim, const LatticeOptions& opts) {
  std::vector<QuadSample> samples;
  for (int n : radii) samples.push_back({static_cast<double>(n), sums[n]});
  const int terms = opts.terms > 0 ? opts.terms : automatic_terms(order, dim, samples.size());
  return finite_part_extract(samples, expansion_model(order, dim, terms), opts.fit);
}

std::vector<int> checked_radii(const LatticeOptions& opts, int dim) {
  auto radii = opts.radii.empty() ? default_radii(dim) : opts.radii;
  if (!std::is_sorted(radii.begin(), radii.end()) || radii.front() < 1)
    throw PreconditionError("cutoff_sum_lattice: radii must be positive and increasing");
  return radii;
}

}  // namespace

FinitePartResult cutoff_sum_lattice(const ClassicalSymbol& sigma, const LatticeOptions& opts) {
  const int d = sigma.dimension();
  if (d > 3) throw PreconditionError("cutoff_sum_lattice: d <= 3");
  const auto radii = checked_radii(opts, d);
  const auto sums = lattice_partial_sums(sigma, radii.back());
  return fit_partial_sums(sums, radii, sigma.order(), d, opts);
}

FinitePartResult cutoff_sum_lattice(const TranslatedSymbol& tau, const LatticeOptions& opts) {
  if (tau.dimension > 3) throw PreconditionError("cutoff_sum_lattice: d <= 3");
  const auto radii = checked_radii(opts, tau.dimension);
  const auto sums = lattice_partial_sums(tau.evaluate, tau.dimension, radii.back());
  return fit_partial_sums(sums, radii, tau.order, tau.dimension, opts);
}

cdouble C_constant(const ClassicalSymbol& sigma, const LatticeOptions& opts) {
  return cutoff_sum_lattice(sigma, opts).constant - cutoff_integral(sigma).value;
}

}  // namespace symzeta
