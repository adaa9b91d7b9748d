// Least-squares finite-part extraction in binary128.

#include <algorithm>
#include <cmath>

#include "symzeta/reg_sum.hpp"

namespace symzeta {

void AsymptoticModel::validate() const {
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (std::abs(exponents[i]) < 1e-9) throw PreconditionError("AsymptoticModel: exponent too close to 0");
    for (std::size_t j = i + 1; j < exponents.size(); ++j)
      if (std::abs(exponents[i] - exponents[j]) <= 1e-9)
        throw PreconditionError("AsymptoticModel: exponents must be distinct");
  }
}

AsymptoticModel expansion_model(cdouble order, int dim, int terms) {
  AsymptoticModel m;
  m.anchor = order;
  for (int j = 0; j < terms; ++j) {
    const cdouble e = order + static_cast<double>(dim - j);
    if (std::abs(e) < kNearIntegerTol) {
      m.include_log = true;
      continue;
    }
    m.exponents.push_back(e);
  }
  return m;
}

namespace {

using QMatrix = std::vector<std::vector<quad>>;  // row-major

struct LeastSquares {
  std::vector<std::vector<quad>> solutions;  // one per right-hand side
  double condition = 0;
};

// Householder QR least squares for several right-hand sides; columns are
// scaled to unit max-norm first.
LeastSquares householder_solve(QMatrix a, std::vector<std::vector<quad>> rhs) {
  const std::size_t m = a.size(), n = a.front().size();
  std::vector<quad> scale(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) scale[j] = std::max(scale[j], fabsq(a[i][j]));
    if (scale[j] == 0) scale[j] = 1;
    for (std::size_t i = 0; i < m; ++i) a[i][j] /= scale[j];
  }
  for (std::size_t k = 0; k < n; ++k) {
    quad norm = 0;
    for (std::size_t i = k; i < m; ++i) norm += a[i][k] * a[i][k];
    norm = sqrtq(norm);
    if (norm == 0) continue;
    const quad alpha = a[k][k] > 0 ? -norm : norm;
    std::vector<quad> v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = a[i][k];
    v[0] -= alpha;
    quad vnorm2 = 0;
    for (const auto& x : v) vnorm2 += x * x;
    if (vnorm2 == 0) continue;
    auto reflect = [&](auto&& get) {
      quad dot = 0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * get(i);
      const quad f = 2 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i) get(i) -= f * v[i - k];
    };
    for (std::size_t j = k; j < n; ++j) reflect([&](std::size_t i) -> quad& { return a[i][j]; });
    for (auto& b : rhs) reflect([&](std::size_t i) -> quad& { return b[i]; });
  }
  LeastSquares out;
  for (const auto& b : rhs) {
    std::vector<quad> x(n, 0);
    for (std::size_t k = n; k-- > 0;) {
      quad acc = b[k];
      for (std::size_t j = k + 1; j < n; ++j) acc -= a[k][j] * x[j];
      x[k] = acc / a[k][k];
    }
    for (std::size_t j = 0; j < n; ++j) x[j] /= scale[j];
    out.solutions.push_back(std::move(x));
  }
  // Condition estimate ||R||_F ||R^{-1}||_F of the scaled system.
  quad rnorm = 0, inorm = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) rnorm += a[i][j] * a[i][j];
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<quad> col(n, 0);
    for (std::size_t k = n; k-- > 0;) {
      quad acc = (k == c) ? 1 : 0;
      for (std::size_t j = k + 1; j < n; ++j) acc -= a[k][j] * col[j];
      col[k] = acc / a[k][k];
      inorm += col[k] * col[k];
    }
  }
  out.condition = static_cast<double>(sqrtq(rnorm) * sqrtq(inorm));
  return out;
}

}  // namespace

FinitePartResult finite_part_extract(const std::vector<QuadSample>& samples, const AsymptoticModel& model,
                                     const FitOptions& opts) {
  model.validate();
  const std::size_t nexp = model.exponents.size();
  const std::size_t n = nexp + (model.include_log ? 1 : 0) + 1;
  const std::size_t m = samples.size();
  if (m < n + 2) throw PreconditionError("finite_part_extract: need at least #unknowns + 2 samples");
  for (std::size_t i = 1; i < m; ++i)
    if (!(samples[i].N > samples[i - 1].N)) throw PreconditionError("finite_part_extract: radii must increase");
  for (const auto& s : samples)
    if (!(s.N > 0)) throw PreconditionError("finite_part_extract: radii must be positive");

  bool real_exponents = true;
  for (const auto& e : model.exponents) real_exponents = real_exponents && e.imag() == 0.0;

  // Complex basis values, shared by both formulations.
  // Exponents a + integer are rebuilt in binary128 from the leading one: forming
  // them in double rounds a - j, and N^{e} at N ~ 256 magnifies that error far
  // beyond the finite part.
  std::vector<QComplex> qexponents;
  const cdouble anchor = model.anchor.value_or(nexp > 0 ? model.exponents.front() : cdouble(0.0));
  for (const auto& e : model.exponents) {
    const cdouble offset = e - anchor;
    const double k = std::round(offset.real());
    if (std::abs(offset - cdouble(k)) < 1e-9)
      qexponents.emplace_back(static_cast<quad>(anchor.real()) + k, static_cast<quad>(anchor.imag()));
    else
      qexponents.emplace_back(e.real(), e.imag());
  }
  std::vector<std::vector<QComplex>> basis(m, std::vector<QComplex>(n));
  for (std::size_t i = 0; i < m; ++i) {
    const quad ln = logq(static_cast<quad>(samples[i].N));
    for (std::size_t k = 0; k < nexp; ++k)
      basis[i][k] = qexp(QComplex(qexponents[k].re * ln, qexponents[k].im * ln));
    if (model.include_log) basis[i][nexp] = QComplex(ln);
    basis[i][n - 1] = QComplex(1);
  }

  std::vector<QComplex> coef(n);
  double condition = 0;
  if (real_exponents) {
    QMatrix a(m, std::vector<quad>(n));
    std::vector<std::vector<quad>> rhs(2, std::vector<quad>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) a[i][k] = basis[i][k].re;
      rhs[0][i] = samples[i].value.re;
      rhs[1][i] = samples[i].value.im;
    }
    const auto ls = householder_solve(std::move(a), std::move(rhs));
    for (std::size_t k = 0; k < n; ++k) coef[k] = QComplex(ls.solutions[0][k], ls.solutions[1][k]);
    condition = ls.condition;
  } else {
    // [Re A, -Im A; Im A, Re A] [x_r; x_i] = [b_r; b_i]
    QMatrix a(2 * m, std::vector<quad>(2 * n));
    std::vector<std::vector<quad>> rhs(1, std::vector<quad>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] = basis[i][k].re;
        a[i][k + n] = -basis[i][k].im;
        a[i + m][k] = basis[i][k].im;
        a[i + m][k + n] = basis[i][k].re;
      }
      rhs[0][i] = samples[i].value.re;
      rhs[0][i + m] = samples[i].value.im;
    }
    const auto ls = householder_solve(std::move(a), std::move(rhs));
    for (std::size_t k = 0; k < n; ++k) coef[k] = QComplex(ls.solutions[0][k], ls.solutions[0][k + n]);
    condition = ls.condition;
  }

  FinitePartResult out;
  out.condition = condition;
  out.samples = static_cast<int>(m);
  out.nmax = static_cast<int>(samples.back().N);
  for (std::size_t k = 0; k < nexp; ++k) out.power_coeffs.emplace_back(model.exponents[k], coef[k].to_complex());
  if (model.include_log) out.log_coeff = coef[nexp].to_complex();
  out.constant = coef[n - 1].to_complex();
  quad worst = 0;
  for (std::size_t i = 0; i < m; ++i) {
    QComplex fit(0);
    for (std::size_t k = 0; k < n; ++k) fit += basis[i][k] * coef[k];
    worst = std::max(worst, qabs(fit - samples[i].value));
  }
  out.residual_norm = static_cast<double>(worst);

  if (condition > opts.max_condition)
    throw IllConditionedError("finite_part_extract: fit matrix ill-conditioned", condition);
  if (opts.residual_tol && out.residual_norm > *opts.residual_tol)
    throw PoorFitError("finite_part_extract: residual above tolerance", out);
  return out;
}

FinitePartResult finite_part_extract(const std::vector<std::pair<double, cdouble>>& samples,
                                     const AsymptoticModel& model, const FitOptions& opts) {
  std::vector<QuadSample> q;
  q.reserve(samples.size());
  for (const auto& [n, v] : samples) q.push_back({n, QComplex(v)});
  return finite_part_extract(q, model, opts);
}

}  // namespace symzeta
