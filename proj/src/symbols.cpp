#include "symzeta/symbols.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>

#include "symzeta/errors.hpp"

namespace symzeta {

bool is_near_integer(cdouble a, double tol) {
  return std::abs(a.imag()) < tol && std::abs(a.real() - std::round(a.real())) < tol;
}

double euclidean_norm(Point x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// ---------------------------------------------------------------- cutoff

CutoffFunction::CutoffFunction(double r0, double r1) : r0_(r0), r1_(r1) {
  if (!(r0 > 0) || !(r1 > r0)) throw PreconditionError("CutoffFunction: need 0 < r0 < r1");
}

CutoffFunction CutoffFunction::none() {
  CutoffFunction c;
  c.none_ = true;
  c.r0_ = 0.0;
  c.r1_ = 0.0;
  return c;
}

double CutoffFunction::bridge(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  const double g = 1.0 / u - 1.0 / (1.0 - u);
  return 1.0 / (1.0 + std::exp(g));
}

double CutoffFunction::operator()(double radius) const {
  if (none_) return 1.0;
  return bridge((radius - r0_) / (r1_ - r0_));
}

RealJet CutoffFunction::on_radius(const RealJet& radius) const {
  const std::size_t order = radius.order();
  if (none_) return RealJet(order, 1.0);
  const RealJet u = (radius - r0_) / (r1_ - r0_);
  if (u.value() <= 0) return RealJet(order, 0.0);
  if (u.value() >= 1) return RealJet(order, 1.0);
  const RealJet g = 1.0 / u - 1.0 / (1.0 - u);
  if (g.value() > 700) return RealJet(order, 0.0);
  return 1.0 / (1.0 + exp(g));
}

// ---------------------------------------------------------------- components

cdouble HomogeneousComponent::value(Point x) const {
  if (!profile) return 0.0;
  const double r = euclidean_norm(x);
  if (r == 0) return 0.0;
  std::vector<double> unit(x.begin(), x.end());
  for (auto& v : unit) v /= r;
  return std::exp(degree * std::log(r)) * profile(unit);
}

// ---------------------------------------------------------------- quadratic forms

QuadraticForm::QuadraticForm(std::vector<std::vector<double>> matrix) : a_(std::move(matrix)) {
  const int d = static_cast<int>(a_.size());
  if (d < 1) throw PreconditionError("QuadraticForm: empty matrix");
  Eigen::MatrixXd m(d, d);
  double scale = 0;
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(a_[i].size()) != d) throw PreconditionError("QuadraticForm: matrix not square");
    for (int j = 0; j < d; ++j) {
      m(i, j) = a_[i][j];
      scale = std::max(scale, std::abs(a_[i][j]));
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(a_[i][j] - a_[j][i]) > 1e-12 * std::max(1.0, scale))
        throw PreconditionError("QuadraticForm: matrix not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw PreconditionError("QuadraticForm: matrix not positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  lambda_min_ = eig.eigenvalues().minCoeff();
  lambda_max_ = eig.eigenvalues().maxCoeff();
  if (!(lambda_min_ > 0)) throw PreconditionError("QuadraticForm: matrix not positive definite");
  const auto& l = llt.matrixL();
  det_ = 1.0;
  for (int i = 0; i < d; ++i) det_ *= l(i, i) * l(i, i);
}

QuadraticForm QuadraticForm::identity(int dim) {
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < dim; ++i) a[i][i] = 1.0;
  return QuadraticForm(std::move(a));
}

double QuadraticForm::operator()(Point x) const {
  const int d = dimension();
  if (static_cast<int>(x.size()) != d) throw DimensionMismatch("QuadraticForm: dimension mismatch");
  double s = 0;
  for (int i = 0; i < d; ++i) {
    s += a_[i][i] * x[i] * x[i];
    for (int j = i + 1; j < d; ++j) s += 2.0 * a_[i][j] * x[i] * x[j];
  }
  return s;
}

QuadraticForm QuadraticForm::inverse() const {
  const int d = dimension();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = a_[i][j];
  const Eigen::MatrixXd inv = m.inverse();
  std::vector<std::vector<double>> out(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[i][j] = 0.5 * (inv(i, j) + inv(j, i));
  return QuadraticForm(std::move(out));
}

bool QuadraticForm::is_identity() const {
  for (int i = 0; i < dimension(); ++i)
    for (int j = 0; j < dimension(); ++j)
      if (a_[i][j] != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

long QuadraticForm::integer_scale() const {
  const int d = dimension();
  auto is_int = [](double v) { return std::abs(v - std::round(v)) < 1e-12 * std::max(1.0, std::abs(v)); };
  for (long m = 1; m <= 64; ++m) {
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      ok = is_int(m * a_[i][i]);
      for (int j = i + 1; j < d && ok; ++j) ok = is_int(2.0 * m * a_[i][j]);
    }
    if (ok) return m;
  }
  return 0;
}

cdouble PowerLaw::value(Point x) const {
  const double q = form(x);
  const double r = euclidean_norm(x);
  if (q <= 0) return 0.0;
  return scale * std::exp(-s * std::log(q) - w * std::log(r));
}

// ---------------------------------------------------------------- classical symbols

ClassicalSymbol::ClassicalSymbol(int dim, cdouble order, std::vector<HomogeneousComponent> components,
                                 CutoffFunction cutoff, std::optional<Remainder> remainder)
    : dim_(dim),
      order_(order),
      components_(std::move(components)),
      cutoff_(cutoff),
      remainder_(std::move(remainder)) {
  if (dim < 1) throw PreconditionError("ClassicalSymbol: dimension must be positive");
  for (std::size_t j = 0; j < components_.size(); ++j) {
    if (std::abs(components_[j].degree - (order - static_cast<double>(j))) > 1e-9)
      throw PreconditionError("ClassicalSymbol: component degrees must be order, order-1, ...");
  }
  if (remainder_ && !remainder_->value) remainder_.reset();
}

ClassicalSymbol ClassicalSymbol::with_power_law(PowerLaw law) const {
  if (law.form.dimension() != dim_) throw DimensionMismatch("with_power_law: dimension mismatch");
  ClassicalSymbol out = *this;
  out.power_law_ = std::move(law);
  return out;
}

cdouble ClassicalSymbol::evaluate(Point x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("evaluate: dimension mismatch");
  cdouble out = 0.0;
  const double r = euclidean_norm(x);
  const double chi = cutoff_(r);
  if (chi != 0.0 && r > 0) {
    cdouble sum = 0.0;
    for (const auto& c : components_) sum += c.value(x);
    out = chi * sum;
  }
  if (remainder_) out += remainder_->value(x);
  return out;
}

cdouble ClassicalSymbol::evaluate(std::initializer_list<double> x) const {
  std::vector<double> v(x);
  return evaluate(Point(v));
}

namespace {

// Taylor coefficients of f around x0 by Chebyshev sampling on [x0-h, x0+h].
ComplexJet finite_difference_jet(const Evaluator& f, double x0, std::size_t order) {
  const std::size_t n = order + 8;
  const double h = 0.05 * std::max(1.0, std::abs(x0));
  std::vector<double> t(n);
  std::vector<cdouble> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = std::cos(M_PI * (i + 0.5) / n);
    const double xi = x0 + h * t[i];
    v[i] = f(Point(&xi, 1));
  }
  // Least-squares polynomial fit of degree order+4 in t.
  const std::size_t m = order + 5;
  Eigen::MatrixXd a(n, m);
  Eigen::MatrixXcd b(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1;
    for (std::size_t k = 0; k < m; ++k) {
      a(i, k) = p;
      p *= t[i];
    }
    b(i, 0) = v[i];
  }
  const Eigen::MatrixXcd coef = a.cast<cdouble>().colPivHouseholderQr().solve(b);
  ComplexJet jet(order, coef(0, 0));
  double hk = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    hk *= h;
    jet[k] = coef(k, 0) / hk;
  }
  return jet;
}

ComplexJet to_complex(const RealJet& j) { return j.cast<cdouble>(); }

}  // namespace

ComplexJet ClassicalSymbol::evaluate_jet(const RealJet& x) const {
  if (dim_ != 1) throw DimensionMismatch("evaluate_jet: one-dimensional symbols only");
  const std::size_t order = x.order();
  const double x0 = x.value();
  ComplexJet out(order, 0.0);
  if (x0 != 0.0) {
    const double sign = x0 > 0 ? 1.0 : -1.0;
    const RealJet r = x * sign;
    const RealJet chi = cutoff_.on_radius(r);
    bool zero = true;
    for (std::size_t k = 0; k <= order; ++k) zero = zero && chi[k] == 0.0;
    if (!zero) {
      const ComplexJet rc = to_complex(r);
      ComplexJet sum(order, 0.0);
      const double unit[1] = {sign};
      for (const auto& c : components_) {
        if (c.is_zero()) continue;
        const cdouble prof = c.profile(Point(unit, 1));
        if (prof == 0.0) continue;
        sum += pow(rc, c.degree) * prof;
      }
      out = to_complex(chi) * sum;
    }
  }
  if (remainder_) {
    if (remainder_->jet)
      out += remainder_->jet(to_complex(x));
    else
      out += finite_difference_jet(remainder_->value, x0, order);
  }
  return out;
}

std::optional<std::size_t> ClassicalSymbol::residue_component() const {
  const cdouble shifted = order_ + static_cast<double>(dim_);
  if (!is_near_integer(shifted)) return std::nullopt;
  const long j = std::lround(shifted.real());
  if (j < 0 || j >= static_cast<long>(components_.size())) return std::nullopt;
  if (components_[j].is_zero()) return std::nullopt;
  return static_cast<std::size_t>(j);
}

cdouble evaluate(const ClassicalSymbol& sigma, Point x) { return sigma.evaluate(x); }

// ---------------------------------------------------------------- families

HolomorphicFamily::HolomorphicFamily(ClassicalSymbol base, double slope, CutoffFunction family_cutoff,
                                     double scale)
    : base_(std::move(base)), slope_(slope), chi_(family_cutoff), scale_(scale) {
  if (slope == 0.0) throw PreconditionError("HolomorphicFamily: slope must be nonzero (non-constant order)");
  if (!(scale > 0)) throw PreconditionError("HolomorphicFamily: scale must be positive");
  if (chi_.is_none()) throw PreconditionError("HolomorphicFamily: family cutoff must vanish near 0");
}

cdouble HolomorphicFamily::evaluate(cdouble z, Point x) const {
  const cdouble sigma = base_.evaluate(x);
  if (z == 0.0) return sigma;
  const double r = euclidean_norm(x);
  const double chi = chi_(r);
  if (chi == 0.0) return sigma;
  const cdouble factor = std::exp(slope_ * z * std::log(r / scale_));
  return (1.0 - chi) * sigma + chi * sigma * factor;
}

cdouble HolomorphicFamily::derivative_at_zero(Point x) const {
  const double r = euclidean_norm(x);
  const double chi = chi_(r);
  if (chi == 0.0) return 0.0;
  return chi * base_.evaluate(x) * slope_ * std::log(r / scale_);
}

ClassicalSymbol HolomorphicFamily::at(cdouble z) const {
  if (z == 0.0) return base_;
  const cdouble shift = slope_ * z;
  const cdouble scale_factor = std::exp(-shift * std::log(scale_));
  std::vector<HomogeneousComponent> comps;
  comps.reserve(base_.components().size());
  for (const auto& c : base_.components()) {
    HomogeneousComponent nc{c.degree + shift, {}};
    if (!c.is_zero()) {
      auto prof = c.profile;
      nc.profile = [prof, scale_factor](Point w) { return scale_factor * prof(w); };
    }
    comps.push_back(std::move(nc));
  }
  const ClassicalSymbol core(base_.dimension(), base_.order() + shift, comps, base_.cutoff());

  Remainder rem;
  const HolomorphicFamily self = *this;
  rem.value = [self, core, z](Point x) { return self.evaluate(z, x) - core.evaluate(x); };
  if (base_.remainder()) {
    rem.decay = base_.remainder()->decay + shift.real();
    rem.support_radius = 0.0;
  } else {
    const double base_r1 = base_.cutoff().is_none() ? 0.0 : base_.cutoff().r1();
    rem.decay = -std::numeric_limits<double>::infinity();
    rem.support_radius = std::max(base_r1, chi_.r1());
  }
  if (base_.dimension() == 1) {
    rem.jet = [self, core, z, shift](const ComplexJet& xc) {
      const std::size_t order = xc.order();
      RealJet x(order, xc[0].real());
      for (std::size_t k = 1; k <= order; ++k) x[k] = xc[k].real();
      const ComplexJet sigma = self.base().evaluate_jet(x);
      const double x0 = x.value();
      ComplexJet member = sigma;
      if (x0 != 0.0) {
        const RealJet r = x * (x0 > 0 ? 1.0 : -1.0);
        const RealJet chi = self.family_cutoff().on_radius(r);
        if (chi.value() != 0.0 || chi[1] != 0.0) {
          const ComplexJet lr = log(r.cast<cdouble>()) - cdouble(std::log(self.scale()));
          const ComplexJet factor = exp(lr * shift);
          const ComplexJet chic = chi.cast<cdouble>();
          member = (cdouble(1.0) - chic) * sigma + chic * sigma * factor;
        }
      }
      return member - core.evaluate_jet(x);
    };
  }
  ClassicalSymbol member(base_.dimension(), base_.order() + shift, std::move(comps), base_.cutoff(), rem);
  if (base_.power_law()) {
    PowerLaw law = *base_.power_law();
    law.w -= shift;
    law.scale *= scale_factor;
    law.radius = std::max(law.radius, chi_.r1());
    member = member.with_power_law(std::move(law));
  }
  return member;
}

HolomorphicFamily riesz_family(const ClassicalSymbol& sigma, double b) {
  const CutoffFunction chi = sigma.cutoff().is_none() ? CutoffFunction() : sigma.cutoff();
  return HolomorphicFamily(sigma, b, chi, 1.0);
}

HolomorphicFamily riesz_family(const ClassicalSymbol& sigma, double b, const CutoffFunction& family_cutoff,
                               double scale) {
  return HolomorphicFamily(sigma, b, family_cutoff, scale);
}

// ---------------------------------------------------------------- translation and derivatives

TranslatedSymbol translate(const ClassicalSymbol& sigma, std::vector<double> p) {
  if (static_cast<int>(p.size()) != sigma.dimension()) throw DimensionMismatch("translate: dimension mismatch");
  TranslatedSymbol out;
  out.dimension = sigma.dimension();
  out.order = sigma.order();
  out.shift = p;
  out.evaluate = [sigma, p](Point x) {
    std::vector<double> y(x.begin(), x.end());
    if (y.size() != p.size()) throw DimensionMismatch("translate: dimension mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += p[i];
    return sigma.evaluate(Point(y));
  };
  return out;
}

TranslatedSymbol translate(const TranslatedSymbol& tau, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != tau.dimension) throw DimensionMismatch("translate: dimension mismatch");
  TranslatedSymbol out = tau;
  for (std::size_t i = 0; i < p.size(); ++i) out.shift[i] += p[i];
  auto inner = tau.evaluate;
  out.evaluate = [inner, p](Point x) {
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += p[i];
    return inner(Point(y));
  };
  return out;
}

std::function<cdouble(double)> derivative_1d(const ClassicalSymbol& sigma, int k) {
  if (sigma.dimension() != 1) throw DimensionMismatch("derivative_1d: one-dimensional symbols only");
  if (k < 1) throw PreconditionError("derivative_1d: k must be positive");
  return [sigma, k](double x) -> cdouble {
    const double r1 = sigma.cutoff().is_none() ? 0.0 : sigma.cutoff().r1();
    if (std::abs(x) < r1 || x == 0.0) throw DomainError("derivative_1d: requested inside the cutoff region");
    const double sign = x > 0 ? 1.0 : -1.0;
    const double r = std::abs(x);
    const double unit[1] = {sign};
    cdouble total = 0.0;
    for (const auto& c : sigma.components()) {
      if (c.is_zero()) continue;
      cdouble falling = 1.0;
      for (int i = 0; i < k; ++i) falling *= c.degree - static_cast<double>(i);
      // d^k/dx^k |x|^p = sign^k (p)_k |x|^{p-k}
      const double sgn = (k % 2 == 1) ? sign : 1.0;
      total += c.profile(Point(unit, 1)) * falling * sgn * std::exp((c.degree - static_cast<double>(k)) * std::log(r));
    }
    if (sigma.remainder()) {
      const RealJet xj = RealJet::variable(k, x);
      ComplexJet rj = sigma.remainder()->jet ? sigma.remainder()->jet(xj.cast<cdouble>())
                                             : finite_difference_jet(sigma.remainder()->value, x, k);
      total += rj.derivative(k);
    }
    return total;
  };
}

// ---------------------------------------------------------------- constructors

ClassicalSymbol quadratic_symbol(const QuadraticForm& q, cdouble s, const CutoffFunction& cutoff) {
  HomogeneousComponent comp{-2.0 * s, [q, s](Point w) { return std::exp(-s * std::log(q(w))); }};
  ClassicalSymbol sym(q.dimension(), -2.0 * s, {comp}, cutoff);
  PowerLaw law{q, s, 0.0, 1.0, cutoff.is_none() ? 0.0 : cutoff.r1()};
  return sym.with_power_law(std::move(law));
}

ClassicalSymbol power_symbol(int dim, cdouble a, const CutoffFunction& cutoff) {
  return quadratic_symbol(QuadraticForm::identity(dim), -0.5 * a, cutoff);
}

ClassicalSymbol one_sided_power_symbol(cdouble a, const CutoffFunction& cutoff) {
  HomogeneousComponent comp{a, [](Point w) { return cdouble(w[0] > 0 ? 1.0 : 0.0); }};
  return ClassicalSymbol(1, a, {comp}, cutoff);
}

ClassicalSymbol combine(const std::vector<std::pair<cdouble, ClassicalSymbol>>& terms) {
  if (terms.empty()) throw PreconditionError("combine: no terms");
  const auto& first = terms.front().second;
  const int dim = first.dimension();
  cdouble lead = first.order();
  for (const auto& [w, s] : terms) {
    if (s.dimension() != dim) throw DimensionMismatch("combine: dimension mismatch");
    if (!is_near_integer(s.order() - first.order(), 1e-12))
      throw PreconditionError("combine: orders must differ by integers");
    const auto& c = s.cutoff();
    if (c.is_none() != first.cutoff().is_none() || c.r0() != first.cutoff().r0() || c.r1() != first.cutoff().r1())
      throw PreconditionError("combine: symbols must share one cutoff");
    if (s.order().real() > lead.real()) lead = s.order();
  }
  std::vector<std::vector<std::pair<cdouble, Evaluator>>> parts;
  for (const auto& [w, s] : terms) {
    const auto offset = static_cast<std::size_t>(std::lround((lead - s.order()).real()));
    for (std::size_t j = 0; j < s.components().size(); ++j) {
      if (s.components()[j].is_zero()) continue;
      if (parts.size() <= offset + j) parts.resize(offset + j + 1);
      parts[offset + j].emplace_back(w, s.components()[j].profile);
    }
  }
  std::vector<HomogeneousComponent> comps;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    HomogeneousComponent c{lead - static_cast<double>(j), {}};
    if (!parts[j].empty()) {
      auto list = parts[j];
      c.profile = [list](Point w) {
        cdouble v = 0.0;
        for (const auto& [coef, f] : list) v += coef * f(w);
        return v;
      };
    }
    comps.push_back(std::move(c));
  }
  std::optional<Remainder> rem;
  std::vector<std::pair<cdouble, Remainder>> rems;
  for (const auto& [w, s] : terms)
    if (s.remainder()) rems.emplace_back(w, *s.remainder());
  if (!rems.empty()) {
    Remainder r;
    r.decay = -std::numeric_limits<double>::infinity();
    bool all_compact = true, all_jets = true;
    for (const auto& [w, x] : rems) {
      r.decay = std::max(r.decay, x.decay);
      all_compact = all_compact && x.compact();
      all_jets = all_jets && static_cast<bool>(x.jet);
      r.support_radius = std::max(r.support_radius, x.support_radius);
    }
    if (!all_compact) r.support_radius = 0.0;
    r.value = [rems](Point x) {
      cdouble v = 0.0;
      for (const auto& [w, f] : rems) v += w * f.value(x);
      return v;
    };
    if (all_jets) {
      r.jet = [rems](const ComplexJet& x) {
        ComplexJet v(x.order(), 0.0);
        for (const auto& [w, f] : rems) v += f.jet(x) * w;
        return v;
      };
    }
    rem = std::move(r);
  }
  return ClassicalSymbol(dim, lead, std::move(comps), first.cutoff(), std::move(rem));
}

}  // namespace symzeta
