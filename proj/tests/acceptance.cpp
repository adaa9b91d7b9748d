// Acceptance criteria. Usage: acceptance [criterion-number ...]; with no
// arguments every criterion runs. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symzeta/errors.hpp"
#include "symzeta/exactnum.hpp"
#include "symzeta/meromorphic.hpp"
#include "symzeta/oracles.hpp"
#include "symzeta/reg_integral.hpp"
#include "symzeta/reg_sum.hpp"
#include "symzeta/zeta.hpp"

using namespace symzeta;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// 1. Bernoulli identities for the Riemann zeta function.
void bernoulli_identities(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const double e1 = std::abs(riemann_zeta_reg(-1.0).value + 1.0 / 12);
  const double e3 = std::abs(riemann_zeta_reg(-3.0).value - 1.0 / 120);
  const double t = seconds_since(t0);
  o.detail << "zeta(-1) err " << sci(e1) << ", zeta(-3) err " << sci(e3) << ", " << t << " s (tol 1e-8, < 1 s)";
  o.require(e1 < 1e-8, "zeta(-1)");
  o.require(e3 < 1e-8, "zeta(-3)");
  o.require(t < 1.0, "runtime");
}

// 2. Hurwitz zeta at nonpositive integers.
void hurwitz_identity(Outcome& o) {
  double worst = 0;
  for (int k = 0; k <= 4; ++k)
    for (const Rational& p : {make_rational(1, 2), Rational(1), Rational(3)}) {
      const double expected = -bernoulli_poly(k + 1, p).get_d() / (k + 1);
      const double err = std::abs(hurwitz_zeta_reg(-static_cast<double>(k), p.get_d()).value - expected);
      worst = std::max(worst, err);
    }
  o.detail << "worst err " << sci(worst) << " over 15 cases (tol 1e-9)";
  o.require(worst < 1e-9, "tolerance");
}

Polynomial random_polynomial(std::mt19937_64& rng, int dim) {
  Polynomial P;
  P.dim = dim;
  std::uniform_int_distribution<int> nterms(1, 5), coef(-9, 9), den(1, 5), deg(1, 4), axis(0, dim - 1);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    std::vector<int> alpha(dim, 0);
    for (int b = deg(rng); b > 0; --b) ++alpha[axis(rng)];
    const int c = coef(rng);
    P.terms[alpha] += make_rational(c == 0 ? 1 : c, den(rng));
  }
  return P;
}

// 3. Finite parts of polynomial lattice sums. The finite part equals P(0), so
// the random polynomials carry no constant term.
void polynomial_fp(Outcome& o) {
  std::mt19937_64 rng(314159);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto P = random_polynomial(rng, 1 + trial % 3);
    worst = std::max(worst, std::abs(cutoff_sum_lattice(P).constant));
  }
  o.detail << "worst |fp| " << sci(worst) << " over 10 polynomials, degree <= 4, d <= 3 (tol 1e-7)";
  o.require(worst < 1e-7, "tolerance");
}

// 4. Khovanskii-Pukhlikov hypercube sums against enumeration.
void kp_exact(Outcome& o) {
  std::mt19937_64 rng(271828);
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto P = random_polynomial(rng, 1 + trial % 3);
    const long N = 1 + trial % 6;
    if (kp_hypercube_polynomial_sum(P, N) == enumerate_hypercube_polynomial_sum(P, N)) ++agree;
  }
  o.detail << agree << "/20 exact matches";
  o.require(agree == 20, "exact equality");
}

// 5. Sup-norm versus euclidean finite parts of integrals.
void supnorm_euclidean(Outcome& o) {
  const QuadraticForm eis({{1, 0.5}, {0.5, 1}});
  const std::vector<ClassicalSymbol> symbols = {power_symbol(2, -2.5), power_symbol(2, -1.3), power_symbol(2, -0.7),
                                                power_symbol(2, 0.4), quadratic_symbol(eis, 0.65)};
  double worst = 0;
  for (const auto& s : symbols)
    worst = std::max(worst, std::abs(supball_cutoff_integral(s).constant - cutoff_integral(s).value));
  const auto s2 = power_symbol(2, -2.0);
  const cdouble diff = supball_cutoff_integral(s2).constant - cutoff_integral(s2).value;
  const double corr_err = std::abs(diff - polytope_ball_correction(s2));
  o.detail << "non-integer worst diff " << sci(worst) << " (tol 1e-5); order -2 diff " << diff.real()
           << " vs correction, err " << sci(corr_err) << " (tol 2e-4)";
  o.require(worst < 1e-5, "non-integer orders");
  o.require(corr_err < 2e-4, "polytope correction");
}

// 6. Translation invariance at non-integer order.
void translation_invariance(Outcome& o) {
  const auto s = power_symbol(1, -1.5);
  const cdouble base_sum = cutoff_sum_1d(s);
  const cdouble base_c = C_constant(s);
  double worst_sum = 0, worst_c = 0;
  for (double p : {1.0, 3.0}) {
    worst_sum = std::max(worst_sum, std::abs(cutoff_sum_1d(s, {}, p) - base_sum));
    worst_sum = std::max(worst_sum, std::abs(cutoff_sum_lattice(translate(s, {p})).constant - base_sum));
    worst_c = std::max(worst_c, std::abs(C_constant(s, {p}) - base_c));
  }
  o.detail << "sum diff " << sci(worst_sum) << ", C diff " << sci(worst_c) << " for p in {1, 3} (tol 1e-7)";
  o.require(worst_sum < 1e-7, "canonical sum");
  o.require(worst_c < 1e-7, "C");
}

// 7. Residues of Riesz sweeps.
void residue_formulas(Outcome& o) {
  SweepOptions em;
  em.pipeline = SumPipeline::euler_maclaurin;
  em.npoints = 32;
  struct Case {
    HolomorphicFamily family;
    SweepOptions opts;
  };
  const std::vector<Case> cases = {{riesz_family(power_symbol(1, -1.0), -1.0), em},
                                   {riesz_family(power_symbol(2, -2.0), -1.0), SweepOptions{}}};
  double worst_pred = 0, worst_agree = 0;
  for (const auto& c : cases) {
    const auto sum = zsweep_regularized_sum(c.family, c.opts);
    const auto integral = zsweep_regularized_integral(c.family, c.opts);
    const cdouble predicted = predicted_sweep_residue(c.family);
    worst_pred = std::max(worst_pred, std::abs(sum.c_minus1 - predicted));
    worst_pred = std::max(worst_pred, std::abs(integral.c_minus1 - predicted));
    worst_agree = std::max(worst_agree, std::abs(sum.c_minus1 - integral.c_minus1));
  }
  o.detail << "residue vs prediction " << sci(worst_pred) << ", sum vs integral sweep " << sci(worst_agree)
           << " (tol 1e-5)";
  o.require(worst_pred < 1e-5, "predicted residue");
  o.require(worst_agree < 1e-5, "sweep agreement");
}

// 8. Epstein pole at s = d/2.
void epstein_pole(Outcome& o) {
  const auto q = QuadraticForm::identity(2);
  const auto r = quadratic_zeta(q, 1.0);
  const double e_z = std::abs(r.residue_in_z - 2 * pi);
  const double e_s = std::abs(epstein_oracle(q, 1.0).s_residue_at_d_half - pi);
  o.detail << "residue_in_z err " << sci(e_z) << " (tol 1e-4), oracle s-residue err " << sci(e_s) << " (tol 1e-8)";
  o.require(r.is_pole, "pole flag");
  o.require(e_z < 1e-4, "z residue");
  o.require(e_s < 1e-8, "s residue");
}

// 9. Epstein values against the theta-function oracle.
void epstein_values(Outcome& o) {
  const std::vector<cdouble> points = {-2.0,     -1.5,         {-1.0, 0.5}, {-0.5, 0.5}, -0.3, 0.25,
                                       {0.5, 1}, 0.75,         1.5,         2.0,         {2.5, 0.3}, 3.0};
  const std::vector<QuadraticForm> forms = {QuadraticForm::identity(2), QuadraticForm({{1, 0.5}, {0.5, 1}})};
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& q : forms)
    for (cdouble s : points) worst = std::max(worst, std::abs(quadratic_zeta(q, s).value - epstein_oracle(q, s).value));
  const double t = seconds_since(t0);
  const cdouble z4 = 4.0 * riemann_zeta_oracle(2.0).value * dirichlet_beta_oracle(2.0).value;
  const double e4 = std::abs(quadratic_zeta(forms[0], 2.0).value - z4);
  o.detail << "worst err " << sci(worst) << " over 24 points (tol 1e-5) in " << t << " s (< 60 s); Z4(2) err " << sci(e4)
           << " (tol 1e-7)";
  o.require(worst < 1e-5, "oracle agreement");
  o.require(t < 60, "runtime");
  o.require(e4 < 1e-7, "4 zeta beta");
}

// 10. Vanishing at nonpositive integers.
void vanishing(Outcome& o) {
  std::vector<std::pair<std::string, QuadraticForm>> forms = {{"identity d=1", QuadraticForm::identity(1)},
                                                              {"identity d=2", QuadraticForm::identity(2)},
                                                              {"eisenstein d=2", QuadraticForm({{1, 0.5}, {0.5, 1}})}};
  double worst = 0;
  for (int k = 0; k <= 2; ++k) {
    for (const auto& [name, q] : forms) {
      const double v = std::abs(quadratic_zeta(q, -static_cast<double>(k)).value);
      worst = std::max(worst, v);
      if (!(v < 1e-5)) o.detail << " Z(" << -k << ") " << name << " = " << quadratic_zeta(q, -double(k)).value.real() << ";";
    }
    for (int d = 1; d <= 2; ++d) {
      const double v = std::abs(torus_zeta(d, -static_cast<double>(k)).value);
      worst = std::max(worst, v);
      if (!(v < 1e-5)) o.detail << " torus d=" << d << " zeta(" << -k << ") = " << torus_zeta(d, -double(k)).value.real() << ";";
    }
  }
  o.detail << " worst |value| " << sci(worst) << " (tol 1e-5)";
  o.require(worst < 1e-5, "vanishing");
}

// 11. Torus zeta determinants.
void determinants(Outcome& o) {
  const double det1 = torus_zeta_determinant(1);
  const double det2 = torus_zeta_determinant(2);
  const double ref2 = std::exp(-epstein_oracle_derivative(QuadraticForm::identity(2), 0.0).value.real());
  const double e1 = std::abs(det1 - 4 * pi * pi), e2 = std::abs(det2 - ref2);
  o.detail << "det1 " << det1 << " err " << sci(e1) << " (tol 1e-5); det2 " << det2 << " vs oracle " << ref2 << " err "
           << sci(e2) << " (tol 1e-4)";
  o.require(e1 < 1e-5, "d = 1");
  o.require(e2 < 1e-4, "d = 2");
}

// 12. Riesz integral sweeps at non-integer order.
void riesz_fp(Outcome& o) {
  const std::vector<ClassicalSymbol> symbols = {power_symbol(1, -0.6), power_symbol(1, -1.5), power_symbol(2, -1.3),
                                                power_symbol(2, 0.45),
                                                quadratic_symbol(QuadraticForm({{1, 0.5}, {0.5, 1}}), 0.35)};
  double worst = 0;
  for (const auto& s : symbols) {
    const auto fit = zsweep_regularized_integral(riesz_family(s, -1.0));
    worst = std::max(worst, std::abs(fit.c0 - cutoff_integral(s).value));
  }
  o.detail << "worst err " << sci(worst) << " over 5 symbols (tol 1e-7)";
  o.require(worst < 1e-7, "tolerance");
}

struct Criterion {
  const char* title;
  std::function<void(Outcome&)> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"Bernoulli identities for zeta(-1), zeta(-3)", bernoulli_identities},
      {"Hurwitz zeta at -k equals -B_{k+1}(p)/(k+1)", hurwitz_identity},
      {"polynomial lattice finite parts vanish", polynomial_fp},
      {"Khovanskii-Pukhlikov sums equal enumeration", kp_exact},
      {"sup-norm and euclidean finite parts", supnorm_euclidean},
      {"translation invariance at non-integer order", translation_invariance},
      {"residues of Riesz sweeps", residue_formulas},
      {"Epstein pole at s = d/2", epstein_pole},
      {"Epstein values against the theta oracle", epstein_values},
      {"Epstein and torus zeta vanish at s = 0, -1, -2", vanishing},
      {"torus zeta determinants", determinants},
      {"Riesz integral sweep finite parts", riesz_fp},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) selected.push_back(i);
  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria().size())) {
      std::printf("criterion %d: unknown\n", id);
      return 2;
    }
    const auto& c = criteria()[id - 1];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("criterion %2d %s  %s: %s (%.1f s)\n", id, o.pass ? "PASS" : "FAIL", c.title, o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
