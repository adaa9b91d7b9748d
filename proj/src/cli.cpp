// symzeta command-line front end.

#include "symzeta/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "symzeta/errors.hpp"
#include "symzeta/meromorphic.hpp"
#include "symzeta/oracles.hpp"
#include "symzeta/reg_integral.hpp"
#include "symzeta/zeta.hpp"

namespace symzeta::cli {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- parsing

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw PreconditionError("cannot parse number '" + text + "'");
  }
  if (used != text.size()) throw PreconditionError("cannot parse number '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

cdouble parse_complex(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw PreconditionError("empty complex number");
  if (s.back() != 'i') return parse_real(s);
  // split at the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size() - 1; k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const std::string re_text = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im_text = s.substr(cut == std::string::npos ? 0 : cut, s.size() - 1 - (cut == std::string::npos ? 0 : cut));
  double im;
  if (im_text.empty() || im_text == "+")
    im = 1;
  else if (im_text == "-")
    im = -1;
  else
    im = parse_real(im_text);
  return {re_text.empty() ? 0.0 : parse_real(re_text), im};
}

QuadraticForm parse_form(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : split(strip_spaces(text), ';')) {
    std::vector<double> r;
    for (const auto& e : split(row, ',')) r.push_back(parse_real(e));
    rows.push_back(std::move(r));
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw PreconditionError("form must be a square matrix \"a,b;c,d\"");
  return QuadraticForm(std::move(rows));
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  for (const auto& e : split(strip_spaces(text), ',')) v.push_back(parse_real(e));
  return v;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string s) : s_(std::move(s)) {}
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(const std::string& token) {
    if (s_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& token) {
    if (!accept(token)) fail("expected '" + token + "'");
  }
  // Real literal (no sign handling beyond a leading one).
  std::string number() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    while (!done() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == 'e' ||
                       peek() == 'E' || ((peek() == '+' || peek() == '-') && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
      ++pos_;
    if (pos_ == start) fail("expected a number");
    return s_.substr(start, pos_ - start);
  }
  // Real literal or parenthesized complex.
  cdouble scalar() {
    if (accept("(")) {
      const std::size_t close = s_.find(')', pos_);
      if (close == std::string::npos) fail("unbalanced parenthesis");
      const cdouble v = parse_complex(s_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return v;
    }
    return parse_real(number());
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw PreconditionError("expression parse error at position " + std::to_string(pos_) + ": " + why);
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

ClassicalSymbol parse_symbol(const std::string& text, int dim, const std::optional<QuadraticForm>& form,
                             const CutoffFunction& cutoff) {
  if (dim < 1) throw PreconditionError("--dim must be positive");
  Cursor c(strip_spaces(text));
  std::vector<std::pair<cdouble, ClassicalSymbol>> terms;
  bool first = true;
  while (!c.done()) {
    double sign = 1;
    if (c.accept("+")) {
    } else if (c.accept("-")) {
      sign = -1;
    } else if (!first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    cdouble coef = sign;
    if (c.peek() != 'p' && c.peek() != 'n' && c.peek() != 'q') {
      coef *= c.scalar();
      c.expect("*");
    }
    const bool has_pow = c.accept("pow(");
    bool quadratic;
    if (c.accept("norm2(x)"))
      quadratic = false;
    else if (c.accept("q(x)"))
      quadratic = true;
    else
      c.fail("expected norm2(x) or q(x)");
    cdouble exponent = 1.0;
    if (has_pow) {
      c.expect(",");
      exponent = c.scalar();
      c.expect(")");
    }
    if (quadratic) {
      if (!form) throw PreconditionError("q(x) needs --form");
      if (form->dimension() != dim) throw DimensionMismatch("--form dimension differs from --dim");
      terms.emplace_back(coef, quadratic_symbol(*form, -exponent, cutoff));
    } else {
      terms.emplace_back(coef, power_symbol(dim, 2.0 * exponent, cutoff));
    }
  }
  if (terms.empty()) throw PreconditionError("empty symbol expression");
  return combine(terms);
}

Polynomial parse_polynomial(const std::string& text, int dim) {
  if (dim < 1 || dim > 3) throw PreconditionError("polynomials need 1 <= --dim <= 3");
  Polynomial P;
  P.dim = dim;
  Cursor c(strip_spaces(text));
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    if (c.accept("+")) {
    } else if (c.accept("-")) {
      sign = -1;
    } else if (!first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = sign;
    std::vector<int> alpha(dim, 0);
    bool any = false;
    while (true) {
      if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        std::string num;
        while (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '/') {
          num += c.peek();
          c.accept(std::string(1, c.peek()));
        }
        Rational r;
        if (r.set_str(num, 10) != 0) c.fail("bad rational '" + num + "'");
        r.canonicalize();
        coef *= r;
      } else if (c.accept("x")) {
        const std::string idx = c.number();
        const int i = std::stoi(idx);
        if (i < 0 || i >= dim) c.fail("variable index out of range");
        int power = 1;
        if (c.accept("^")) power = std::stoi(c.number());
        if (power < 0) c.fail("negative power");
        alpha[i] += power;
      } else {
        c.fail("expected a coefficient or a variable");
      }
      any = true;
      if (!c.accept("*")) break;
    }
    if (!any) c.fail("empty term");
    P.terms[alpha] += coef;
  }
  return P;
}

// ---------------------------------------------------------------- output

namespace {

struct Envelope {
  std::string command;
  Json inputs = Json::object();
  std::optional<cdouble> value;
  bool is_pole = false;
  std::optional<cdouble> residue;
  std::string pipeline;
  double residual = 0, condition = 0;
  int nmax = 0;
  double runtime_ms = 0;
  Json extra = Json::object();
  std::optional<std::string> error;
  std::optional<cdouble> point;  // the s argument for per-point commands
};

Json complex_json(cdouble z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Envelope& e) {
  Json j;
  j["command"] = e.command;
  j["inputs"] = e.inputs;
  j["value"] = e.value ? complex_json(*e.value) : Json(nullptr);
  j["is_pole"] = e.is_pole;
  if (e.residue) j["residue"] = complex_json(*e.residue);
  j["diagnostics"] = Json{{"pipeline", e.pipeline},
                          {"residual", e.residual},
                          {"condition", e.condition},
                          {"nmax", e.nmax},
                          {"runtime_ms", e.runtime_ms}};
  if (!e.extra.empty()) j["extra"] = e.extra;
  if (e.error) j["error"] = *e.error;
  j["version"] = kVersion;
  return j;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON text with every float at 17 significant digits.
void write_json(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(indent + 2, ' '), close_pad(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write_json(os, v, indent + 2);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent + 2);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_csv_row(std::ostream& os, const Envelope& e) {
  auto num = [](std::optional<double> v) { return v ? format_double(*v) : std::string(); };
  os << csv_field(e.command) << ',' << num(e.point ? std::optional(e.point->real()) : std::nullopt) << ','
     << num(e.point ? std::optional(e.point->imag()) : std::nullopt) << ','
     << num(e.value ? std::optional(e.value->real()) : std::nullopt) << ','
     << num(e.value ? std::optional(e.value->imag()) : std::nullopt) << ',' << (e.is_pole ? "true" : "false") << ','
     << num(e.residue ? std::optional(e.residue->real()) : std::nullopt) << ','
     << num(e.residue ? std::optional(e.residue->imag()) : std::nullopt) << ',' << csv_field(e.pipeline) << ','
     << format_double(e.residual) << ',' << format_double(e.condition) << ',' << e.nmax << ','
     << format_double(e.runtime_ms) << '\n';
}

// ---------------------------------------------------------------- options

struct Common {
  std::string out = "json";
  int prec = 160;
  std::optional<double> tol;
  int nmax = 0;
  std::string profile = "standard";
  std::optional<long> seed;
  bool oracle = false;
};

struct Inputs {
  std::vector<std::string> s;
  double p = 1.0;
  std::string form;
  int dim = 0;
  std::string symbol, poly, shift, cutoff = "0.5,1";
  std::string method = "auto", kind = "sum", domain = "ball", pipeline = "lattice";
  bool defect = false, exact = false;
  long hypercube = -1;
  double slope = -1, radius = 0.25, scale = 1.0;
  int points = 16;
};

RadiusProfile parse_profile(const std::string& p) {
  if (p == "fast") return RadiusProfile::fast;
  if (p == "sparse") return RadiusProfile::sparse;
  return RadiusProfile::standard;
}

ZetaOptions zeta_options(const Common& c) {
  ZetaOptions o;
  o.nmax = c.nmax;
  if (c.tol) o.tol = *c.tol;
  o.profile = parse_profile(c.profile);
  return o;
}

OracleConfig oracle_config(const Common& c) {
  OracleConfig cfg;
  cfg.precision_bits = c.prec;
  if (c.tol) cfg.target_tol = *c.tol;
  return cfg;
}

LatticeOptions lattice_options(const Common& c, int dim) {
  LatticeOptions o;
  o.radii = default_radii(dim, parse_profile(c.profile));
  if (c.nmax > 0) {
    std::vector<int> kept;
    for (int n : o.radii)
      if (n <= c.nmax) kept.push_back(n);
    o.radii = kept;
  }
  return o;
}

CutoffFunction parse_cutoff(const std::string& text) {
  if (text == "none") return CutoffFunction::none();
  const auto v = parse_vector(text);
  if (v.size() != 2) throw PreconditionError("--cutoff expects \"r0,r1\" or \"none\"");
  return CutoffFunction(v[0], v[1]);
}

std::optional<QuadraticForm> optional_form(const Inputs& in) {
  if (in.form.empty()) return std::nullopt;
  return parse_form(in.form);
}

int symbol_dim(const Inputs& in, const std::optional<QuadraticForm>& form) {
  if (in.dim > 0) return in.dim;
  if (form) return form->dimension();
  throw PreconditionError("--dim is required");
}

void fill_zeta(Envelope& e, const ZetaResult& r) {
  e.value = r.value;
  e.is_pole = r.is_pole;
  if (r.is_pole) {
    e.residue = r.residue_in_z;
    e.extra["s_residue"] = complex_json(r.diagnostics.s_residue);
  }
  e.pipeline = to_string(r.diagnostics.pipeline);
  e.residual = r.diagnostics.residual;
  e.condition = r.diagnostics.condition;
  e.nmax = r.diagnostics.nmax;
  if (r.diagnostics.swept) e.extra["swept"] = true;
}

void fill_fit(Envelope& e, const FinitePartResult& f) {
  e.value = f.constant;
  e.residual = f.residual_norm;
  e.condition = f.condition;
  e.nmax = f.nmax;
}

// ---------------------------------------------------------------- commands

using Runner = std::function<void(Envelope&)>;

struct Job {
  Envelope proto;
  Runner run;
};

std::vector<Job> per_point(const std::string& command, const Common&, const Inputs& in, Json inputs,
                           const std::function<void(Envelope&, cdouble)>& body) {
  if (in.s.empty()) throw PreconditionError("--s is required");
  std::vector<Job> jobs;
  for (const auto& text : in.s) {
    const cdouble s = parse_complex(text);
    Job j;
    j.proto.command = command;
    j.proto.inputs = inputs;
    j.proto.inputs["s"] = complex_json(s);
    j.proto.point = s;
    j.run = [body, s](Envelope& e) { body(e, s); };
    jobs.push_back(std::move(j));
  }
  return jobs;
}

std::vector<Job> single(const std::string& command, Json inputs, Runner body) {
  Job j;
  j.proto.command = command;
  j.proto.inputs = std::move(inputs);
  j.run = std::move(body);
  return {std::move(j)};
}

std::vector<Job> zeta_riemann(const Common& c, const Inputs& in) {
  return per_point("zeta riemann", c, in, Json::object(), [c](Envelope& e, cdouble s) {
    if (!c.oracle) return fill_zeta(e, riemann_zeta_reg(s));
    e.pipeline = "oracle";
    const auto cfg = oracle_config(c);
    if (s == cdouble(1.0)) {
      const auto g = euler_gamma_oracle(cfg);
      e.value = g.value;
      e.is_pole = true;
      e.residue = 1.0;
      e.residual = g.error_bound;
      return;
    }
    const auto v = riemann_zeta_oracle(s, cfg);
    e.value = v.value;
    e.residual = v.error_bound;
  });
}

std::vector<Job> zeta_hurwitz(const Common& c, const Inputs& in) {
  const double p = in.p;
  return per_point("zeta hurwitz", c, in, Json{{"p", p}}, [c, p](Envelope& e, cdouble s) {
    if (!c.oracle) return fill_zeta(e, hurwitz_zeta_reg(s, p));
    const auto v = hurwitz_zeta_oracle(s, p, oracle_config(c));
    e.pipeline = "oracle";
    e.value = v.value;
    e.residual = v.error_bound;
  });
}

void epstein_envelope(Envelope& e, const QuadraticForm& q, cdouble s, const Common& c) {
  const auto r = epstein_oracle(q, s, oracle_config(c));
  e.pipeline = "oracle";
  e.value = r.value;
  e.residual = r.error_bound;
  if (r.at_pole) {
    e.is_pole = true;
    e.residue = 2.0 * r.s_residue_at_d_half;
    e.extra["s_residue"] = complex_json(r.s_residue_at_d_half);
  }
}

std::vector<Job> zeta_quadratic(const Common& c, const Inputs& in) {
  if (in.form.empty()) throw PreconditionError("--form is required");
  const QuadraticForm q = parse_form(in.form);
  return per_point("zeta quadratic", c, in, Json{{"form", q.matrix()}}, [c, q](Envelope& e, cdouble s) {
    if (c.oracle) return epstein_envelope(e, q, s, c);
    fill_zeta(e, quadratic_zeta(q, s, zeta_options(c)));
  });
}

std::vector<Job> zeta_torus(const Common& c, const Inputs& in) {
  const int d = in.dim;
  if (d < 1 || d > 3) throw PreconditionError("--dim must be 1, 2 or 3");
  return per_point("zeta torus", c, in, Json{{"dim", d}}, [c, d](Envelope& e, cdouble s) {
    if (c.oracle) return epstein_envelope(e, QuadraticForm::identity(d), s, c);
    fill_zeta(e, torus_zeta(d, s, zeta_options(c)));
  });
}

std::vector<Job> det_torus(const Common& c, const Inputs& in) {
  const int d = in.dim;
  if (d < 1 || d > 2) throw PreconditionError("--dim must be 1 or 2");
  return single("det torus", Json{{"dim", d}}, [c, d](Envelope& e) {
    if (c.oracle) {
      const auto dz = epstein_oracle_derivative(QuadraticForm::identity(d), 0.0, oracle_config(c));
      e.pipeline = "oracle";
      e.value = std::exp(-dz.value.real());
      e.residual = dz.error_bound;
      return;
    }
    e.pipeline = "fp_lattice";
    e.value = torus_zeta_determinant(d, zeta_options(c));
  });
}

Json shift_json(const std::vector<double>& shift) { return shift.empty() ? Json(nullptr) : Json(shift); }

std::vector<Job> sum_fp(const Common& c, const Inputs& in) {
  const auto form = optional_form(in);
  const int d = symbol_dim(in, form);
  if (!in.poly.empty()) {
    const Polynomial P = parse_polynomial(in.poly, d);
    Json inputs{{"poly", in.poly}, {"dim", d}};
    if (in.hypercube >= 0) {
      const long N = in.hypercube;
      inputs["hypercube"] = N;
      return single("sum fp", inputs, [P, N](Envelope& e) {
        const Rational kp = kp_hypercube_polynomial_sum(P, N);
        const Rational brute = enumerate_hypercube_polynomial_sum(P, N);
        e.pipeline = "kp_exact";
        e.value = kp.get_d();
        e.extra["exact"] = kp.get_str();
        e.extra["enumeration"] = brute.get_str();
        e.extra["agrees"] = kp == brute;
      });
    }
    if (in.exact)
      return single("sum fp", inputs, [P](Envelope& e) {
        const Rational fp = polynomial_finite_part_exact(P);
        e.pipeline = "kp_exact";
        e.value = fp.get_d();
        e.extra["exact"] = fp.get_str();
      });
    return single("sum fp", inputs, [P, c, d](Envelope& e) {
      e.pipeline = "fp_lattice";
      fill_fit(e, cutoff_sum_lattice(P, lattice_options(c, d)));
    });
  }
  if (in.symbol.empty()) throw PreconditionError("--symbol or --poly is required");
  const ClassicalSymbol sigma = parse_symbol(in.symbol, d, form, parse_cutoff(in.cutoff));
  const std::vector<double> shift = in.shift.empty() ? std::vector<double>{} : parse_vector(in.shift);
  if (!shift.empty() && static_cast<int>(shift.size()) != d) throw DimensionMismatch("--shift length differs from --dim");
  std::string method = in.method;
  if (method == "auto") method = (d == 1 && !sigma.is_integer_order()) ? "em" : "lattice";
  if (method == "em" && d != 1) throw PreconditionError("--method em needs --dim 1");
  Json inputs{{"symbol", in.symbol}, {"dim", d}, {"shift", shift_json(shift)}, {"method", method},
              {"defect", in.defect}};
  if (form) inputs["form"] = form->matrix();
  return single("sum fp", inputs, [sigma, shift, method, c, d, defect = in.defect](Envelope& e) {
    e.pipeline = method == "em" ? "em" : "fp_lattice";
    const double p = shift.empty() ? 0.0 : shift[0];
    cdouble sum;
    if (method == "em") {
      sum = cutoff_sum_1d(sigma, {}, p);
    } else {
      const auto f = shift.empty() ? cutoff_sum_lattice(sigma, lattice_options(c, d))
                                   : cutoff_sum_lattice(translate(sigma, shift), lattice_options(c, d));
      fill_fit(e, f);
      sum = f.constant;
      if (std::abs(f.log_coeff) > 0) e.extra["log_coeff"] = complex_json(f.log_coeff);
    }
    e.value = sum;
    if (defect) {
      const cdouble integral = shift.empty() ? cutoff_integral(sigma).value
                                             : cutoff_integral_translated(translate(sigma, shift)).constant;
      e.value = sum - integral;
      e.extra["canonical_sum"] = complex_json(sum);
      e.extra["cutoff_integral"] = complex_json(integral);
    }
  });
}

std::vector<Job> integral_cutoff(const Common&, const Inputs& in) {
  const auto form = optional_form(in);
  const int d = symbol_dim(in, form);
  if (in.symbol.empty()) throw PreconditionError("--symbol is required");
  const ClassicalSymbol sigma = parse_symbol(in.symbol, d, form, parse_cutoff(in.cutoff));
  const std::vector<double> shift = in.shift.empty() ? std::vector<double>{} : parse_vector(in.shift);
  if (!shift.empty() && static_cast<int>(shift.size()) != d) throw DimensionMismatch("--shift length differs from --dim");
  if (in.domain != "ball" && in.domain != "supball") throw PreconditionError("--domain must be ball or supball");
  Json inputs{{"symbol", in.symbol}, {"dim", d}, {"shift", shift_json(shift)}, {"domain", in.domain}};
  if (form) inputs["form"] = form->matrix();
  return single("integral cutoff", inputs, [sigma, shift, domain = in.domain](Envelope& e) {
    if (domain == "supball") {
      if (!shift.empty()) throw PreconditionError("--domain supball does not take --shift");
      e.pipeline = "supball_fit";
      fill_fit(e, supball_cutoff_integral(sigma));
      e.extra["ball_cutoff_integral"] = complex_json(cutoff_integral(sigma).value);
      e.extra["polytope_ball_correction"] = complex_json(polytope_ball_correction(sigma));
      return;
    }
    if (!shift.empty()) {
      e.pipeline = "ball_fit";
      fill_fit(e, cutoff_integral_translated(translate(sigma, shift)));
      return;
    }
    const auto r = cutoff_integral(sigma);
    e.pipeline = "constant_term";
    e.value = r.value;
    if (r.had_log_obstruction) {
      e.extra["had_log_obstruction"] = true;
      e.extra["log_coefficient"] = complex_json(r.log_coefficient);
    }
  });
}

std::vector<Job> residue_symbol(const Common&, const Inputs& in) {
  const auto form = optional_form(in);
  if (in.symbol.empty()) {
    if (!form) throw PreconditionError("--symbol or --form is required");
    return single("residue symbol", Json{{"form", form->matrix()}}, [q = *form](Envelope& e) {
      e.pipeline = "sphere_quadrature";
      e.value = quadratic_zeta_residue(q);
    });
  }
  const int d = symbol_dim(in, form);
  const ClassicalSymbol sigma = parse_symbol(in.symbol, d, form, parse_cutoff(in.cutoff));
  return single("residue symbol", Json{{"symbol", in.symbol}, {"dim", d}}, [sigma](Envelope& e) {
    e.pipeline = "sphere_quadrature";
    e.value = noncommutative_residue(sigma);
  });
}

struct SweepRows {
  std::vector<std::pair<cdouble, cdouble>> samples;
};

void fill_laurent(Envelope& e, const LaurentFit& f) {
  e.value = f.c0;
  e.residual = f.max_aliasing_estimate;
  e.is_pole = std::abs(f.c_minus1) > std::max(1e-6, 100 * f.max_aliasing_estimate);
  e.residue = f.c_minus1;
  e.extra["c_minus2"] = complex_json(f.c_minus2);
  Json higher = Json::array();
  for (const auto& h : f.higher) higher.push_back(complex_json(h));
  e.extra["higher"] = higher;
  e.extra["radius"] = f.radius;
  e.extra["npoints"] = f.npoints;
}

std::vector<Job> sweep_laurent(const Common& c, const Inputs& in, std::shared_ptr<SweepRows> rows) {
  const auto form = optional_form(in);
  const int d = symbol_dim(in, form);
  if (in.symbol.empty()) throw PreconditionError("--symbol is required");
  if (in.kind != "sum" && in.kind != "integral" && in.kind != "both")
    throw PreconditionError("--kind must be sum, integral or both");
  const ClassicalSymbol sigma = parse_symbol(in.symbol, d, form, parse_cutoff(in.cutoff));
  SweepOptions opts;
  opts.radius = in.radius;
  opts.npoints = in.points;
  opts.lattice = lattice_options(c, d);
  if (in.pipeline == "em")
    opts.pipeline = SumPipeline::euler_maclaurin;
  else if (in.pipeline != "lattice")
    throw PreconditionError("--pipeline must be lattice or em");
  const HolomorphicFamily family = riesz_family(sigma, in.slope, CutoffFunction(), in.scale);
  Json inputs{{"symbol", in.symbol}, {"dim", d},           {"slope", in.slope},     {"scale", in.scale},
              {"kind", in.kind},     {"radius", in.radius}, {"points", in.points}, {"pipeline", in.pipeline}};
  return single("sweep laurent", inputs, [family, opts, kind = in.kind, rows](Envelope& e) {
    e.pipeline = kind == "integral" ? "contour_integral" : "contour_sum";
    const auto fit = kind == "integral" ? zsweep_regularized_integral(family, opts) : zsweep_regularized_sum(family, opts);
    fill_laurent(e, fit);
    rows->samples = fit.samples;
    e.extra["predicted_residue"] = complex_json(predicted_sweep_residue(family));
    if (!is_near_integer(family.base().order())) {
      if (kind == "integral") e.extra["cutoff_integral"] = complex_json(cutoff_integral(family.base()).value);
    }
    if (kind == "both") {
      const auto other = zsweep_regularized_integral(family, opts);
      e.extra["integral_c0"] = complex_json(other.c0);
      e.extra["integral_residue"] = complex_json(other.c_minus1);
      e.extra["defect_c0"] = complex_json(fit.c0 - other.c0);
    }
  });
}

// ---------------------------------------------------------------- driver

int execute(std::vector<Job> jobs, const Common& common, std::shared_ptr<SweepRows> rows, bool is_sweep,
            std::ostream& out, std::ostream& err) {
  int code = 0;
  std::vector<Envelope> done;
  for (auto& job : jobs) {
    Envelope e = job.proto;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      job.run(e);
    } catch (const PreconditionError& ex) {
      err << "error: " << ex.what() << "\n";
      return 2;
    } catch (const DomainError& ex) {
      err << "error: " << ex.what() << "\n";
      return 2;
    } catch (const ParameterError& ex) {
      err << "error: " << ex.what() << "\n";
      return 2;
    } catch (const PoorFitError& ex) {
      e.value.reset();
      e.error = ex.what();
      e.residual = ex.best_fit().residual_norm;
      e.condition = ex.best_fit().condition;
      e.nmax = ex.best_fit().nmax;
      code = 3;
    } catch (const AccuracyError& ex) {
      e.value.reset();
      e.error = ex.what();
      e.residual = ex.achieved();
      code = 3;
    } catch (const IllConditionedError& ex) {
      e.value.reset();
      e.error = ex.what();
      e.condition = ex.condition();
      code = 3;
    } catch (const Error& ex) {
      e.value.reset();
      e.error = ex.what();
      code = 3;
    }
    e.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    done.push_back(std::move(e));
  }
  if (common.out == "csv") {
    if (is_sweep) {
      out << kSweepCsvHeader << '\n';
      for (const auto& [z, v] : rows->samples)
        out << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(v.real()) << ','
            << format_double(v.imag()) << '\n';
    } else {
      out << kCsvHeader << '\n';
      for (const auto& e : done) write_csv_row(out, e);
    }
  } else if (done.size() == 1) {
    write_json(out, to_json(done.front()));
    out << '\n';
  } else {
    Json arr = Json::array();
    for (const auto& e : done) arr.push_back(to_json(e));
    write_json(out, arr);
    out << '\n';
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regularized lattice sums, Epstein zeta functions and torus determinants", "symzeta"};
  app.require_subcommand(1);
  Common common;
  Inputs in;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--prec", common.prec, "oracle working precision in bits (>= 128)");
    sub->add_option("--tol", common.tol, "direct-sum tail tolerance; oracle target tolerance");
    sub->add_option("--nmax", common.nmax, "largest lattice radius (0 = default)");
    sub->add_option("--profile", common.profile, "sample-radius ladder")->check(CLI::IsMember({"fast", "standard", "sparse"}));
    sub->add_option("--seed", common.seed, "accepted and ignored");
    sub->add_flag("--oracle", common.oracle, "evaluate with the high-precision reference");
  };
  auto add_symbol = [&](CLI::App* sub) {
    sub->add_option("--symbol", in.symbol, "sum of [c*]pow(norm2(x)|q(x), e)");
    sub->add_option("--form", in.form, "quadratic form \"a,b;c,d\"");
    sub->add_option("--dim", in.dim, "dimension");
    sub->add_option("--cutoff", in.cutoff, "cutoff radii \"r0,r1\" or none");
  };

  std::function<std::vector<Job>()> make;
  bool is_sweep = false;
  auto rows = std::make_shared<SweepRows>();

  auto* zeta = app.add_subcommand("zeta", "zeta functions");
  zeta->require_subcommand(1);
  auto* riemann = zeta->add_subcommand("riemann", "Riemann zeta");
  riemann->add_option("--s", in.s, "point(s) \"a+bi\"")->required();
  add_common(riemann);
  riemann->callback([&] { make = [&] { return zeta_riemann(common, in); }; });
  auto* hurwitz = zeta->add_subcommand("hurwitz", "Hurwitz zeta sum_{n>=0} (n+p)^{-s}");
  hurwitz->add_option("--s", in.s, "point(s)")->required();
  hurwitz->add_option("--p", in.p, "shift p > 0")->required();
  add_common(hurwitz);
  hurwitz->callback([&] { make = [&] { return zeta_hurwitz(common, in); }; });
  auto* quadratic = zeta->add_subcommand("quadratic", "Epstein zeta of a quadratic form");
  quadratic->add_option("--s", in.s, "point(s)")->required();
  quadratic->add_option("--form", in.form, "quadratic form \"a,b;c,d\"")->required();
  add_common(quadratic);
  quadratic->callback([&] { make = [&] { return zeta_quadratic(common, in); }; });
  auto* torus = zeta->add_subcommand("torus", "spectral zeta of the flat torus Laplacian");
  torus->add_option("--s", in.s, "point(s)")->required();
  torus->add_option("--dim", in.dim, "dimension 1..3")->required();
  add_common(torus);
  torus->callback([&] { make = [&] { return zeta_torus(common, in); }; });

  auto* sum = app.add_subcommand("sum", "regularized sums");
  sum->require_subcommand(1);
  auto* fp = sum->add_subcommand("fp", "canonical (finite-part) lattice sum");
  add_symbol(fp);
  fp->add_option("--poly", in.poly, "polynomial, e.g. \"3/2*x0^2*x1 - x1^4\"");
  fp->add_option("--shift", in.shift, "translation vector \"p1,p2\"");
  fp->add_option("--method", in.method, "auto, em or lattice")->check(CLI::IsMember({"auto", "em", "lattice"}));
  fp->add_flag("--defect", in.defect, "report canonical sum minus cut-off integral");
  fp->add_flag("--exact", in.exact, "polynomial finite part in exact arithmetic");
  fp->add_option("--hypercube", in.hypercube, "exact polynomial sum over [-N, N]^d, checked by enumeration");
  add_common(fp);
  fp->callback([&] { make = [&] { return sum_fp(common, in); }; });

  auto* integral = app.add_subcommand("integral", "regularized integrals");
  integral->require_subcommand(1);
  auto* cut = integral->add_subcommand("cutoff", "cut-off regularized integral");
  add_symbol(cut);
  cut->add_option("--shift", in.shift, "translation vector");
  cut->add_option("--domain", in.domain, "ball or supball");
  add_common(cut);
  cut->callback([&] { make = [&] { return integral_cutoff(common, in); }; });

  auto* residue = app.add_subcommand("residue", "residues");
  residue->require_subcommand(1);
  auto* res_sym = residue->add_subcommand("symbol", "noncommutative residue (or sphere integral of q^{-d/2})");
  add_symbol(res_sym);
  add_common(res_sym);
  res_sym->callback([&] { make = [&] { return residue_symbol(common, in); }; });

  auto* det = app.add_subcommand("det", "zeta determinants");
  det->require_subcommand(1);
  auto* det_torus_cmd = det->add_subcommand("torus", "zeta determinant of the torus Laplacian");
  det_torus_cmd->add_option("--dim", in.dim, "dimension 1..2")->required();
  add_common(det_torus_cmd);
  det_torus_cmd->callback([&] { make = [&] { return det_torus(common, in); }; });

  auto* sweep = app.add_subcommand("sweep", "holomorphic-family sweeps");
  sweep->require_subcommand(1);
  auto* laurent = sweep->add_subcommand("laurent", "Laurent data at z = 0 of a Riesz-type family");
  add_symbol(laurent);
  laurent->add_option("--slope", in.slope, "order slope b of |x|^{bz}");
  laurent->add_option("--scale", in.scale, "Riesz scale lambda: |x / lambda|^{bz}");
  laurent->add_option("--kind", in.kind, "sum, integral or both");
  laurent->add_option("--pipeline", in.pipeline, "lattice or em");
  laurent->add_option("--radius", in.radius, "contour radius (upper bound)");
  laurent->add_option("--points", in.points, "contour points (power of two)");
  add_common(laurent);
  laurent->callback([&] {
    is_sweep = true;
    make = [&] { return sweep_laurent(common, in, rows); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  std::vector<Job> jobs;
  try {
    if (common.prec < 128) throw PreconditionError("--prec must be at least 128");
    jobs = make();
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  return execute(std::move(jobs), common, rows, is_sweep, out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace symzeta::cli
