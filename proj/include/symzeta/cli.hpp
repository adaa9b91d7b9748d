#pragma once

// Command-line front end. run() parses argv, evaluates and writes a JSON or
// CSV document to out; diagnostics for usage errors go to err.
//
// Exit codes: 0 success, 2 usage or input error, 3 accuracy or fit failure
// (the document is still written, with the error message and diagnostics).

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symzeta/reg_sum.hpp"
#include "symzeta/symbols.hpp"

namespace symzeta::cli {

inline constexpr const char* kVersion = "0.1.0";

// Header rows of the CSV output.
inline constexpr const char* kCsvHeader =
    "command,s_re,s_im,value_re,value_im,is_pole,residue_re,residue_im,pipeline,residual,condition,nmax,runtime_ms";
inline constexpr const char* kSweepCsvHeader = "z_re,z_im,value_re,value_im";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a", "bi", "a+bi", "a-bi" (spaces ignored).
cdouble parse_complex(const std::string& text);
// Row-major "a,b;c,d".
QuadraticForm parse_form(const std::string& text);
// Comma-separated reals.
std::vector<double> parse_vector(const std::string& text);
// Sum of terms [c*]pow(norm2(x)|q(x), e); norm2(x) is |x|^2 and q(x) needs a form.
// c and e are reals or parenthesized complex numbers.
ClassicalSymbol parse_symbol(const std::string& text, int dim, const std::optional<QuadraticForm>& form,
                             const CutoffFunction& cutoff = {});
// Sum of terms [c][*]x0^k0*x1^k1..., c rational ("3/2") or decimal-free integer.
Polynomial parse_polynomial(const std::string& text, int dim);

}  // namespace symzeta::cli
