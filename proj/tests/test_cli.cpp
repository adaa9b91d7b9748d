#include <doctest.h>

#include <json.hpp>
#include <regex>
#include <sstream>

#include "symzeta/cli.hpp"
#include "symzeta/errors.hpp"

using namespace symzeta;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string without_runtime(const std::string& s) {
  return std::regex_replace(s, std::regex("\"runtime_ms\": [^,\\n]*"), "\"runtime_ms\": X");
}

}  // namespace

TEST_CASE("complex and matrix parsing") {
  CHECK(cli::parse_complex("-1") == cdouble(-1));
  CHECK(cli::parse_complex("1+2i") == cdouble(1, 2));
  CHECK(cli::parse_complex(" 0.5 - 14.1i ") == cdouble(0.5, -14.1));
  CHECK(cli::parse_complex("2i") == cdouble(0, 2));
  CHECK(cli::parse_complex("-i") == cdouble(0, -1));
  CHECK(cli::parse_complex("1e-3+2e+1i") == cdouble(1e-3, 20));
  CHECK_THROWS_AS(cli::parse_complex("abc"), PreconditionError);
  const auto q = cli::parse_form("1,0.5;0.5,1");
  CHECK(q.entry(0, 1) == 0.5);
  CHECK_THROWS_AS(cli::parse_form("1,0;0"), PreconditionError);
}

TEST_CASE("symbol and polynomial parsing") {
  const auto s = cli::parse_symbol("2*pow(norm2(x),-0.75) - pow(norm2(x),-1.25)", 1, std::nullopt);
  CHECK(std::abs(s.evaluate({2.0}) - (2 * std::pow(2.0, -1.5) - std::pow(2.0, -2.5))) < 1e-15);
  const auto q = cli::parse_symbol("pow(q(x),(-0.5+1i))", 2, cli::parse_form("2,0;0,1"));
  CHECK(q.order() == cdouble(-1, 2));
  CHECK_THROWS_AS(cli::parse_symbol("pow(q(x),1)", 2, std::nullopt), PreconditionError);
  CHECK_THROWS_AS(cli::parse_symbol("pow(y,1)", 2, std::nullopt), PreconditionError);
  const auto P = cli::parse_polynomial("3/2*x0^2*x1 - x1^4 + 5", 2);
  CHECK(P.terms.at({2, 1}) == make_rational(3, 2));
  CHECK(P.terms.at({0, 4}) == -1);
  CHECK(P.terms.at({0, 0}) == 5);
  CHECK_THROWS_AS(cli::parse_polynomial("x3", 2), PreconditionError);
}

TEST_CASE("riemann at -1 via the CLI") {
  const auto r = invoke({"zeta", "riemann", "--s", "-1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["command"] == "zeta riemann");
  CHECK(j["value"]["re"].get<double>() == doctest::Approx(-1.0 / 12).epsilon(1e-10));
  CHECK(j["is_pole"] == false);
  CHECK(j["version"] == cli::kVersion);
  for (const char* key : {"pipeline", "residual", "condition", "nmax", "runtime_ms"}) CHECK(j["diagnostics"].contains(key));
}

TEST_CASE("quadratic pole via the CLI") {
  const auto r = invoke({"zeta", "quadratic", "--form", "1,0;0,1", "--s", "1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["is_pole"] == true);
  CHECK(j["residue"]["re"].get<double>() == doctest::Approx(2 * std::numbers::pi).epsilon(1e-6));
}

TEST_CASE("seventeen significant digits and round trip") {
  const auto r = invoke({"zeta", "riemann", "--s", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1.6449340668482264") != std::string::npos);
  const auto j = Json::parse(r.out);
  CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("identical invocations give identical documents") {
  const std::vector<std::string> args = {"zeta", "hurwitz", "--s", "-2", "--p", "0.5"};
  CHECK(without_runtime(invoke(args).out) == without_runtime(invoke(args).out));
  const std::vector<std::string> sum = {"sum", "fp", "--symbol", "pow(norm2(x),-0.65)", "--dim", "2", "--profile", "sparse"};
  CHECK(without_runtime(invoke(sum).out) == without_runtime(invoke(sum).out));
}

TEST_CASE("csv output") {
  const auto r = invoke({"zeta", "riemann", "--s", "2", "--s", "-3", "--out", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == cli::kCsvHeader);
  CHECK(row1.rfind("zeta riemann,2,0,", 0) == 0);
  CHECK(row2.rfind("zeta riemann,-3,0,", 0) == 0);
  const auto sweep = invoke({"sweep", "laurent", "--symbol", "pow(norm2(x),-0.5)", "--dim", "1", "--pipeline", "em",
                             "--points", "16", "--out", "csv"});
  REQUIRE(sweep.code == 0);
  CHECK(sweep.out.rfind(std::string(cli::kSweepCsvHeader) + "\n", 0) == 0);
  CHECK(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 17);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"zeta"}).code == 2);
  CHECK(invoke({"zeta", "riemann"}).code == 2);
  CHECK(invoke({"zeta", "riemann", "--s", "x+y"}).code == 2);
  CHECK(invoke({"zeta", "quadratic", "--form", "1,2;2,1", "--s", "2"}).code == 2);
  CHECK(invoke({"zeta", "riemann", "--s", "2", "--out", "xml"}).code == 2);
  CHECK(invoke({"zeta", "riemann", "--s", "2", "--seed", "7"}).code == 0);
}

TEST_CASE("accuracy failures exit with 3 and still emit a document") {
  // A forced tiny oracle box cannot meet the target tolerance.
  const auto r = invoke({"zeta", "quadratic", "--form", "1,0;0,1", "--s", "2", "--oracle", "--tol", "1e-300"});
  CHECK(r.code == 3);
  const auto j = Json::parse(r.out);
  CHECK(j["value"].is_null());
  CHECK(j.contains("error"));
}

TEST_CASE("oracle and polynomial commands") {
  const auto d = invoke({"det", "torus", "--dim", "1", "--oracle"});
  REQUIRE(d.code == 0);
  CHECK(Json::parse(d.out)["value"]["re"].get<double>() == doctest::Approx(4 * std::numbers::pi * std::numbers::pi));
  const auto kp = invoke({"sum", "fp", "--poly", "x0^2*x1^2 + 3", "--dim", "2", "--hypercube", "4"});
  REQUIRE(kp.code == 0);
  const auto j = Json::parse(kp.out);
  CHECK(j["extra"]["agrees"] == true);
  CHECK(j["extra"]["exact"] == "3843");
}
