#include <cmath>
#include <sstream>

#include "doctest.h"
#include "matcoef/harness.hpp"
#include "matcoef/principal.hpp"

using namespace matcoef;
using namespace matcoef::harness;
using nlohmann::json;

TEST_CASE("config parsing") {
  auto c = parse_config(json::parse(R"({"family": "principal", "s_grid": {"start": 1, "stop": 2, "step": 0.25},
                                        "mu_range": [0, 2], "nu_range": [-1, 1, 3], "quad": {"rel_tol": 1e-6}})"));
  CHECK(c.family == Family::principal);
  CHECK(c.s_grid == std::vector<double>{1, 1.25, 1.5, 1.75, 2});
  CHECK(c.nu_range == std::vector<int>{-1, 1, 3});
  CHECK(c.quad.rel_tol == 1e-6);
  CHECK(!c.suites.has_value());

  CHECK_THROWS(parse_config(json::parse(R"({"famly": "principal"})")));
  CHECK_THROWS(parse_config(json::parse(R"({"quad": {"rel_tol": 1e-6, "extra": 1}})")));
  CHECK_THROWS(parse_config(json::parse(R"({"r_grid": {"start": 0, "stop": 1, "step": 0.5, "n": 3}})")));
  CHECK_THROWS(parse_config(json::parse(R"({"mu_range": [0.5]})")));
  CHECK_THROWS(parse_config(json::parse(R"({"suites": ["nope"]})")));
  CHECK_THROWS(parse_config(json::parse(R"({"family": "quaternionic"})")));
  CHECK_THROWS(parse_config(json::parse(R"({"quad": {"rel_tol": -1}})")));
}

TEST_CASE("sweep validation") {
  SweepConfig c;
  CHECK_THROWS(c.validate());  // no family
  c.family = Family::principal;
  c.s_grid = {0.0};
  c.mu_range = c.nu_range = {0, 1};
  c.r_grid = {1.0};
  CHECK_THROWS(c.validate());  // s = 0 has no Theorem 2.1 bound
  c.family = Family::howe_tan;
  CHECK_NOTHROW(c.validate());
  c.r_grid = {};
  CHECK_THROWS(c.validate());
  c.family = Family::complementary;
  c.lambda_grid = {0.25};
  c.mu_range = {1};
  c.r_grid = {2.0};
  CHECK_THROWS(c.validate());
}

TEST_CASE("discrete sharp case") {
  SweepConfig c;
  c.family = Family::discrete_plus;
  c.ell_set = {1};
  c.mu_range = c.nu_range = {0};
  c.r_grid = {0, 1, 2};
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.family == "discrete-plus");
    CHECK(std::fabs(r.ratio - 1.0) <= 1e-15);
    CHECK(r.mu == 0.5);
  }
}

TEST_CASE("single-point principal sweep reproduces the coefficient") {
  SweepConfig c;
  c.family = Family::principal;
  c.s_grid = {1.0};
  c.epsilons = {0};
  c.mu_range = {2};
  c.nu_range = {-4};
  c.r_grid = {3.0};
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 1);
  principal::PrincipalParams p;
  p.s = 1.0;
  p.mu = 2;
  p.nu = -4;
  const auto want = principal::coeff_principal(p, 3.0, c.quad);
  CHECK(rows[0].abs_coeff == doctest::Approx(std::abs(want.value)).epsilon(1e-12));
  CHECK(rows[0].ratio == doctest::Approx(rows[0].abs_coeff / principal::theorem_bound(1.0, 3.0)).epsilon(1e-15));
  CHECK_FALSE(rows[0].flagged);
}

TEST_CASE("determinism and CSV round trip") {
  SweepConfig c;
  c.family = Family::howe_tan;
  c.s_grid = {0.0, 2.0};
  c.mu_range = c.nu_range = {-3, -2, 1, 4};
  c.r_grid = {0.0, 1.5, 4.0};
  const auto a = run_sweep(c, Execution::parallel);
  const auto b = run_sweep(c, Execution::serial);
  CHECK(a == b);
  std::ostringstream o1, o2;
  write_csv(o1, a);
  write_csv(o2, run_sweep(c));
  CHECK(o1.str() == o2.str());
  std::istringstream in(o1.str());
  CHECK(read_csv(in) == a);
  bool reducible = false;
  for (const auto& r : a) reducible = reducible || r.family == "howe-tan-reducible";
  CHECK(reducible);

  SweepConfig d;
  d.family = Family::dispersive;
  d.dims = {1, 2};
  d.t_grid = {-3.0, 0.0, 3.0};
  d.vector_pairs = 2;
  const auto x = run_sweep(d), y = run_sweep(d);
  CHECK(x == y);
  CHECK(x[0].ratio == x[2].ratio);  // even in t
}

TEST_CASE("failed points become flagged rows") {
  SweepConfig c;
  c.family = Family::principal;
  c.s_grid = {3.0};
  c.epsilons = {1};
  c.mu_range = c.nu_range = {1, 3};
  c.r_grid = {2.0};
  c.quad.rel_tol = 1e-300;
  c.quad.abs_tol = 1e-300;
  c.quad.max_doublings = 1;
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.flagged);
    CHECK(std::isfinite(r.abs_coeff));
  }
  std::ostringstream o;
  write_csv(o, rows);
  CHECK(o.str().find("principal:flagged,") != std::string::npos);
  std::istringstream in(o.str());
  CHECK(read_csv(in) == rows);
}

TEST_CASE("csv number format") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(41.0) == "41");
  CHECK(std::strtod(format_double(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("verify: empty suite list skips everything") {
  const auto cfg = parse_config(json::parse(R"({"suites": []})"));
  const auto s = verify_all(cfg);
  CHECK(s.passed());
  CHECK(s.suites.size() == suite_names().size());
  for (const auto& r : s.suites) CHECK(r.status == Status::skipped);
  CHECK(s.to_json()["suites"][0]["status"] == "skipped");
}

TEST_CASE("verify: fast suites pass at desk tolerance") {
  const auto cfg = parse_config(json::parse(R"({"suites": ["discrete_bound", "formal_degree", "refinement", "specfun"]})"));
  const auto s = verify_all(cfg);
  CHECK(s.passed());
  for (const auto& r : s.suites)
    if (r.name == "refinement") CHECK(r.status == Status::pass);
}

TEST_CASE("verify: loosened quadrature fails the refinement suite") {
  const auto cfg = parse_config(json::parse(R"({"quad": {"rel_tol": 1e-2}, "suites": ["refinement"]})"));
  const auto s = verify_all(cfg);
  CHECK_FALSE(s.passed());
  const auto again = verify_all(cfg);
  CHECK(s.to_json() == again.to_json());
}
