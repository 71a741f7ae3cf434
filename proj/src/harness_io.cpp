#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "matcoef/harness.hpp"

namespace matcoef::harness {

using nlohmann::json;

namespace {

const char* const kFamilies[] = {"principal", "howe-tan", "complementary", "discrete-plus",
                                 "discrete-minus", "metaplectic", "dispersive"};
constexpr const char* kFlagSuffix = ":flagged";
constexpr const char* kHeader = "family,p1,p2,mu,nu,r_or_t,abs_coeff,bound,ratio,quad_err";

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) bad("unknown key '" + key + "' in " + where);
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) bad(key + " must hold numbers");
  return v.get<double>();
}

// A grid is a list of numbers or {start, stop, step}, stop inclusive.
std::vector<double> real_grid(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(number(x, key));
  } else if (v.is_object()) {
    reject_unknown(v, {"start", "stop", "step"}, key);
    if (!v.contains("start") || !v.contains("stop") || !v.contains("step")) bad(key + " needs start, stop, step");
    const double a = number(v["start"], key), b = number(v["stop"], key), h = number(v["step"], key);
    if (!(h > 0.0) || !(b >= a)) bad(key + " needs step > 0 and stop >= start");
    const long n = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
    if (n > 1000000) bad(key + " has too many points");
    for (long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * h);
  } else {
    bad(key + " must be a list or {start, stop, step}");
  }
  for (double x : out)
    if (!std::isfinite(x)) bad(key + " has a non-finite entry");
  return out;
}

std::vector<int> int_grid(const json& v, const std::string& key) {
  std::vector<int> out;
  for (double x : real_grid(v, key)) {
    const double r = std::round(x);
    if (std::fabs(x - r) > 1e-9 || std::fabs(r) > 1e6) bad(key + " must hold integers");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

QuadConfig parse_quad(const json& v) {
  if (!v.is_object()) bad("quad must be an object");
  reject_unknown(v, {"rel_tol", "abs_tol", "max_doublings", "oscillation_scale"}, "quad");
  QuadConfig q;
  if (v.contains("rel_tol")) q.rel_tol = number(v["rel_tol"], "rel_tol");
  if (v.contains("abs_tol")) q.abs_tol = number(v["abs_tol"], "abs_tol");
  if (v.contains("max_doublings")) {
    if (!v["max_doublings"].is_number_integer()) bad("max_doublings must be an integer");
    q.max_doublings = v["max_doublings"].get<int>();
  }
  if (v.contains("oscillation_scale")) q.oscillation_scale = number(v["oscillation_scale"], "oscillation_scale");
  q.validate();
  return q;
}

int small_int(const json& v, const std::string& key, int lo, int hi) {
  if (!v.is_number_integer()) bad(key + " must be an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) bad(key + " out of range");
  return static_cast<int>(x);
}

}  // namespace

std::string family_name(Family f) { return kFamilies[static_cast<int>(f)]; }

Family family_from_name(const std::string& s) {
  for (int i = 0; i < 7; ++i)
    if (s == kFamilies[i]) return static_cast<Family>(i);
  throw std::invalid_argument("unknown family '" + s + "'");
}

SweepConfig parse_config(const json& j) {
  if (!j.is_object()) bad("top level must be an object");
  reject_unknown(j,
                 {"family", "s_grid", "epsilons", "lambda_grid", "ell_set", "mu_range", "nu_range", "r_grid", "t_grid",
                  "dims", "quad", "seed", "vector_pairs", "vector_terms", "max_degree", "output_path", "output_format",
                  "suites"},
                 "config");
  SweepConfig c;
  if (j.contains("family")) {
    if (!j["family"].is_string()) bad("family must be a string");
    c.family = family_from_name(j["family"].get<std::string>());
  }
  if (j.contains("s_grid")) c.s_grid = real_grid(j["s_grid"], "s_grid");
  if (j.contains("epsilons")) c.epsilons = int_grid(j["epsilons"], "epsilons");
  if (j.contains("lambda_grid")) c.lambda_grid = real_grid(j["lambda_grid"], "lambda_grid");
  if (j.contains("ell_set")) c.ell_set = int_grid(j["ell_set"], "ell_set");
  if (j.contains("mu_range")) c.mu_range = int_grid(j["mu_range"], "mu_range");
  if (j.contains("nu_range")) c.nu_range = int_grid(j["nu_range"], "nu_range");
  if (j.contains("r_grid")) c.r_grid = real_grid(j["r_grid"], "r_grid");
  if (j.contains("t_grid")) c.t_grid = real_grid(j["t_grid"], "t_grid");
  if (j.contains("dims")) c.dims = int_grid(j["dims"], "dims");
  if (j.contains("quad")) c.quad = parse_quad(j["quad"]);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("vector_pairs")) c.vector_pairs = small_int(j["vector_pairs"], "vector_pairs", 1, 10000);
  if (j.contains("vector_terms")) c.vector_terms = small_int(j["vector_terms"], "vector_terms", 1, 1000);
  if (j.contains("max_degree")) c.max_degree = small_int(j["max_degree"], "max_degree", 0, 100);
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) bad("output_path must be a string");
    c.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("output_format")) {
    const auto f = j["output_format"].get<std::string>();
    if (f == "csv")
      c.output_format = OutputFormat::csv;
    else if (f == "json")
      c.output_format = OutputFormat::json;
    else
      bad("output_format must be csv or json");
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) bad("suites must be a list");
    std::vector<std::string> s;
    for (const auto& x : j["suites"]) {
      if (!x.is_string()) bad("suites must hold names");
      const auto name = x.get<std::string>();
      if (suite_criterion(name) < 0) bad("unknown suite '" + name + "'");
      s.push_back(name);
    }
    c.suites = std::move(s);
  }
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<BoundRecord>& rows) {
  os << kHeader << '\n';
  for (const auto& r : rows) {
    os << r.family << (r.flagged ? kFlagSuffix : "");
    for (double v : {r.p1, r.p2, r.mu, r.nu, r.r_or_t, r.abs_coeff, r.bound, r.ratio, r.quad_err})
      os << ',' << format_double(v);
    os << '\n';
  }
}

std::vector<BoundRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kHeader) throw std::runtime_error("csv: bad header");
  std::vector<BoundRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 10) throw std::runtime_error("csv: expected 10 columns");
    BoundRecord r;
    r.family = cells[0];
    const std::string suffix = kFlagSuffix;
    if (r.family.size() > suffix.size() && r.family.ends_with(suffix)) {
      r.flagged = true;
      r.family.resize(r.family.size() - suffix.size());
    }
    double* fields[] = {&r.p1, &r.p2, &r.mu, &r.nu, &r.r_or_t, &r.abs_coeff, &r.bound, &r.ratio, &r.quad_err};
    for (int k = 0; k < 9; ++k) {
      char* end = nullptr;
      *fields[k] = std::strtod(cells[static_cast<std::size_t>(k) + 1].c_str(), &end);
      if (end == cells[static_cast<std::size_t>(k) + 1].c_str() || *end != '\0') throw std::runtime_error("csv: bad number");
    }
    out.push_back(std::move(r));
  }
  return out;
}

json records_to_json(const std::vector<BoundRecord>& rows) {
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"family", r.family},
                 {"p1", r.p1},
                 {"p2", r.p2},
                 {"mu", r.mu},
                 {"nu", r.nu},
                 {"r_or_t", r.r_or_t},
                 {"abs_coeff", r.abs_coeff},
                 {"bound", r.bound},
                 {"ratio", r.ratio},
                 {"quad_err", r.quad_err},
                 {"flagged", r.flagged}});
  return a;
}

void write_records(const std::string& path, OutputFormat fmt, const std::vector<BoundRecord>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (fmt == OutputFormat::csv)
    write_csv(out, rows);
  else
    out << records_to_json(rows).dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace matcoef::harness
