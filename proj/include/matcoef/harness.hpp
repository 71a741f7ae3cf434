#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "matcoef/quad.hpp"

namespace matcoef::harness {

using quad::QuadConfig;

enum class Family { principal, howe_tan, complementary, discrete_plus, discrete_minus, metaplectic, dispersive };
enum class OutputFormat { csv, json };
enum class Execution { serial, parallel };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

/// Everything a sweep or a verify run needs. Field names match the JSON keys.
struct SweepConfig {
  std::optional<Family> family;
  std::vector<double> s_grid;
  std::vector<int> epsilons{0, 1};
  std::vector<double> lambda_grid;
  std::vector<int> ell_set;
  std::vector<int> mu_range;  // K-type labels, or offsets from h for the discrete series
  std::vector<int> nu_range;
  std::vector<double> r_grid;
  std::vector<double> t_grid;
  std::vector<int> dims;
  QuadConfig quad;
  std::uint64_t seed = 20240611;
  int vector_pairs = 5;
  int vector_terms = 3;
  int max_degree = 6;
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;
  std::optional<std::vector<std::string>> suites;  // absent: run all

  /// Grid checks for a sweep of `family`.
  void validate() const;
};

SweepConfig parse_config(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);

struct BoundRecord {
  std::string family;
  double p1 = 0, p2 = 0, mu = 0, nu = 0, r_or_t = 0;
  double abs_coeff = 0, bound = 0, ratio = 0, quad_err = 0;
  bool flagged = false;  // the point missed its quadrature tolerance
  friend bool operator==(const BoundRecord&, const BoundRecord&) = default;
};

/// Rows in grid order; failed points come back flagged with their best estimate.
std::vector<BoundRecord> run_sweep(const SweepConfig& cfg, Execution ex = Execution::parallel);

std::string format_double(double v);
void write_csv(std::ostream& os, const std::vector<BoundRecord>& rows);
std::vector<BoundRecord> read_csv(std::istream& is);
nlohmann::json records_to_json(const std::vector<BoundRecord>& rows);
void write_records(const std::string& path, OutputFormat fmt, const std::vector<BoundRecord>& rows);

enum class Status { pass, fail, skipped };

struct SuiteResult {
  std::string name;
  int criterion = 0;  // 0 for suites outside the numbered list
  Status status = Status::skipped;
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> failures;
};

struct VerifySummary {
  std::vector<SuiteResult> suites;
  bool passed() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
int suite_criterion(const std::string& name);
SuiteResult run_suite(const std::string& name, const SweepConfig& cfg);
VerifySummary verify_all(const SweepConfig& cfg);

}  // namespace matcoef::harness
