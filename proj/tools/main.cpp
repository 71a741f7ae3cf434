#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "matcoef/harness.hpp"
#include "matcoef/ktype_average.hpp"
#include "matcoef/metaplectic.hpp"

using namespace matcoef;
using nlohmann::json;
using quad::QuadConfig;

namespace {

// %.17g numbers in hand-built JSON so values survive a round trip.
std::string num(double v) { return harness::format_double(v); }

int run_coef(const std::string& rep, double s, double lambda, int ell, int mu, int nu, double r, double th1,
             double th2) {
  ktype::RepresentationId id;
  if (rep == "principal")
    id = ktype::Principal{s, ((mu % 2) + 2) % 2};
  else if (rep == "complementary")
    id = ktype::Complementary{lambda};
  else if (rep == "discrete-plus")
    id = ktype::DiscretePlus{ell};
  else
    id = ktype::DiscreteMinus{ell};
  ktype::KTypeVector f{{{mu, 1.0}}}, g{{{nu, 1.0}}};
  const auto res = ktype::coeff_general(id, f, g, ktype::KAKElement{th1, r, th2}, QuadConfig{});
  std::cout << "{\"re\": " << num(res.value.real()) << ", \"im\": " << num(res.value.imag())
            << ", \"abs\": " << num(std::abs(res.value)) << ", \"quad_err\": " << num(res.err_estimate) << "}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix coefficients of SL(2,R) series representations and the metaplectic representation"};
  app.require_subcommand(1);

  std::string rep;
  double s = 0.0, lambda = 0.25, r = 0.0, th1 = 0.0, th2 = 0.0;
  int ell = 2, mu = 0, nu = 0;
  auto* coef = app.add_subcommand("coef", "One matrix coefficient <pi(k a_r k) e_mu, e_nu>");
  coef->add_option("--rep", rep, "Representation family")
      ->required()
      ->check(CLI::IsMember({"principal", "complementary", "discrete-plus", "discrete-minus"}));
  coef->add_option("--s", s, "Principal series spectral parameter");
  coef->add_option("--lambda", lambda, "Complementary series parameter");
  coef->add_option("--ell", ell, "Discrete series weight");
  coef->add_option("--mu", mu, "K-type label of the first vector (2m for the discrete series)");
  coef->add_option("--nu", nu, "K-type label of the second vector (2n for the discrete series)");
  coef->add_option("--r", r, "Radial coordinate, r >= 0")->required();
  coef->add_option("--theta1", th1, "Left rotation angle");
  coef->add_option("--theta2", th2, "Right rotation angle");

  std::string config_path, out_path, format;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write bound records");
  sweep->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "Output file (defaults to output_path in the config)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suites; exit 1 on any failure");
  verify->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  verify->add_option("--suite", suites, "Suite to run (repeatable); default all")
      ->check(CLI::IsMember(harness::suite_names()));

  int m = 0, n = 0;
  auto* wigner = app.add_subcommand("wigner", "Planar Laguerre pair integral I(m, n, lambda)");
  wigner->add_option("--m", m, "First Hermite degree")->required();
  wigner->add_option("--n", n, "Second Hermite degree")->required();
  wigner->add_option("--lambda", lambda, "Dilation, >= 1")->required();

  int dim = 1;
  double t = 0.0;
  std::uint64_t seed = 1;
  auto* disp = app.add_subcommand("dispersive", "Dispersive ratio for a seeded pair of unit Hermite vectors");
  disp->add_option("--dim", dim, "Dimension")->required();
  disp->add_option("--t", t, "Time")->required();
  disp->add_option("--seed", seed, "Random seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*coef) return run_coef(rep, s, lambda, ell, mu, nu, r, th1, th2);

    if (*sweep) {
      auto cfg = harness::load_config(config_path);
      if (!out_path.empty()) cfg.output_path = out_path;
      if (format == "csv") cfg.output_format = harness::OutputFormat::csv;
      if (format == "json") cfg.output_format = harness::OutputFormat::json;
      if (cfg.output_path.empty()) throw std::invalid_argument("no output path: pass --out or set output_path");
      const auto rows = harness::run_sweep(cfg);
      harness::write_records(cfg.output_path, cfg.output_format, rows);
      std::size_t flagged = 0;
      for (const auto& row : rows) flagged += row.flagged;
      std::cerr << rows.size() << " records written to " << cfg.output_path << " (" << flagged << " flagged)\n";
      return 0;
    }

    if (*verify) {
      auto cfg = harness::load_config(config_path);
      if (!suites.empty()) cfg.suites = suites;
      const auto summary = harness::verify_all(cfg);
      std::cout << summary.to_json().dump(2) << '\n';
      return summary.passed() ? 0 : 1;
    }

    if (*wigner) {
      const double v = metaplectic::laguerre_pair_integral(m, n, lambda, QuadConfig{});
      std::cout << "{\"m\": " << m << ", \"n\": " << n << ", \"lambda\": " << num(lambda) << ", \"value\": " << num(v)
                << "}\n";
      return 0;
    }

    if (*disp) {
      harness::SweepConfig cfg;
      cfg.family = harness::Family::dispersive;
      cfg.dims = {dim};
      cfg.t_grid = {t};
      cfg.seed = seed;
      cfg.vector_pairs = 1;
      const auto rows = harness::run_sweep(cfg);
      const auto& row = rows.front();
      std::cout << "{\"dim\": " << dim << ", \"t\": " << num(t) << ", \"seed\": " << seed
                << ", \"ratio\": " << num(row.ratio) << ", \"sqrt_average\": " << num(row.abs_coeff)
                << ", \"quad_err\": " << num(row.quad_err) << "}\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
