// One line per numbered criterion: criterion N <suite> PASS|FAIL <scalar details>.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matcoef/harness.hpp"

using namespace matcoef::harness;

namespace {

std::string scalars(const nlohmann::json& d) {
  std::string out;
  for (const auto& [k, v] : d.items()) {
    if (v.is_object() || v.is_array()) continue;
    out += ' ' + k + '=' + (v.is_number_float() ? format_double(v.get<double>()) : v.dump());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria at the pinned tolerances"};
  std::vector<int> wanted;
  std::string config_path;
  app.add_option("--criterion", wanted, "Criterion number 1-10 (repeatable); default all")->check(CLI::Range(1, 10));
  app.add_option("--config", config_path, "Config overriding the defaults")->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);
  if (wanted.empty())
    for (int c = 1; c <= 10; ++c) wanted.push_back(c);

  SweepConfig cfg = config_path.empty() ? SweepConfig{} : load_config(config_path);
  bool ok = true;
  for (int c : wanted) {
    for (const auto& name : suite_names()) {
      if (suite_criterion(name) != c) continue;
      const auto res = run_suite(name, cfg);
      const bool pass = res.status == Status::pass;
      ok = ok && pass;
      std::cout << "criterion " << c << ' ' << name << ' ' << (pass ? "PASS" : "FAIL") << scalars(res.details) << '\n';
      for (const auto& f : res.failures) std::cout << "    " << f << '\n';
      std::cout.flush();
    }
  }
  return ok ? 0 : 1;
}
