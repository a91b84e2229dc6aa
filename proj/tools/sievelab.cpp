// sievelab <mode> [--config FILE] [--N ...] [--Q ...] [--k ...] [--eps ...]
//          [--seed ...] [--out FILE] [--set key=value ...]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sievelab/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string mode_list() {
  return "verify-thm1, verify-thm2, verify-thm3, verify-lemma1, verify-lemma8, delta-oracle, "
         "regime-table, farey-stats";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large sieve experiments for power moduli"};
  std::string mode_name, config_path, out_path;
  std::string n_list, q_list, k_list, eps, seed;
  std::vector<std::string> settings;
  app.add_option("mode", mode_name, "one of: " + mode_list())->required();
  app.add_option("--config", config_path, "key=value file; flags override it");
  app.add_option("--N", n_list, "comma separated N values");
  app.add_option("--Q", q_list, "comma separated Q (or Q0) values");
  app.add_option("--k", k_list, "comma separated exponents k");
  app.add_option("--eps", eps, "epsilon");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--out", out_path, "CSV output path ('-' for standard output)");
  app.add_option("--set", settings, "extra key=value setting (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  sievelab::ExperimentSpec spec;
  try {
    const auto mode = sievelab::parse_mode(mode_name);
    if (!mode) throw std::invalid_argument("unknown mode '" + mode_name + "'; expected " + mode_list());
    spec.mode = *mode;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot read config file " + config_path);
      for (const auto& [key, value] : sievelab::parse_config(in)) {
        if (key == "mode") continue;  // the positional mode wins
        sievelab::apply_setting(spec, key, value);
      }
    }
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got " + s);
      sievelab::apply_setting(spec, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!n_list.empty()) sievelab::apply_setting(spec, "N", n_list);
    if (!q_list.empty()) sievelab::apply_setting(spec, "Q", q_list);
    if (!k_list.empty()) sievelab::apply_setting(spec, "k", k_list);
    if (!eps.empty()) sievelab::apply_setting(spec, "eps", eps);
    if (!seed.empty()) sievelab::apply_setting(spec, "seed", seed);
    spec = sievelab::with_defaults(spec);
  } catch (const std::exception& e) {
    std::cerr << "sievelab: " << e.what() << '\n';
    return kExitUsage;
  }

  sievelab::RunResult result;
  try {
    result = sievelab::run(spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "sievelab: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostream* summary_out = &std::cout;
  if (out_path == "-") {
    sievelab::write_csv(std::cout, result.rows);
    summary_out = &std::cerr;
  } else if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (out) sievelab::write_csv(out, result.rows);
    out.close();
    if (!out) {
      std::cerr << "sievelab: cannot write " << out_path << '\n';
      return kExitUsage;
    }
  }
  sievelab::print_summary(*summary_out, result.summary);
  return result.summary.passed() ? kExitPass : kExitCheckFailed;
}
