// superapprox: run windowed-interpolation experiments and constant audits.
//
//   superapprox presets
//   superapprox run <preset|config.json> [--out DIR] [--seed U64] [--format csv|json] [--h-levels I]
//   superapprox constants [--out DIR] [--seed U64] [--format csv|json]
//   superapprox rates <report.csv>... [--predicted R]

#include <iostream>

#include <CLI11.hpp>

#include "superapprox/cli.hpp"

namespace cli = superapprox::cli;

int main(int argc, char** argv) {
  CLI::App app{"Superapproximation verification experiments"};
  app.require_subcommand(1);

  std::string out_dir;
  std::uint64_t seed = 0;
  std::string format = "json";
  int h_levels = 0;

  auto* presets = app.add_subcommand("presets", "List the built-in presets");

  auto* run = app.add_subcommand("run", "Run a preset or a config JSON file");
  std::string target;
  run->add_option("target", target, "Preset name or path to a config JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (default: $SUPERAPPROX_OUT or ./superapprox-out)");
  auto* run_seed = run->add_option("--seed", seed, "Seed override");
  run->add_option("--format", format, "Summary printed to stdout")->check(CLI::IsMember({"csv", "json"}));
  auto* run_levels = run->add_option("--h-levels", h_levels, "Number of h levels d 2^-i")->check(CLI::Range(1, 30));

  auto* constants = app.add_subcommand("constants", "Constant table for the desk catalog");
  constants->add_option("--out", out_dir, "Output directory");
  auto* const_seed = constants->add_option("--seed", seed, "Seed for sampled estimates");
  constants->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bool full_sup = false;
  constants->add_flag("--full-sup", full_sup, "Sup-flavor inverse constants for every (p, q)");

  auto* rates = app.add_subcommand("rates", "Re-fit trend and rate from existing report CSVs");
  std::vector<std::string> csvs;
  double predicted = 0.0;
  rates->add_option("csv", csvs, "Report CSV files")->required();
  auto* rates_pred = rates->add_option("--predicted", predicted, "Predicted h-power of lhs/rhs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  const std::filesystem::path out = out_dir.empty() ? cli::default_output_dir() : std::filesystem::path(out_dir);

  if (*presets) {
    for (const auto& p : cli::list_presets()) {
      std::cout << p.name << "\t" << p.estimate;
      if (p.config)
        std::cout << "\tn=" << p.config->n << " m=" << p.config->m << " ell=" << p.config->ell
                  << " rate=" << p.predicted_rate;
      std::cout << "\t" << p.description << "\n";
    }
    return cli::kExitPass;
  }

  if (*run) {
    cli::RunOptions opt;
    opt.out = out;
    if (*run_seed) opt.seed = seed;
    if (*run_levels) opt.h_levels = h_levels;
    opt.format = cli::format_from_string(format);
    return cli::run(target, opt, std::cout, std::cerr);
  }

  if (*constants) {
    cli::AuditOptions ao;
    if (*const_seed) ao.seed = seed;
    ao.full_sup_table = full_sup;
    try {
      std::filesystem::create_directories(out);
      const cli::AuditResult a = cli::run_audit(ao);
      const std::string table = cli::constants_csv(a.constants);
      cli::write_text(out / "constants.csv", table);
      if (format == "csv") {
        std::cout << table;
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& c : a.constants)
          rows.push_back({{"which", superapprox::to_string(c.which)},
                          {"family", superapprox::to_string(c.family)},
                          {"k", c.k},
                          {"N", c.dim},
                          {"p", c.p},
                          {"q", c.q},
                          {"s", superapprox::to_string(c.s)},
                          {"method", superapprox::to_string(c.method)},
                          {"value", c.value},
                          {"lower_bound", c.lower_bound},
                          {"degenerate", c.degenerate}});
        std::cout << rows.dump(2) << "\n";
      }
      return a.pass ? cli::kExitPass : cli::kExitFail;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kExitConfig;
    }
  }

  if (*rates) {
    nlohmann::json all = nlohmann::json::array();
    try {
      for (const auto& f : csvs)
        all.push_back(cli::refit_csv(f, *rates_pred ? std::optional<double>(predicted) : std::nullopt));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kExitConfig;
    }
    std::cout << all.dump(2) << "\n";
    return cli::kExitPass;
  }
  return cli::kExitConfig;
}
