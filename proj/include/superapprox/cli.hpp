#pragma once

// Presets, report files and the orchestration behind the command-line tool.
//
// Exit status: 0 when every report passes, 2 when a check fails, 1 on a bad
// configuration or I/O error.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superapprox/constants.hpp"
#include "superapprox/verify.hpp"

namespace superapprox::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFail = 2;

struct Preset {
  std::string name;
  std::string description;
  /// Empty for the assumption audit, which is not a single experiment.
  std::optional<ExperimentConfig> config;
  /// "SA1", "SA2", "lemma", "identity" or "audit".
  std::string estimate;
  double predicted_rate = 0.0;
};

/// Stable order; names are unique.
std::vector<Preset> list_presets();
/// Throws ConfigError for an unknown name.
Preset find_preset(const std::string& name);

/// "%.17g"; non-finite values print as inf, -inf or nan.
std::string format_double(double x);

/// Columns h,trial,lhs,rhs,ratio; header only for an empty list.
std::string report_csv(const std::vector<VerificationReport>& reports);
nlohmann::json report_summary(const VerificationReport& r);

enum class Format { csv, json };
Format format_from_string(const std::string& s);

/// Writes <stem>.csv and <stem>.json into dir. Throws std::runtime_error on I/O failure.
void emit_report(const VerificationReport& r, const std::filesystem::path& dir, const std::string& stem);
void write_text(const std::filesystem::path& file, const std::string& text);

struct AuditResult {
  std::vector<ConstantEstimate> constants;
  nlohmann::json windows;
  bool pass = true;
};

struct AuditOptions {
  std::uint64_t seed = 7;
  int interp_trials = 6;
  int h_levels = 7;
  /// Sup-flavor inverse constants for every (p, q) instead of q = p + 1 only.
  bool full_sup_table = false;
};

/// Constant table over the desk catalog plus window certifications.
AuditResult run_audit(const AuditOptions& opt);
std::string constants_csv(const std::vector<ConstantEstimate>& table);

/// SUPERAPPROX_OUT when set, else "superapprox-out".
std::filesystem::path default_output_dir();

struct RunOptions {
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  std::optional<int> h_levels;
  Format format = Format::json;
};

/// target is a preset name or a path to a config JSON file. Progress and the
/// summary in `format` go to `out`, diagnostics to `err`.
int run(const std::string& target, const RunOptions& opt, std::ostream& out, std::ostream& err);

/// Re-fits an existing report CSV: ratio trend, and the rate of
/// max ratio * h^predicted when predicted is given.
nlohmann::json refit_csv(const std::filesystem::path& csv, std::optional<double> predicted);

}  // namespace superapprox::cli
