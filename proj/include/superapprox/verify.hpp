#pragma once

// h-refinement experiments for the windowed interpolation estimates.
//
// Every check runs the same loop: for each diameter h in the sequence, build
// the similar cell K_h, draw `trials` random chi in the shape-function space
// and record (lhs, rhs). Trial t uses the same local-frame coefficients at
// every h, so per-level statistics follow one family of functions.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superapprox/cutoff.hpp"
#include "superapprox/elements.hpp"
#include "superapprox/norms.hpp"
#include "superapprox/rates.hpp"

namespace superapprox {

enum class CheckKind { sa1, sa2, splitting, lemma1, lemma2 };

std::string to_string(CheckKind c);
CheckKind check_kind_from_string(const std::string& s);

/// Raised for configurations outside the hypotheses; the message names the
/// violated condition.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  ElementDescriptor element;
  WindowDescriptor window;
  int n = 1;
  int m = 0;
  int ell = 0;
  double d = 1.0;
  int h_levels = 7;
  /// Explicit diameters; when empty, d 2^{-i} for i < h_levels.
  std::vector<double> h_sequence;
  int trials = 20;
  std::uint64_t seed = 7;
  CheckKind check = CheckKind::sa1;
  // lemma1: power q, seminorm order p, flavor s; lemma2: order j.
  int q = 1;
  int p = 0;
  Flavor s = Flavor::l2;
  int j = 0;

  std::vector<double> diameters() const;
  /// Throws ConfigError.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Missing optional keys take the defaults above. Throws ConfigError on
/// malformed input.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

struct LevelRecord {
  double h = 0.0;
  int trial = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct Tolerances {
  double trend_max = 0.05;
  double rate_slack = 0.15;
  double lhs_floor = 1e-13;
  double splitting_max = 1e-8;
};

struct VerificationReport {
  ExperimentConfig config;
  std::vector<LevelRecord> records;
  double observed_constant = 0.0;
  /// Slope of log(max ratio per level) against log(1/h); growth as h shrinks is positive.
  double trend = 0.0;
  int trend_points = 0;
  std::optional<RateFit> rate;
  double predicted_rate = 0.0;
  bool rate_checked = false;
  bool rate_ok = true;
  bool pass = false;
  Tolerances tolerances;
  std::vector<std::string> notes;
};

VerificationReport check_splitting_identity(const ExperimentConfig& cfg);
VerificationReport verify_reduction_lemma(const ExperimentConfig& cfg, int q, int p, Flavor s);
VerificationReport verify_switch_lemma(const ExperimentConfig& cfg, int j);
VerificationReport verify_sa1(const ExperimentConfig& cfg);
VerificationReport verify_sa2(const ExperimentConfig& cfg);

/// Dispatches on cfg.check (lemma parameters taken from cfg).
VerificationReport run_check(const ExperimentConfig& cfg);

/// Random chi for a trial: standard-normal local-frame coefficients.
std::vector<double> trial_coefficients(const ExperimentConfig& cfg, std::size_t space_size, int trial);

}  // namespace superapprox
