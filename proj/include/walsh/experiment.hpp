#pragma once

// Experiment configuration shared by the command-line front end and the
// test suites. Configurations are flat key=value text; keys match the long
// flag names of the CLI.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace walsh {

struct ExperimentConfig {
  std::string command;
  int d = 1;
  std::vector<int> resolution;                  // K per axis; one value is broadcast
  std::optional<std::vector<int>> noerlund;     // B; unset means every axis
  std::vector<std::uint64_t> orders;            // sweep; empty means the default grid
  std::optional<std::uint64_t> n;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::string kind;                             // kernel: D, F or G
  std::string function = "rectangle";
  std::vector<double> params;
  std::string file;
  std::string q = "logpow";                     // logpow or power
  std::optional<double> beta;
  double q_param = 2.0;
  std::string what;                             // diverge sub-experiment
  std::optional<int> tilde;
  double c = 1.0;
  std::uint64_t trials = 64;
  std::uint64_t r = 0;                          // 0 picks the default translate count
  std::uint64_t count = 100;
  std::uint64_t seed = 1;
  std::vector<double> eps{0.1, 0.01};
  std::string format = "csv";
  std::string out;
  bool quiet_header = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

  std::map<std::string, std::string> to_pairs() const;
  static ExperimentConfig from_pairs(const std::map<std::string, std::string>& pairs);

  /// One key=value per line, keys in a fixed order.
  std::string serialize() const;
  static ExperimentConfig parse(std::string_view text);

  /// Per-axis resolution after broadcasting, or `fallback` on every axis.
  std::vector<int> resolved_resolution(int fallback) const;
  /// B as 1-based labels (all axes when unset).
  std::vector<int> resolved_noerlund() const;
};

/// Geometric default sweep n in {4, 8, 16, 32, 64}.
std::vector<std::uint64_t> default_order_sweep();

/// Splits key=value lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_key_value(std::string_view text);

/// Every key accepted in a configuration.
const std::vector<std::string>& config_keys();

}  // namespace walsh
