#pragma once

// The four experiment commands behind the walsh-logmeans CLI. Each command
// builds its result in memory first (so tests can inspect it) and is then
// written as CSV or JSON.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "walsh/experiment.hpp"
#include "walsh/norms.hpp"

namespace walsh {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Either a table or a free-form JSON document.
struct CommandOutput {
  std::string title;
  Table table;
  nlohmann::json document;
  bool is_document = false;
};

/// index, sample, multiplier for D_n, F_n or G_n.
CommandOutput cmd_kernel(const ExperimentConfig& config);
/// n, l1_error, mes_gt_<eps>... over the order sweep.
CommandOutput cmd_converge(const ExperimentConfig& config);
/// what = kernel-growth | lemma-gg | op-bound | est1 | xi | search.
CommandOutput cmd_diverge(const ExperimentConfig& config);
/// function, n, strong_ratio, weak_ratio over a random suite and the sweep.
CommandOutput cmd_norms(const ExperimentConfig& config);

struct TypeAudit {
  double riesz_strong;   // max ||f * G_n||_1 / ||f||_1
  double noerlund_weak;  // max weak_l1(f * F_n) / ||f||_1
};

/// Sweeps n = n_lo..n_hi over the one-dimensional adversarial suite.
TypeAudit type_audit(int resolution, std::uint64_t n_lo, std::uint64_t n_hi, std::size_t count,
                     std::uint64_t seed);

CommandOutput run_command(const ExperimentConfig& config);

/// Writes the output. Unless quiet_header is set, CSV output starts with a
/// '#' line carrying the command and a UTC timestamp, and JSON output gets a
/// "generated" field.
void write_output(std::ostream& out, const CommandOutput& output, const ExperimentConfig& config);

/// Young function selected by q / beta / qparam, with `default_beta` when
/// beta is unset.
YoungFunction young_from_config(const ExperimentConfig& config, double default_beta);

}  // namespace walsh
