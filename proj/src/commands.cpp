#include "walsh/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include "walsh/counterexample.hpp"
#include "walsh/error.hpp"
#include "walsh/function_io.hpp"
#include "walsh/generators.hpp"
#include "walsh/logmeans.hpp"
#include "walsh/parallel.hpp"

namespace walsh {

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error(ErrorKind::kUsage, "no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

namespace {

[[noreturn]] void missing(const char* field) {
  throw Error(ErrorKind::kUsage, std::string("missing required field: ") + field);
}

AxisSubset axes_from(const ExperimentConfig& config) {
  try {
    return AxisSubset(config.d, config.resolved_noerlund());
  } catch (const Error& e) {
    throw Error(ErrorKind::kUsage, std::string("invalid value for B: ") + e.what());
  }
}

std::vector<std::uint64_t> sweep_from(const ExperimentConfig& config) {
  auto orders = config.orders.empty() ? default_order_sweep() : config.orders;
  for (auto n : orders) {
    if (n < 2) throw Error(ErrorKind::kUsage, "invalid value for orders: every order must be >= 2");
  }
  return orders;
}

// Resolution is validated before any grid is allocated.
Grid grid_for(const std::vector<int>& resolution, const std::vector<std::uint64_t>& orders) {
  int total = 0;
  for (int k : resolution) {
    if (k < 1 || k > 24) throw Error(ErrorKind::kUsage, "invalid value for K: expected 1..24 per axis");
    total += k;
  }
  if (total > 24) throw Error(ErrorKind::kUsage, "invalid value for K: grid above 2^24 cells");
  for (auto n : orders) {
    for (int k : resolution) {
      if (n > (std::uint64_t{1} << k)) {
        throw Error(ErrorKind::kResolutionExceeded,
                    "order " + std::to_string(n) + " exceeds resolution 2^" + std::to_string(k));
      }
    }
  }
  return Grid(resolution);
}

std::pair<int, int> n_range(const ExperimentConfig& config, int lo, int hi) {
  const int a = config.n_min.value_or(lo);
  const int b = config.n_max.value_or(hi);
  if (a < 1 || b < a) throw Error(ErrorKind::kUsage, "invalid value for nmin/nmax: empty range");
  if (b > 12) throw Error(ErrorKind::kUsage, "invalid value for nmax: above desk scale (12)");
  return {a, b};
}

std::string eps_label(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "mes_gt_%g", eps);
  return buf;
}

}  // namespace

YoungFunction young_from_config(const ExperimentConfig& config, double default_beta) {
  if (config.q == "logpow") {
    const double beta = config.beta.value_or(default_beta);
    if (beta < 0.0) throw Error(ErrorKind::kUsage, "invalid value for beta: must be >= 0");
    return YoungFunction::log_power(beta);
  }
  if (config.q == "power") {
    const double p = config.q_param;
    if (!(p > 1.0)) throw Error(ErrorKind::kUsage, "invalid value for qparam: power must exceed 1");
    return YoungFunction::custom("u^" + format_double(p), [p](double u) { return std::pow(u, p); });
  }
  throw Error(ErrorKind::kUsage, "invalid value for q: expected logpow or power");
}

CommandOutput cmd_kernel(const ExperimentConfig& config) {
  if (config.kind.empty()) missing("kind");
  if (!config.n) missing("n");
  if (config.resolution.size() > 1) throw Error(ErrorKind::kUsage, "invalid value for K: kernel is one-dimensional");
  const int k = config.resolution.empty() ? 6 : config.resolution[0];
  KernelKind kind;
  if (config.kind == "D") kind = KernelKind::kDirichlet;
  else if (config.kind == "F") kind = KernelKind::kNoerlund;
  else if (config.kind == "G") kind = KernelKind::kRiesz;
  else throw Error(ErrorKind::kUsage, "invalid value for kind: expected D, F or G");
  if (kind != KernelKind::kDirichlet && *config.n < 2) throw Error(ErrorKind::kUsage, "invalid value for n: must be >= 2");
  grid_for({k}, {*config.n});

  const auto profile = cached_kernel(kind, *config.n, k);
  CommandOutput out;
  out.title = std::string("kernel ") + to_string(kind);
  out.table.columns = {"index", "sample", "multiplier"};
  for (std::size_t j = 0; j < profile->samples.size(); ++j) {
    out.table.rows.push_back({static_cast<double>(j), profile->samples[j], profile->multipliers[j]});
  }
  return out;
}

CommandOutput cmd_converge(const ExperimentConfig& config) {
  const auto orders = sweep_from(config);
  const Grid grid = grid_for(config.resolved_resolution(8), orders);
  const AxisSubset b = axes_from(config);
  const DyadicFunction f = builtin_function(config, grid);

  CommandOutput out;
  out.title = "converge";
  out.table.columns = {"n", "l1_error"};
  for (double eps : config.eps) out.table.columns.push_back(eps_label(eps));
  out.table.rows.resize(orders.size());
  parallel_for(orders.size(), [&](std::size_t i) {
    const DyadicFunction err = apply_mean(f, MeanSpec::uniform(b, orders[i])) - f;
    std::vector<double> row{static_cast<double>(orders[i]), lp_norm(err, 1.0)};
    for (double eps : config.eps) row.push_back(superlevel_measure(err, eps));
    out.table.rows[i] = std::move(row);
  });
  return out;
}

CommandOutput cmd_norms(const ExperimentConfig& config) {
  const auto orders = sweep_from(config);
  const Grid grid = grid_for(config.resolved_resolution(6), orders);
  const AxisSubset b = axes_from(config);
  const auto suite = random_suite(grid, config.count, config.seed);
  const double strong_beta = b.size();
  const double weak_beta = std::max(0, b.size() - 1);

  CommandOutput out;
  out.title = "norms";
  out.table.columns = {"function", "n", "strong_ratio", "weak_ratio"};
  out.table.rows.resize(suite.size() * orders.size());
  parallel_for(suite.size(), [&](std::size_t i) {
    const double strong_den = 1.0 + log_entropy(suite[i], strong_beta);
    const double weak_den = 1.0 + log_entropy(suite[i], weak_beta);
    for (std::size_t j = 0; j < orders.size(); ++j) {
      const DyadicFunction mean = apply_mean(suite[i], MeanSpec::uniform(b, orders[j]));
      out.table.rows[i * orders.size() + j] = {static_cast<double>(i), static_cast<double>(orders[j]),
                                               lp_norm(mean, 1.0) / strong_den, weak_l1(mean) / weak_den};
    }
  });
  return out;
}

namespace {

CommandOutput diverge_kernel_growth(const ExperimentConfig& config) {
  const int n_max = config.n_max.value_or(6);
  if (n_max < 1 || n_max > 9) throw Error(ErrorKind::kUsage, "invalid value for nmax: expected 1..9");
  CommandOutput out;
  out.title = "diverge kernel-growth";
  out.table.columns = {"n", "p_n", "l1", "ratio"};
  for (const auto& row : kernel_norm_growth(n_max)) {
    out.table.rows.push_back({static_cast<double>(row.n), static_cast<double>(row.order), row.l1, row.ratio});
  }
  return out;
}

CommandOutput diverge_lemma_gg(const ExperimentConfig& config) {
  if (!config.n) missing("n");
  const int n = static_cast<int>(*config.n);
  if (n < 1 || n > 10) throw Error(ErrorKind::kUsage, "invalid value for n: expected 1..10");
  const int k = config.resolution.empty() ? 2 * n + 2 : config.resolution[0];
  if (k > 24 || p_seq(n) > (std::uint64_t{1} << k)) {
    throw Error(ErrorKind::kResolutionExceeded, "p_n exceeds 2^K for the scan");
  }
  CommandOutput out;
  out.title = "diverge lemma-gg";
  out.is_document = true;
  out.document = lemma_gg_scan(n, k, omega_region(n, config.tilde)).to_json();
  return out;
}

CommandOutput diverge_op_bound(const ExperimentConfig& config) {
  const AxisSubset b = axes_from(config);
  const auto q = young_from_config(config, b.size());
  const auto [lo, hi] = n_range(config, 2, 6);
  CommandOutput out;
  out.title = "diverge op-bound " + q.name();
  out.table.columns = {"n", "mean_l1", "test_norm", "ratio", "formula"};
  out.table.rows.resize(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(out.table.rows.size(), [&](std::size_t i) {
    const auto r = operator_lower_bound(lo + static_cast<int>(i), q, b);
    out.table.rows[i] = {static_cast<double>(r.n), r.mean_l1, r.test_norm, r.ratio, r.formula};
  });
  return out;
}

CommandOutput diverge_est1(const ExperimentConfig& config) {
  const AxisSubset b = axes_from(config);
  const auto [lo, hi] = n_range(config, 2, 4);
  if (config.d * counterexample_resolution(hi) > 24) {
    throw Error(ErrorKind::kResolutionExceeded, "est1 grid above 2^24 cells");
  }
  CommandOutput out;
  out.title = "diverge est1";
  out.table.columns = {"n", "measure", "ratio"};
  out.table.rows.resize(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(out.table.rows.size(), [&](std::size_t i) {
    const int n = lo + static_cast<int>(i);
    const std::vector<int> res(static_cast<std::size_t>(config.d), counterexample_resolution(n));
    const double m = est1_measure(n, b, res, config.c);
    out.table.rows[i] = {static_cast<double>(n), m, est1_ratio(n, b.size(), m)};
  });
  return out;
}

CommandOutput diverge_xi(const ExperimentConfig& config) {
  const AxisSubset b = axes_from(config);
  const int n = static_cast<int>(config.n.value_or(2));
  const auto q = young_from_config(config, std::max(0, b.size() - 1));
  const std::vector<int> res(static_cast<std::size_t>(config.d), 2 * n + 1);
  grid_for(res, {});
  const std::size_t r = config.r ? config.r : default_translate_count(n, b.size());
  CommandOutput out;
  out.title = "diverge xi " + q.name();
  out.table.columns = {"config", "r", "nu", "m_sup", "m_sup_bound", "m_l1", "xi_luxemburg", "all_bounds_hold"};
  out.table.rows.resize(config.trials);
  const Grid grid(res);
  parallel_for(config.trials, [&](std::size_t t) {
    const auto translate = random_translate_config(r, grid, config.seed + t);
    const auto x = build_xi({n, b, q}, translate, res);
    out.table.rows[t] = {static_cast<double>(t), static_cast<double>(r), x.nu, x.m_sup, x.m_sup_bound, x.m_l1,
                         x.xi_luxemburg, (x.sup_ok && x.l1_ok && x.unit_ball_ok) ? 1.0 : 0.0};
  });
  return out;
}

CommandOutput diverge_search(const ExperimentConfig& config) {
  const AxisSubset b = axes_from(config);
  const int n = static_cast<int>(config.n.value_or(2));
  const std::vector<int> res(static_cast<std::size_t>(config.d), counterexample_resolution(n));
  grid_for(res, {});
  const std::size_t r = config.r ? config.r : default_translate_count(n, b.size());
  const auto result = search_signed_translates(n, b, r, config.trials, config.seed, res, config.c);
  CommandOutput out;
  out.title = "diverge search";
  out.is_document = true;
  out.document = {{"n", n},        {"r", r},
                  {"trials", result.trials}, {"threshold", result.threshold},
                  {"measure", result.measure}};
  if (result.best) {
    out.document["translations"] = result.best->translations;
    out.document["signs"] = result.best->signs;
  } else {
    out.document["translations"] = nlohmann::json::array();
    out.document["signs"] = nlohmann::json::array();
  }
  return out;
}

}  // namespace

CommandOutput cmd_diverge(const ExperimentConfig& config) {
  if (config.what.empty()) missing("what");
  if (config.what == "kernel-growth") return diverge_kernel_growth(config);
  if (config.what == "lemma-gg") return diverge_lemma_gg(config);
  if (config.what == "op-bound") return diverge_op_bound(config);
  if (config.what == "est1") return diverge_est1(config);
  if (config.what == "xi") return diverge_xi(config);
  if (config.what == "search") return diverge_search(config);
  throw Error(ErrorKind::kUsage, "invalid value for what: " + config.what);
}

TypeAudit type_audit(int resolution, std::uint64_t n_lo, std::uint64_t n_hi, std::size_t count,
                     std::uint64_t seed) {
  const auto suite = adversarial_suite(resolution, count, seed);
  std::vector<TypeAudit> per_function(suite.size());
  parallel_for(suite.size(), [&](std::size_t i) {
    const double l1 = lp_norm(suite[i], 1.0);
    TypeAudit a{0.0, 0.0};
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
      const auto g = apply_mean(suite[i], MeanSpec::uniform(AxisSubset::none(1), n));
      const auto f = apply_mean(suite[i], MeanSpec::uniform(AxisSubset::all(1), n));
      a.riesz_strong = std::max(a.riesz_strong, lp_norm(g, 1.0) / l1);
      a.noerlund_weak = std::max(a.noerlund_weak, weak_l1(f) / l1);
    }
    per_function[i] = a;
  });
  TypeAudit out{0.0, 0.0};
  for (const auto& a : per_function) {
    out.riesz_strong = std::max(out.riesz_strong, a.riesz_strong);
    out.noerlund_weak = std::max(out.noerlund_weak, a.noerlund_weak);
  }
  return out;
}

CommandOutput run_command(const ExperimentConfig& config) {
  if (config.command == "kernel") return cmd_kernel(config);
  if (config.command == "converge") return cmd_converge(config);
  if (config.command == "diverge") return cmd_diverge(config);
  if (config.command == "norms") return cmd_norms(config);
  if (config.command.empty()) missing("command");
  throw Error(ErrorKind::kUsage, "unknown command '" + config.command + "'");
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json table_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  return {{"columns", table.columns}, {"rows", rows}};
}

}  // namespace

void write_output(std::ostream& out, const CommandOutput& output, const ExperimentConfig& config) {
  if (config.format == "json" || output.is_document) {
    nlohmann::json doc = output.is_document ? output.document : table_json(output.table);
    doc["command"] = output.title;
    if (!config.quiet_header) doc["generated"] = utc_timestamp();
    out << doc.dump(2) << '\n';
    return;
  }
  if (!config.quiet_header) out << "# walsh-logmeans " << output.title << " generated " << utc_timestamp() << '\n';
  const auto& t = output.table;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

}  // namespace walsh
