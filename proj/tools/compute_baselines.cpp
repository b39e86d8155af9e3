// Recomputes tests/fixtures/baselines.json. The acceptance suite reads the
// file instead of recomputing, so a drift in the library shows up as a
// failure rather than silently moving the thresholds.
//
// usage: compute-baselines <output.json>

#include <fstream>
#include <iostream>

#include "json.hpp"
#include "walsh/commands.hpp"
#include "walsh/counterexample.hpp"
#include "walsh/experiment.hpp"

namespace {

double column_max(const walsh::Table& t, const std::string& name) {
  const auto c = t.column(name);
  double m = 0.0;
  for (const auto& row : t.rows) m = std::max(m, row[c]);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: compute-baselines <output.json>\n";
    return 2;
  }
  using nlohmann::json;
  json out;

  const auto growth = walsh::kernel_norm_growth(7);
  out["kernel_growth"] = {{"n2_ratio", growth[1].ratio}, {"resolution", 16}};
  json rows = json::array();
  for (const auto& r : growth) rows.push_back({{"n", r.n}, {"l1", r.l1}, {"ratio", r.ratio}});
  out["kernel_growth"]["rows"] = rows;

  const auto audit = walsh::type_audit(10, 2, 128, 50, 1);
  out["type_audit"] = {{"resolution", 10}, {"n_lo", 2}, {"n_hi", 128}, {"count", 50}, {"seed", 1},
                       {"riesz_strong", audit.riesz_strong}, {"noerlund_weak", audit.noerlund_weak}};

  walsh::ExperimentConfig norms;
  norms.command = "norms";
  norms.d = 2;
  norms.resolution = {6};
  norms.noerlund = std::vector<int>{1};
  norms.count = 100;
  norms.seed = 1;
  const auto table = walsh::cmd_norms(norms).table;
  out["norms"] = {{"config", norms.serialize()},
                  {"strong_max", column_max(table, "strong_ratio")},
                  {"weak_max", column_max(table, "weak_ratio")}};

  const auto gg2 = walsh::lemma_gg_scan(2, 6, walsh::omega_region(2, 2));
  const auto gg3 = walsh::lemma_gg_scan(3, 8, walsh::omega_region(3, 2));
  out["lemma_gg"] = {{"tilde", 2}, {"n2_min", gg2.min}, {"n2", gg2.to_json()}, {"n3", gg3.to_json()}};

  walsh::ExperimentConfig conv;
  conv.command = "converge";
  conv.d = 2;
  conv.resolution = {8};
  const auto ct = walsh::cmd_converge(conv).table;
  json conv_rows = json::array();
  for (const auto& r : ct.rows) conv_rows.push_back(r);
  out["converge_rectangle"] = {{"config", conv.serialize()}, {"columns", ct.columns}, {"rows", conv_rows}};

  std::ofstream file(argv[1]);
  if (!file) {
    std::cerr << "cannot write " << argv[1] << '\n';
    return 1;
  }
  file << out.dump(2) << '\n';
  return 0;
}
