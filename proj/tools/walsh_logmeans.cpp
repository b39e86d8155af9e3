// walsh-logmeans <kernel|converge|diverge|norms> [flags]
//
// Every configuration key doubles as a long flag (--K 6, --B 1,2, ...).
// A --config file supplies key=value defaults that flags override.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "walsh/commands.hpp"
#include "walsh/error.hpp"
#include "walsh/experiment.hpp"

namespace {

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw walsh::Error(walsh::ErrorKind::kUsage, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return walsh::parse_key_value(ss.str());
}

int run(int argc, char** argv) {
  CLI::App app{"Logarithmic means of multiple Walsh-Fourier series"};
  app.set_help_all_flag("--help-all");

  std::string command;
  std::string config_path;
  bool quiet_header = false;
  std::map<std::string, std::string> flag_values;

  app.add_option("command", command, "kernel, converge, diverge or norms")->required();
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_flag("--quiet-header", quiet_header, "omit the timestamped header");
  for (const auto& key : walsh::config_keys()) {
    if (key == "command" || key == "quiet-header") continue;
    app.add_option("--" + key, flag_values[key]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::map<std::string, std::string> pairs;
  if (!config_path.empty()) pairs = read_config_file(config_path);
  for (const auto& [key, value] : flag_values) {
    if (app.get_option("--" + key)->count() > 0) pairs[key] = value;
  }
  pairs["command"] = command;
  if (quiet_header) pairs["quiet-header"] = "true";

  const auto config = walsh::ExperimentConfig::from_pairs(pairs);
  const auto output = walsh::run_command(config);
  if (config.out.empty()) {
    walsh::write_output(std::cout, output, config);
  } else {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw walsh::Error(walsh::ErrorKind::kIo, "cannot write " + config.out);
    walsh::write_output(out, output, config);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const walsh::Error& e) {
    std::cerr << "walsh-logmeans: " << e.what() << '\n';
    return e.kind() == walsh::ErrorKind::kUsage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "walsh-logmeans: " << e.what() << '\n';
    return 1;
  }
}
