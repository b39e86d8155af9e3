#include "walsh/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "walsh/error.hpp"
#include "walsh/function_io.hpp"

namespace walsh {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_field(const std::string& key, const std::string& value, const char* expected) {
  throw Error(ErrorKind::kUsage, "invalid value '" + value + "' for " + key + " (expected " + expected + ")");
}

template <class T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_field(key, value, "an integer");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    bad_field(key, value, "a number");
  }
  if (used != value.size()) bad_field(key, value, "a number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_field(key, value, "true or false");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <class T>
std::vector<T> parse_integer_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_integer<T>(key, item));
  return out;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_real(key, item));
  return out;
}

// Shortest text that parses back to the same double.
std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += shortest(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "command", "d",      "K",     "B",      "orders", "n",      "nmin",  "nmax",
      "kind",    "function", "params", "file", "q",     "beta",   "qparam", "what",
      "tilde",   "c",      "trials", "r",     "count",  "seed",   "eps",   "format",
      "out",     "quiet-header"};
  return keys;
}

std::map<std::string, std::string> parse_key_value(std::string_view text) {
  std::map<std::string, std::string> pairs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kUsage, "config line " + std::to_string(line_no) + " is not key=value");
    }
    pairs[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return pairs;
}

std::map<std::string, std::string> ExperimentConfig::to_pairs() const {
  std::map<std::string, std::string> p;
  p["command"] = command;
  p["d"] = std::to_string(d);
  if (!resolution.empty()) p["K"] = join(resolution);
  if (noerlund) p["B"] = noerlund->empty() ? "none" : join(*noerlund);
  if (!orders.empty()) p["orders"] = join(orders);
  if (n) p["n"] = std::to_string(*n);
  if (n_min) p["nmin"] = std::to_string(*n_min);
  if (n_max) p["nmax"] = std::to_string(*n_max);
  if (!kind.empty()) p["kind"] = kind;
  p["function"] = function;
  if (!params.empty()) p["params"] = join(params);
  if (!file.empty()) p["file"] = file;
  p["q"] = q;
  if (beta) p["beta"] = shortest(*beta);
  p["qparam"] = shortest(q_param);
  if (!what.empty()) p["what"] = what;
  if (tilde) p["tilde"] = std::to_string(*tilde);
  p["c"] = shortest(c);
  p["trials"] = std::to_string(trials);
  p["r"] = std::to_string(r);
  p["count"] = std::to_string(count);
  p["seed"] = std::to_string(seed);
  p["eps"] = join(eps);
  p["format"] = format;
  if (!out.empty()) p["out"] = out;
  p["quiet-header"] = quiet_header ? "true" : "false";
  return p;
}

ExperimentConfig ExperimentConfig::from_pairs(const std::map<std::string, std::string>& pairs) {
  ExperimentConfig c;
  const auto& keys = config_keys();
  for (const auto& [key, value] : pairs) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorKind::kUsage, "unknown configuration key '" + key + "'");
    }
    if (key == "command") c.command = value;
    else if (key == "d") c.d = parse_integer<int>(key, value);
    else if (key == "K") c.resolution = parse_integer_list<int>(key, value);
    else if (key == "B") c.noerlund = value == "none" ? std::vector<int>{} : parse_integer_list<int>(key, value);
    else if (key == "orders") c.orders = parse_integer_list<std::uint64_t>(key, value);
    else if (key == "n") c.n = parse_integer<std::uint64_t>(key, value);
    else if (key == "nmin") c.n_min = parse_integer<int>(key, value);
    else if (key == "nmax") c.n_max = parse_integer<int>(key, value);
    else if (key == "kind") c.kind = value;
    else if (key == "function") c.function = value;
    else if (key == "params") c.params = parse_real_list(key, value);
    else if (key == "file") c.file = value;
    else if (key == "q") c.q = value;
    else if (key == "beta") c.beta = parse_real(key, value);
    else if (key == "qparam") c.q_param = parse_real(key, value);
    else if (key == "what") c.what = value;
    else if (key == "tilde") c.tilde = parse_integer<int>(key, value);
    else if (key == "c") c.c = parse_real(key, value);
    else if (key == "trials") c.trials = parse_integer<std::uint64_t>(key, value);
    else if (key == "r") c.r = parse_integer<std::uint64_t>(key, value);
    else if (key == "count") c.count = parse_integer<std::uint64_t>(key, value);
    else if (key == "seed") c.seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "eps") c.eps = parse_real_list(key, value);
    else if (key == "format") c.format = value;
    else if (key == "out") c.out = value;
    else if (key == "quiet-header") c.quiet_header = parse_bool(key, value);
  }
  if (c.d < 1 || c.d > 8) throw Error(ErrorKind::kUsage, "invalid value for d (expected 1..8)");
  if (c.resolution.size() > 1 && c.resolution.size() != static_cast<std::size_t>(c.d)) {
    throw Error(ErrorKind::kUsage, "K must list one value or d values");
  }
  if (c.format != "csv" && c.format != "json") throw Error(ErrorKind::kUsage, "format must be csv or json");
  return c;
}

std::string ExperimentConfig::serialize() const {
  const auto pairs = to_pairs();
  std::string text;
  for (const auto& key : config_keys()) {
    if (auto it = pairs.find(key); it != pairs.end()) text += key + "=" + it->second + "\n";
  }
  return text;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) { return from_pairs(parse_key_value(text)); }

std::vector<int> ExperimentConfig::resolved_resolution(int fallback) const {
  if (resolution.empty()) return std::vector<int>(static_cast<std::size_t>(d), fallback);
  if (resolution.size() == 1) return std::vector<int>(static_cast<std::size_t>(d), resolution[0]);
  return resolution;
}

std::vector<int> ExperimentConfig::resolved_noerlund() const {
  if (noerlund) return *noerlund;
  std::vector<int> all;
  for (int i = 1; i <= d; ++i) all.push_back(i);
  return all;
}

std::vector<std::uint64_t> default_order_sweep() { return {4, 8, 16, 32, 64}; }

}  // namespace walsh
