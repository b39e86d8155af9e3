#include "walsh/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "walsh/error.hpp"

namespace walsh {

std::vector<WeightedValue> distribution(const DyadicFunction& f) {
  std::map<double, double> counts;
  for (double v : f.values()) counts[std::abs(v)] += 1.0;
  const double cell = 1.0 / static_cast<double>(f.size());
  std::vector<WeightedValue> out;
  out.reserve(counts.size());
  for (const auto& [value, count] : counts) out.push_back({value, count * cell});
  return out;
}

std::vector<WeightedValue> product_distribution(std::span<const WeightedValue> a,
                                                std::span<const WeightedValue> b) {
  std::map<double, double> merged;
  for (const auto& x : a) {
    for (const auto& y : b) merged[std::abs(x.value * y.value)] += x.measure * y.measure;
  }
  std::vector<WeightedValue> out;
  for (const auto& [value, measure] : merged) out.push_back({value, measure});
  return out;
}

double lp_norm(const DyadicFunction& f, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::kDomain, "L_p norm needs p >= 1");
  double sum = 0.0;
  if (p == 1.0) {
    for (double v : f.values()) sum += std::abs(v);
    return sum / static_cast<double>(f.size());
  }
  for (double v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
}

double weak_l1(std::span<const WeightedValue> dist) {
  std::vector<WeightedValue> sorted(dist.begin(), dist.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedValue& a, const WeightedValue& b) { return std::abs(a.value) > std::abs(b.value); });
  // For lambda just below |v_i| the superlevel set is every value >= |v_i|.
  double best = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double level = std::abs(sorted[i].value);
    while (i < sorted.size() && std::abs(sorted[i].value) == level) tail += sorted[i++].measure;
    best = std::max(best, level * tail);
  }
  return best;
}

double weak_l1(const DyadicFunction& f) { return weak_l1(distribution(f)); }

double superlevel_measure(const DyadicFunction& f, double threshold, bool strict) {
  std::size_t count = 0;
  for (double v : f.values()) {
    double a = std::abs(v);
    if (strict ? a > threshold : a >= threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(f.size());
}

YoungFunction YoungFunction::log_power(double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorKind::kDomain, "log-power exponent must be >= 0");
  YoungFunction q;
  q.beta_ = beta;
  char buf[64];
  std::snprintf(buf, sizeof buf, "u*log^%g(1+u)", beta);
  q.name_ = buf;
  return q;
}

YoungFunction YoungFunction::custom(std::string name, std::function<double(double)> evaluator) {
  if (!evaluator) throw Error(ErrorKind::kDomain, "custom Young function needs an evaluator");
  YoungFunction q;
  q.custom_ = std::move(evaluator);
  q.name_ = std::move(name);
  return q;
}

double YoungFunction::operator()(double u) const {
  if (!(u >= 0.0)) throw Error(ErrorKind::kDomain, "Young function evaluated at negative argument");
  if (custom_) return custom_(u);
  if (u == 0.0) return 0.0;
  if (beta_ == 0.0) return u;
  return u * std::pow(std::log1p(u), beta_);
}

double young_eval(const YoungFunction& q, double u) { return q(u); }

double orlicz_modular(std::span<const WeightedValue> dist, const YoungFunction& q, double k) {
  double sum = 0.0;
  for (const auto& w : dist) {
    if (w.value != 0.0) sum += w.measure * q(std::abs(w.value) / k);
  }
  return sum;
}

double luxemburg_norm(std::span<const WeightedValue> dist, const YoungFunction& q) {
  double sup = 0.0;
  double l1 = 0.0;
  for (const auto& w : dist) {
    sup = std::max(sup, std::abs(w.value));
    l1 += w.measure * std::abs(w.value);
  }
  if (sup == 0.0) return 0.0;

  auto inside = [&](double k) { return orlicz_modular(dist, q, k) <= 1.0; };
  constexpr int kMaxBracketSteps = 2000;
  constexpr int kMaxBisectionSteps = 200;

  double hi = 2.0 * sup;
  for (int step = 0; !inside(hi); ++step) {
    if (step == kMaxBracketSteps || !std::isfinite(hi)) {
      throw Error(ErrorKind::kNumeric, "Luxemburg norm: no upper bracket found");
    }
    hi *= 2.0;
  }
  double lo = std::min(hi, l1) * 0.5;
  for (int step = 0; inside(lo); ++step) {
    if (step == kMaxBracketSteps || lo == 0.0) {
      throw Error(ErrorKind::kNumeric, "Luxemburg norm: no lower bracket found");
    }
    hi = lo;
    lo *= 0.5;
  }
  for (int step = 0; hi - lo >= 1e-10 * (1.0 + hi); ++step) {
    if (step == kMaxBisectionSteps) throw Error(ErrorKind::kNumeric, "Luxemburg norm bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

double luxemburg_norm(const DyadicFunction& f, const YoungFunction& q) {
  return luxemburg_norm(distribution(f), q);
}

double log_entropy(const DyadicFunction& f, double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorKind::kDomain, "entropy exponent must be >= 0");
  double sum = 0.0;
  for (double v : f.values()) {
    const double a = std::abs(v);
    if (beta == 0.0) sum += a;
    else if (a > 1.0) sum += a * std::pow(std::log(a), beta);
  }
  return sum / static_cast<double>(f.size());
}

}  // namespace walsh
