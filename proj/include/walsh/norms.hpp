#pragma once

// Lebesgue, weak-L1 and Orlicz (Luxemburg) norms of cell-constant
// functions. All integrals are exact finite averages over the grid.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "walsh/transform.hpp"

namespace walsh {

/// A value taken on a set of the given measure. Lists of these describe the
/// distribution of |f| without needing a grid, e.g. for tensor products
/// too large to sample.
struct WeightedValue {
  double value;
  double measure;
};

std::vector<WeightedValue> distribution(const DyadicFunction& f);
/// Distribution of the product function (x, y) -> a(x) b(y).
std::vector<WeightedValue> product_distribution(std::span<const WeightedValue> a,
                                                std::span<const WeightedValue> b);

double lp_norm(const DyadicFunction& f, double p);

/// sup_{lambda > 0} lambda * mes{|f| > lambda}, attained just below one of
/// the sample magnitudes.
double weak_l1(const DyadicFunction& f);
double weak_l1(std::span<const WeightedValue> dist);

/// mes{|f| > threshold} (strict) or mes{|f| >= threshold}.
double superlevel_measure(const DyadicFunction& f, double threshold, bool strict = true);

/// Young function: either u log^beta(1 + u) (natural log) or a caller
/// supplied evaluator on u >= 0.
class YoungFunction {
 public:
  static YoungFunction log_power(double beta);
  static YoungFunction custom(std::string name, std::function<double(double)> q);

  double operator()(double u) const;
  bool is_log_power() const { return !custom_; }
  double beta() const { return beta_; }
  const std::string& name() const { return name_; }

 private:
  YoungFunction() = default;
  double beta_ = 0.0;
  std::function<double(double)> custom_;
  std::string name_;
};

double young_eval(const YoungFunction& q, double u);

/// inf{k > 0 : int Q(|f| / k) <= 1}, by bisection on the monotone map
/// k -> int Q(|f| / k). Zero for the zero function.
double luxemburg_norm(const DyadicFunction& f, const YoungFunction& q);
double luxemburg_norm(std::span<const WeightedValue> dist, const YoungFunction& q);

/// int Q(|f| / k) for the given scale.
double orlicz_modular(std::span<const WeightedValue> dist, const YoungFunction& q, double k);

/// int |f| (log+ |f|)^beta with log+ t = max(log t, 0). beta = 0 gives ||f||_1
/// (the convention (log+)^0 = 1 everywhere).
double log_entropy(const DyadicFunction& f, double beta);

}  // namespace walsh
