#include "walsh/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "walsh/error.hpp"
#include "walsh/logmeans.hpp"
#include "walsh/parallel.hpp"

namespace walsh {

std::uint64_t p_seq(int n) {
  if (n < 0 || n > 31) throw Error(ErrorKind::kDomain, "p_n needs 0 <= n <= 31 to fit in 64 bits");
  // (4^{n+1} - 1) / 3 without overflowing at n = 31.
  std::uint64_t p = 0;
  for (int k = 0; k <= n; ++k) p = (p << 2) | 1u;
  return p;
}

std::int64_t tilde_m(int m, TildeConstants constants) {
  if (m < 2) throw Error(ErrorKind::kDomain, "m~ needs m >= 2");
  const int m_star = m / 2;
  const double l = harmonic_l(p_seq(m_star) - 1);
  return static_cast<std::int64_t>(std::floor(l / constants.divisor - constants.offset));
}

double tilde_m_threshold(TildeConstants constants) { return constants.divisor * (constants.offset + 2.0); }

bool OmegaRegion::empty() const {
  return std::all_of(bands.begin(), bands.end(), [](const OmegaBand& b) { return b.empty; });
}

bool OmegaRegion::contains(double x) const {
  return std::any_of(bands.begin(), bands.end(),
                     [x](const OmegaBand& b) { return !b.empty && b.lo <= x && x < b.hi; });
}

OmegaRegion omega_region(int n, std::optional<int> tilde_override, TildeConstants constants) {
  if (n < 1) throw Error(ErrorKind::kDomain, "Omega_n needs n >= 1");
  if (tilde_override && *tilde_override < 1) throw Error(ErrorKind::kDomain, "m~ override must be positive");
  OmegaRegion region{n, tilde_override, {}};
  for (int m = n; m <= 2 * n; ++m) {
    OmegaBand band{m, 0.0, std::ldexp(1.0, -m), 0, true};
    if (tilde_override) {
      band.tilde = *tilde_override;
    } else if (m >= 2) {
      band.tilde = tilde_m(m, constants);
    }
    // 2^-(m+1) + 2^-(m+t) < 2^-m exactly when t >= 2.
    if (band.tilde >= 2) {
      band.empty = false;
      band.lo = std::ldexp(1.0, -(m + 1)) + std::ldexp(1.0, -(m + static_cast<int>(band.tilde)));
    } else {
      band.lo = band.hi;
    }
    region.bands.push_back(band);
  }
  return region;
}

nlohmann::json ScanReport::to_json() const {
  auto number_or_null = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& b : per_band) {
    bands.push_back({{"m", b.m},
                     {"lo", b.lo},
                     {"hi", b.hi},
                     {"empty", b.empty},
                     {"points", b.points},
                     {"min", number_or_null(b.min)},
                     {"argmin", number_or_null(b.argmin)}});
  }
  return {{"n", n},
          {"K", resolution},
          {"mode", mode},
          {"tilde", tilde ? nlohmann::json(*tilde) : nlohmann::json(nullptr)},
          {"empty", empty},
          {"min", number_or_null(min)},
          {"argmin", number_or_null(argmin)},
          {"per_band", bands}};
}

ScanReport lemma_gg_scan(int n, int resolution, const OmegaRegion& region) {
  const std::uint64_t order = p_seq(n);
  if (resolution > kMaxResolution || order > (std::uint64_t{1} << resolution)) {
    throw Error(ErrorKind::kResolutionExceeded, "p_n does not fit at resolution " + std::to_string(resolution));
  }
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  ScanReport report{n, resolution, region.tilde_override ? "override" : "faithful", region.tilde_override,
                    true, kNaN, kNaN, {}};
  const auto kernel = cached_kernel(KernelKind::kNoerlund, order, resolution);
  const double scale = std::ldexp(1.0, resolution);
  for (const auto& band : region.bands) {
    BandScan scan{band.m, band.lo, band.hi, band.empty, 0, kNaN, kNaN};
    if (!band.empty) {
      // Band endpoints are dyadic, so these products are exact.
      const auto first = static_cast<std::uint64_t>(std::ceil(band.lo * scale));
      const auto last = static_cast<std::uint64_t>(std::ceil(band.hi * scale));
      for (std::uint64_t c = first; c < last; ++c) {
        const double x = static_cast<double>(c) / scale;
        const double v = x * std::abs(kernel->samples[c]);
        if (scan.points == 0 || v < scan.min) {
          scan.min = v;
          scan.argmin = x;
        }
        ++scan.points;
      }
    }
    if (scan.points > 0 && (report.empty || scan.min < report.min)) {
      report.min = scan.min;
      report.argmin = scan.argmin;
      report.empty = false;
    }
    report.per_band.push_back(scan);
  }
  return report;
}

namespace {

void check_test_resolution(int n, const AxisSubset& b, const std::vector<int>& resolution) {
  if (resolution.size() != static_cast<std::size_t>(b.dims())) {
    throw Error(ErrorKind::kShape, "resolution list must have one entry per axis");
  }
  if (n < 0) throw Error(ErrorKind::kDomain, "negative order parameter");
  for (int label : b.members()) {
    if (2 * n + 1 > resolution[static_cast<std::size_t>(label - 1)]) {
      throw Error(ErrorKind::kResolutionExceeded,
                  "D_{2^" + std::to_string(2 * n + 1) + "} needs resolution " + std::to_string(2 * n + 1) +
                      " on axis " + std::to_string(label));
    }
  }
}

DyadicFunction dirichlet_product(int n, const AxisSubset& b, const std::vector<int>& resolution, double factor) {
  check_test_resolution(n, b, resolution);
  Grid grid(resolution);
  DyadicFunction f(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    double v = 1.0;
    for (int label : b.members()) {
      const auto axis = static_cast<std::size_t>(label - 1);
      v *= factor * dirichlet_power_of_two(2 * n + 1, grid.coord(flat, axis), grid.resolution(axis));
    }
    f[flat] = v;
  }
  return f;
}

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

DyadicFunction tensor_dirichlet_test(int n, const AxisSubset& b, const std::vector<int>& resolution) {
  return dirichlet_product(n, b, resolution, 0.5);
}

DyadicFunction tensor_dirichlet(int n, const AxisSubset& b, const std::vector<int>& resolution) {
  return dirichlet_product(n, b, resolution, 1.0);
}

double pointwise_identity_check(int n, const AxisSubset& b, const std::vector<int>& resolution) {
  const std::uint64_t order = p_seq(n);
  const DyadicFunction test = tensor_dirichlet_test(n, b, resolution);
  const DyadicFunction mean = apply_mean(test, MeanSpec::uniform(b, order));
  const Grid& grid = test.grid();
  std::vector<std::shared_ptr<const KernelProfile>> kernels(grid.dims());
  for (int label : b.members()) {
    const auto axis = static_cast<std::size_t>(label - 1);
    kernels[axis] = cached_kernel(KernelKind::kNoerlund, order, grid.resolution(axis));
  }
  const double scale = pow2(-b.size());
  double worst = 0.0;
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    double expected = scale;
    for (int label : b.members()) {
      const auto axis = static_cast<std::size_t>(label - 1);
      expected *= kernels[axis]->samples[grid.coord(flat, axis)];
    }
    worst = std::max(worst, std::abs(mean[flat] - expected));
  }
  return worst;
}

std::vector<KernelNormRow> kernel_norm_growth(int n_max) {
  if (n_max < 1) throw Error(ErrorKind::kDomain, "kernel growth table needs n_max >= 1");
  const int resolution = 2 * n_max + 2;
  if (resolution > 24) throw Error(ErrorKind::kResolutionExceeded, "n_max too large for a desk-scale grid");
  std::vector<KernelNormRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const auto kernel = cached_kernel(KernelKind::kNoerlund, p_seq(n), resolution);
    double l1 = 0.0;
    for (double v : kernel->samples) l1 += std::abs(v);
    l1 /= static_cast<double>(kernel->samples.size());
    rows.push_back({n, p_seq(n), l1, l1 / n});
  }
  return rows;
}

int counterexample_resolution(int n) {
  const std::uint64_t order = p_seq(n);
  int k = 2 * n + 1;
  while ((std::uint64_t{1} << k) < order) ++k;
  return k;
}

namespace {

double bound_formula(int n, const YoungFunction& q, int b_size) {
  const double h = pow2(2 * n * b_size);
  return h * std::pow(static_cast<double>(n), b_size) / q(h);
}

}  // namespace

OperatorBound operator_lower_bound(int n, const YoungFunction& q, const AxisSubset& b) {
  const std::uint64_t order = p_seq(n);
  const int k = counterexample_resolution(n);
  const AxisSubset line_b = AxisSubset::all(1);
  const AxisSubset line_none = AxisSubset::none(1);

  const DyadicFunction factor_b = tensor_dirichlet_test(n, line_b, {k});
  const double l1_b = lp_norm(apply_mean(factor_b, MeanSpec::uniform(line_b, order)), 1.0);

  DyadicFunction one{Grid({k})};
  std::fill(one.storage().begin(), one.storage().end(), 1.0);
  const double l1_riesz = lp_norm(apply_mean(one, MeanSpec::uniform(line_none, order)), 1.0);

  double mean_l1 = 1.0;
  std::vector<WeightedValue> dist{{1.0, 1.0}};
  const auto dist_b = distribution(factor_b);
  const auto dist_one = distribution(one);
  for (int axis = 1; axis <= b.dims(); ++axis) {
    const bool noerlund = b.contains(axis);
    mean_l1 *= noerlund ? l1_b : l1_riesz;
    dist = product_distribution(dist, noerlund ? dist_b : dist_one);
  }
  const double test_norm = luxemburg_norm(dist, q);
  return {n, mean_l1, test_norm, mean_l1 / test_norm, bound_formula(n, q, b.size())};
}

OperatorBound operator_lower_bound_on_grid(int n, const YoungFunction& q, const AxisSubset& b,
                                           const std::vector<int>& resolution) {
  const DyadicFunction test = tensor_dirichlet_test(n, b, resolution);
  const double mean_l1 = lp_norm(apply_mean(test, MeanSpec::uniform(b, p_seq(n))), 1.0);
  const double test_norm = luxemburg_norm(test, q);
  return {n, mean_l1, test_norm, mean_l1 / test_norm, bound_formula(n, q, b.size())};
}

double cond1_ratio(const YoungFunction& q, int n, int b_size) {
  const double h = pow2(2 * n * b_size);
  return q(h) / (h * std::pow(static_cast<double>(n), b_size - 1));
}

double cond1_floor(const YoungFunction& q, int n, int b_size) {
  return q(pow2(2 * n * b_size)) / pow2(b_size * (2 * n + 1));
}

void TranslateConfig::validate(const Grid& grid) const {
  if (signs.empty()) throw Error(ErrorKind::kDomain, "translate configuration is empty");
  if (translations.size() != signs.size()) {
    throw Error(ErrorKind::kShape, "translations and signs differ in count");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw Error(ErrorKind::kDomain, "signs must be +1 or -1");
  }
  for (const auto& e : translations) {
    if (e.size() != grid.dims()) throw Error(ErrorKind::kShape, "translation has wrong dimension");
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
      if (e[axis] >= grid.extent(axis)) throw Error(ErrorKind::kDomain, "translation is not a grid point");
    }
  }
}

std::size_t default_translate_count(int n, int b_size) {
  const double r = pow2(n * (2 * b_size - 1)) / std::pow(static_cast<double>(n), b_size - 1);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(r)));
}

namespace {

std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Grid extents are powers of two, so masking the raw output is unbiased and
// independent of the standard library's distribution implementations.
TranslateConfig draw_config(std::size_t r, const Grid& grid, std::mt19937_64& rng) {
  TranslateConfig config;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::uint64_t> e(grid.dims());
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) e[axis] = rng() & (grid.extent(axis) - 1);
    config.translations.push_back(std::move(e));
    config.signs.push_back((rng() >> 63) ? -1 : 1);
  }
  return config;
}

}  // namespace

TranslateConfig random_translate_config(std::size_t r, const Grid& grid, std::uint64_t seed) {
  auto rng = trial_generator(seed, 0);
  return draw_config(r, grid, rng);
}

XiResult build_xi(const XiParams& params, const TranslateConfig& config, const std::vector<int>& resolution,
                  double tolerance) {
  const int n = params.n;
  const int b_size = params.b.size();
  const DyadicFunction base = tensor_dirichlet(n, params.b, resolution);
  config.validate(base.grid());

  DyadicFunction m(base.grid());
  for (std::size_t i = 0; i < config.r(); ++i) {
    const DyadicFunction shifted = dyadic_translate(base, config.translations[i]);
    for (std::size_t flat = 0; flat < m.size(); ++flat) m[flat] += config.signs[i] * shifted[flat];
  }
  const double r = static_cast<double>(config.r());
  for (double& v : m.storage()) v /= r;

  const double q_h = params.q(pow2(2 * n * b_size));
  const DyadicFunction xi = (pow2(2 * b_size * n - 1) / q_h) * m;
  const double nu = pow2(n * (4 * b_size - 1) - 1) / (r * q_h);

  double m_sup = 0.0;
  for (double v : m.values()) m_sup = std::max(m_sup, std::abs(v));
  const double m_sup_bound = pow2(b_size * (2 * n + 1));
  const double m_l1 = lp_norm(m, 1.0);
  const double lux = luxemburg_norm(xi, params.q);
  return {xi,
          m,
          nu,
          m_sup,
          m_sup_bound,
          m_l1,
          lux,
          m_sup <= m_sup_bound * (1.0 + tolerance),
          m_l1 <= 1.0 + tolerance,
          lux <= 1.0 + tolerance};
}

SearchResult search_signed_translates(int n, const AxisSubset& b, std::size_t r, std::size_t trials,
                                      std::uint64_t seed, const std::vector<int>& resolution,
                                      double threshold_scale) {
  SearchResult result;
  result.threshold = threshold_scale * pow2(n * (2 * b.size() - 1));
  result.trials = trials;
  if (trials == 0) return result;
  if (r == 0) throw Error(ErrorKind::kDomain, "need at least one translate");

  const DyadicFunction base = tensor_dirichlet(n, b, resolution);
  const DyadicFunction mean = apply_mean(base, MeanSpec::uniform(b, p_seq(n)));
  const Grid& grid = mean.grid();

  std::vector<double> measures(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = trial_generator(seed, t);
    const TranslateConfig config = draw_config(r, grid, rng);
    // The mean commutes with dyadic translation: translate the output.
    std::vector<double> sum(grid.size(), 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t shift = grid.flat_index(config.translations[i]);
      const double sign = config.signs[i];
      for (std::size_t flat = 0; flat < grid.size(); ++flat) sum[flat] += sign * mean[flat ^ shift];
    }
    std::size_t count = 0;
    for (double v : sum) count += std::abs(v) > result.threshold ? 1 : 0;
    measures[t] = static_cast<double>(count) / static_cast<double>(grid.size());
  });

  const auto best = static_cast<std::size_t>(std::max_element(measures.begin(), measures.end()) - measures.begin());
  auto rng = trial_generator(seed, best);
  result.best = draw_config(r, grid, rng);
  result.measure = measures[best];
  return result;
}

double est1_measure(int n, const AxisSubset& b, const std::vector<int>& resolution, double threshold_scale) {
  const DyadicFunction base = tensor_dirichlet(n, b, resolution);
  const DyadicFunction mean = apply_mean(base, MeanSpec::uniform(b, p_seq(n)));
  return superlevel_measure(mean, threshold_scale * pow2(n * (2 * b.size() - 1)), false);
}

double est1_ratio(int n, int b_size, double measure) {
  return measure * pow2(n * (2 * b_size - 1)) / std::pow(static_cast<double>(n), b_size - 1);
}

}  // namespace walsh
