#include "walsh/logmeans.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "walsh/error.hpp"

namespace walsh {

namespace {

constexpr std::uint64_t kExactHarmonicLimit = 1u << 20;
constexpr double kEulerGamma = 0.57721566490153286061;

// H_m = sum_{k=1}^m 1/k.
double harmonic_number(std::uint64_t m) {
  if (m <= kExactHarmonicLimit) {
    double sum = 0.0;
    // Smallest terms first.
    for (std::uint64_t k = m; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
    return sum;
  }
  const double x = static_cast<double>(m);
  const double inv2 = 1.0 / (x * x);
  return std::log(x) + kEulerGamma + 0.5 / x - inv2 / 12.0 + inv2 * inv2 / 120.0;
}

void check_order(std::uint64_t n, int resolution, std::uint64_t minimum) {
  if (n < minimum) {
    throw Error(ErrorKind::kDomain, "kernel order " + std::to_string(n) + " below minimum " +
                                        std::to_string(minimum));
  }
  if (resolution < 0 || resolution > kMaxResolution) {
    throw Error(ErrorKind::kDomain, "resolution exponent out of range");
  }
  if (n > (std::uint64_t{1} << resolution)) {
    throw Error(ErrorKind::kResolutionExceeded,
                "order " + std::to_string(n) + " exceeds 2^" + std::to_string(resolution));
  }
}

// samples[c] = sum_{m=1}^{n-1} weight[m] * D_m(c / 2^K), accumulating D_m
// one Walsh function at a time.
std::vector<double> weighted_dirichlet_sum(const std::vector<double>& weight, int resolution) {
  const std::size_t len = std::size_t{1} << resolution;
  const std::uint64_t terms = weight.size();
  std::vector<double> samples(len, 0.0);
  for (std::size_t c = 0; c < len; ++c) {
    const std::uint64_t digits = reverse_bits(c, resolution);
    std::int64_t d = 0;
    double acc = 0.0;
    for (std::uint64_t m = 1; m < terms; ++m) {
      d += (std::popcount((m - 1) & digits) & 1) ? -1 : 1;
      acc += weight[m] * static_cast<double>(d);
    }
    samples[c] = acc;
  }
  return samples;
}

}  // namespace

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::kDirichlet: return "D";
    case KernelKind::kNoerlund: return "F";
    case KernelKind::kRiesz: return "G";
  }
  return "?";
}

double harmonic_l(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::kDomain, "l_n needs n >= 1");
  return harmonic_number(n - 1);
}

std::vector<double> harmonic_table(std::uint64_t n) {
  std::vector<double> table(n + 1, 0.0);
  for (std::uint64_t m = 2; m <= n; ++m) table[m] = table[m - 1] + 1.0 / static_cast<double>(m - 1);
  return table;
}

std::vector<double> noerlund_multipliers(std::uint64_t n, std::size_t length) {
  if (n < 2) throw Error(ErrorKind::kDomain, "Noerlund order must be at least 2");
  const auto l = harmonic_table(n);
  std::vector<double> out(length, 0.0);
  for (std::uint64_t k = 0; k + 2 <= n && k < length; ++k) out[k] = l[n - k] / l[n];
  return out;
}

std::vector<double> riesz_multipliers(std::uint64_t n, std::size_t length) {
  if (n < 2) throw Error(ErrorKind::kDomain, "Riesz order must be at least 2");
  const auto l = harmonic_table(n);
  std::vector<double> out(length, 0.0);
  for (std::uint64_t k = 0; k + 2 <= n && k < length; ++k) out[k] = (l[n] - l[k + 1]) / l[n];
  return out;
}

std::vector<double> dirichlet_multipliers(std::uint64_t n, std::size_t length) {
  std::vector<double> out(length, 0.0);
  for (std::uint64_t k = 0; k < n && k < length; ++k) out[k] = 1.0;
  return out;
}

KernelProfile kernel_f(std::uint64_t n, int resolution) {
  check_order(n, resolution, 2);
  const auto l = harmonic_table(n);
  // F_n = (1/l_n) sum_{m=1}^{n-1} D_m / (n - m)
  std::vector<double> weight(n, 0.0);
  for (std::uint64_t m = 1; m < n; ++m) weight[m] = 1.0 / (static_cast<double>(n - m) * l[n]);
  const std::size_t len = std::size_t{1} << resolution;
  return {KernelKind::kNoerlund, n, resolution, weighted_dirichlet_sum(weight, resolution),
          noerlund_multipliers(n, len)};
}

KernelProfile kernel_g(std::uint64_t n, int resolution) {
  check_order(n, resolution, 2);
  const auto l = harmonic_table(n);
  std::vector<double> weight(n, 0.0);
  for (std::uint64_t i = 1; i < n; ++i) weight[i] = 1.0 / (static_cast<double>(i) * l[n]);
  const std::size_t len = std::size_t{1} << resolution;
  return {KernelKind::kRiesz, n, resolution, weighted_dirichlet_sum(weight, resolution),
          riesz_multipliers(n, len)};
}

KernelProfile kernel_d(std::uint64_t n, int resolution) {
  check_order(n, resolution, 0);
  const std::size_t len = std::size_t{1} << resolution;
  std::vector<double> samples(len);
  for (std::size_t c = 0; c < len; ++c) samples[c] = dirichlet(n, c, resolution);
  return {KernelKind::kDirichlet, n, resolution, std::move(samples), dirichlet_multipliers(n, len)};
}

KernelProfile make_kernel(KernelKind kind, std::uint64_t n, int resolution) {
  switch (kind) {
    case KernelKind::kDirichlet: return kernel_d(n, resolution);
    case KernelKind::kNoerlund: return kernel_f(n, resolution);
    case KernelKind::kRiesz: return kernel_g(n, resolution);
  }
  throw Error(ErrorKind::kDomain, "unknown kernel kind");
}

namespace {

using CacheKey = std::tuple<int, std::uint64_t, int>;

struct KernelCache {
  std::shared_mutex mutex;
  std::map<CacheKey, std::shared_ptr<const KernelProfile>> entries;
};

KernelCache& kernel_cache() {
  static KernelCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const KernelProfile> cached_kernel(KernelKind kind, std::uint64_t n, int resolution) {
  auto& cache = kernel_cache();
  const CacheKey key{static_cast<int>(kind), n, resolution};
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }
  auto profile = std::make_shared<const KernelProfile>(make_kernel(kind, n, resolution));
  std::unique_lock lock(cache.mutex);
  return cache.entries.try_emplace(key, std::move(profile)).first->second;
}

void clear_kernel_cache() {
  auto& cache = kernel_cache();
  std::unique_lock lock(cache.mutex);
  cache.entries.clear();
}

std::size_t kernel_cache_size() {
  auto& cache = kernel_cache();
  std::shared_lock lock(cache.mutex);
  return cache.entries.size();
}

MeanSpec::MeanSpec(AxisSubset noerlund_axes, std::vector<std::uint64_t> orders)
    : noerlund_axes_(std::move(noerlund_axes)), orders_(std::move(orders)) {
  if (orders_.size() != static_cast<std::size_t>(noerlund_axes_.dims())) {
    throw Error(ErrorKind::kShape, "need one order per axis");
  }
  for (std::uint64_t n : orders_) {
    if (n < 2) throw Error(ErrorKind::kDomain, "mean order " + std::to_string(n) + " below 2 (l_n vanishes)");
  }
}

MeanSpec MeanSpec::uniform(AxisSubset noerlund_axes, std::uint64_t n) {
  auto d = static_cast<std::size_t>(noerlund_axes.dims());
  return MeanSpec(std::move(noerlund_axes), std::vector<std::uint64_t>(d, n));
}

void MeanSpec::check_against(const Grid& grid) const {
  if (grid.dims() != orders_.size()) throw Error(ErrorKind::kShape, "mean spec and grid differ in dimension");
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
    if (orders_[axis] > grid.extent(axis)) {
      throw Error(ErrorKind::kResolutionExceeded,
                  "order " + std::to_string(orders_[axis]) + " exceeds 2^" +
                      std::to_string(grid.resolution(axis)) + " on axis " + std::to_string(axis + 1));
    }
  }
}

DyadicFunction tensor_kernel(const MeanSpec& spec, const Grid& grid) {
  spec.check_against(grid);
  std::vector<std::shared_ptr<const KernelProfile>> factors;
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
    auto kind = spec.is_noerlund(axis) ? KernelKind::kNoerlund : KernelKind::kRiesz;
    factors.push_back(cached_kernel(kind, spec.order(axis), grid.resolution(axis)));
  }
  DyadicFunction out(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    double v = 1.0;
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) v *= factors[axis]->samples[grid.coord(flat, axis)];
    out[flat] = v;
  }
  return out;
}

namespace {

DyadicFunction mean_spectral(const DyadicFunction& f, const MeanSpec& spec) {
  const Grid& grid = f.grid();
  std::vector<std::vector<double>> multipliers;
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
    multipliers.push_back(spec.is_noerlund(axis) ? noerlund_multipliers(spec.order(axis), grid.extent(axis))
                                                 : riesz_multipliers(spec.order(axis), grid.extent(axis)));
  }
  return synthesize(apply_separable_multiplier(analyze(f), multipliers));
}

// Sum over i_D in [1, n-1]^d of S_{N(i)}(f) / prod i_j, where N_j = n_j - i_j
// on Noerlund axes and N_j = i_j on Riesz axes. Partial sums are linear in the
// spectrum, so each one is accumulated as its truncated spectrum and the
// total is synthesized once.
DyadicFunction mean_direct(const DyadicFunction& f, const MeanSpec& spec) {
  const Grid& grid = f.grid();
  const std::size_t d = grid.dims();
  const WalshSpectrum s = analyze(f);
  WalshSpectrum acc(grid);

  std::vector<std::uint64_t> index(d, 1);
  std::vector<std::uint64_t> box(d);
  double normalizer = 1.0;
  for (std::size_t axis = 0; axis < d; ++axis) normalizer *= harmonic_l(spec.order(axis));

  while (true) {
    double weight = 1.0;
    for (std::size_t axis = 0; axis < d; ++axis) {
      weight /= static_cast<double>(index[axis]);
      box[axis] = spec.is_noerlund(axis) ? spec.order(axis) - index[axis] : index[axis];
    }
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
      bool inside = true;
      for (std::size_t axis = 0; axis < d && inside; ++axis) inside = grid.coord(flat, axis) < box[axis];
      if (inside) acc[flat] += weight * s[flat];
    }
    std::size_t axis = 0;
    while (axis < d && ++index[axis] >= spec.order(axis)) {
      index[axis] = 1;
      ++axis;
    }
    if (axis == d) break;
  }
  for (double& v : acc.values()) v /= normalizer;
  return synthesize(acc);
}

}  // namespace

DyadicFunction apply_mean(const DyadicFunction& f, const MeanSpec& spec, MeanMethod method) {
  spec.check_against(f.grid());
  return method == MeanMethod::kDirect ? mean_direct(f, spec) : mean_spectral(f, spec);
}

DyadicFunction dyadic_convolve(const DyadicFunction& f, const DyadicFunction& kernel) {
  if (!(f.grid() == kernel.grid())) {
    throw Error(ErrorKind::kResolutionMismatch, "convolution operands live on different grids");
  }
  const std::size_t n = f.size();
  DyadicFunction out(f.grid());
  for (std::size_t x = 0; x < n; ++x) {
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) sum += f[t] * kernel[x ^ t];
    out[x] = sum / static_cast<double>(n);
  }
  return out;
}

}  // namespace walsh
