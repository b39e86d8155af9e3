#include "walsh/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "walsh/error.hpp"
#include "walsh/function_io.hpp"
#include "walsh/logmeans.hpp"

namespace walsh {

double uniform01(std::mt19937_64& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53); }

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u = 1.0 - uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(bound));
}

double random_sign(std::mt19937_64& rng) { return (rng() >> 63) ? -1.0 : 1.0; }

double param_or(const std::vector<double>& params, std::size_t i, double fallback) {
  return i < params.size() ? params[i] : fallback;
}

DyadicFunction dyadic_box(const Grid& grid, const std::vector<int>& side_exponent,
                          const std::vector<std::uint64_t>& corner) {
  DyadicFunction f(grid);
  double measure = 1.0;
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) measure *= std::ldexp(1.0, -side_exponent[axis]);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    bool inside = true;
    for (std::size_t axis = 0; axis < grid.dims() && inside; ++axis) {
      const int shift = grid.resolution(axis) - side_exponent[axis];
      inside = (grid.coord(flat, axis) >> shift) == (corner[axis] >> shift);
    }
    if (inside) f[flat] = 1.0 / measure;
  }
  return f;
}

}  // namespace

DyadicFunction rectangle_indicator(const Grid& grid, const std::vector<double>& bounds) {
  DyadicFunction f(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    bool inside = true;
    for (std::size_t axis = 0; axis < grid.dims() && inside; ++axis) {
      const double lo = param_or(bounds, 2 * axis, 0.2);
      const double hi = param_or(bounds, 2 * axis + 1, 0.7);
      const double x = std::ldexp(static_cast<double>(grid.coord(flat, axis)), -grid.resolution(axis));
      inside = lo <= x && x < hi;
    }
    f[flat] = inside ? 1.0 : 0.0;
  }
  return f;
}

DyadicFunction builtin_function(const ExperimentConfig& config, const Grid& grid) {
  const auto& name = config.function;
  const auto& p = config.params;
  if (name == "constant") {
    DyadicFunction f(grid);
    std::fill(f.storage().begin(), f.storage().end(), param_or(p, 0, 1.0));
    return f;
  }
  if (name == "rectangle") return rectangle_indicator(grid, p);
  if (name == "walsh") {
    std::vector<std::uint64_t> idx(grid.dims());
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
      idx[axis] = static_cast<std::uint64_t>(param_or(p, axis, 3.0));
      if (idx[axis] >= grid.extent(axis)) {
        throw Error(ErrorKind::kResolutionExceeded, "Walsh index exceeds grid resolution");
      }
    }
    return walsh_product(grid, idx);
  }
  if (name == "random-step") {
    auto rng = seeded(config.seed, 0);
    DyadicFunction f(grid);
    for (double& v : f.storage()) v = 2.0 * uniform01(rng) - 1.0;
    return f;
  }
  if (name == "borderline") {
    // Height 2^{a d} on the cell [0, 2^-a)^d, so ||f||_1 = 1.
    const int a = static_cast<int>(param_or(p, 0, 3.0));
    std::vector<int> side(grid.dims(), a);
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
      if (a < 0 || a > grid.resolution(axis)) {
        throw Error(ErrorKind::kResolutionExceeded, "borderline cell finer than the grid");
      }
    }
    return dyadic_box(grid, side, std::vector<std::uint64_t>(grid.dims(), 0));
  }
  if (name == "file") {
    if (config.file.empty()) throw Error(ErrorKind::kUsage, "function=file needs file");
    DyadicFunction f = load_binary(config.file);
    if (!(f.grid() == grid)) throw Error(ErrorKind::kResolutionMismatch, "function file does not match d and K");
    return f;
  }
  throw Error(ErrorKind::kUsage, "unknown function '" + name + "'");
}

std::vector<DyadicFunction> random_suite(const Grid& grid, std::size_t count, std::uint64_t seed) {
  std::vector<DyadicFunction> suite;
  suite.reserve(count);
  const int total = grid.total_resolution();
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = seeded(seed, i);
    DyadicFunction f(grid);
    switch (i % 4) {
      case 0:
        for (double& v : f.storage()) v = 2.0 * uniform01(rng) - 1.0;
        break;
      case 1:
        for (double& v : f.storage()) v = random_sign(rng) * std::exp(2.0 * standard_normal(rng));
        break;
      case 2: {
        const std::uint64_t spikes = 1 + draw_below(rng, 8);
        for (std::uint64_t s = 0; s < spikes; ++s) {
          const double height = std::ldexp(1.0, static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(total) + 1)));
          f[draw_below(rng, grid.size())] += random_sign(rng) * height;
        }
        break;
      }
      default: {
        std::vector<int> side(grid.dims());
        std::vector<std::uint64_t> corner(grid.dims());
        for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
          side[axis] = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(grid.resolution(axis)) + 1));
          corner[axis] = draw_below(rng, grid.extent(axis));
        }
        f = dyadic_box(grid, side, corner);
        break;
      }
    }
    suite.push_back(std::move(f));
  }
  return suite;
}

std::vector<DyadicFunction> adversarial_suite(int resolution, std::size_t count, std::uint64_t seed) {
  const Grid grid({resolution});
  const std::uint64_t len = grid.extent(0);
  std::vector<DyadicFunction> suite;
  suite.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = seeded(seed, i);
    DyadicFunction f(grid);
    switch (i % 8) {
      case 0:  // point mass at the origin
        f[0] = static_cast<double>(len);
        break;
      case 1:  // point mass elsewhere
        f[draw_below(rng, len)] = static_cast<double>(len);
        break;
      case 2: {
        const auto m = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(resolution) + 1));
        for (std::uint64_t c = 0; c < len; ++c) f[c] = dirichlet_power_of_two(m, c, resolution);
        break;
      }
      case 3: {
        const std::uint64_t k = draw_below(rng, len);
        for (std::uint64_t c = 0; c < len; ++c) f[c] = walsh_function(k, c, resolution);
        break;
      }
      case 4: {
        const std::uint64_t spikes = 2 + draw_below(rng, 6);
        for (std::uint64_t s = 0; s < spikes; ++s) f[draw_below(rng, len)] += random_sign(rng) * static_cast<double>(len);
        break;
      }
      case 5:
      case 6: {
        const std::uint64_t n = 2 + draw_below(rng, len - 1);
        const auto kernel = cached_kernel(i % 8 == 5 ? KernelKind::kNoerlund : KernelKind::kRiesz, n, resolution);
        for (std::uint64_t c = 0; c < len; ++c) f[c] = kernel->samples[c] >= 0.0 ? 1.0 : -1.0;
        break;
      }
      default:
        for (std::uint64_t c = 0; c < len; ++c) f[c] = random_sign(rng) * std::exp(2.0 * standard_normal(rng));
        break;
    }
    suite.push_back(std::move(f));
  }
  return suite;
}

}  // namespace walsh
