#pragma once

// Deterministic test-function families used by the experiments.

#include <cstdint>
#include <random>
#include <vector>

#include "walsh/experiment.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// Uniform double in [0, 1) from the top 53 bits of one draw. Used instead
/// of the standard distributions so fixtures do not depend on the library.
double uniform01(std::mt19937_64& rng);
double standard_normal(std::mt19937_64& rng);

/// Builtin functions for the converge command: constant, rectangle, walsh,
/// random-step, borderline, file.
DyadicFunction builtin_function(const ExperimentConfig& config, const Grid& grid);

/// Indicator of the cells whose lower corner lies in prod [lo_i, hi_i).
DyadicFunction rectangle_indicator(const Grid& grid, const std::vector<double>& bounds);

/// Mixed suite of random functions: uniform steps, log-normal magnitudes,
/// sparse spikes, and L1-normalized dyadic boxes, cycling in that order.
std::vector<DyadicFunction> random_suite(const Grid& grid, std::size_t count, std::uint64_t seed);

/// One-dimensional suite aimed at the worst case of a convolution operator:
/// point masses, Dirichlet kernels, Walsh functions, sign patterns of the
/// logarithmic kernels and random steps.
std::vector<DyadicFunction> adversarial_suite(int resolution, std::size_t count, std::uint64_t seed);

}  // namespace walsh
