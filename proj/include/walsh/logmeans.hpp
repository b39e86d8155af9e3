#pragma once

// Logarithmic summability means of multiple Walsh-Fourier series.
//
//   l_n     = sum_{k=1}^{n-1} 1/k
//   F_n     = (1/l_n) sum_{i=1}^{n-1} D_{n-i} / i    (Noerlund kernel)
//   G_n     = (1/l_n) sum_{i=1}^{n-1} D_i / i        (Riesz kernel)
//
// The mixed mean applies the Noerlund kernel on the axes of B and the Riesz
// kernel on the remaining axes. Both kernels are Walsh polynomials with
// multipliers
//
//   F^_n(k) = l_{n-k} / l_n          0 <= k <= n-2
//   G^_n(k) = (l_n - l_{k+1}) / l_n  0 <= k <= n-2
//
// and zero from k = n-1 on, so every mean is a diagonal operator on the
// Walsh spectrum.

#include <cstdint>
#include <memory>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// l_n. Exact summation up to a few million terms, asymptotic expansion of
/// the harmonic numbers beyond that. l_1 = 0; n = 0 is a domain error.
double harmonic_l(std::uint64_t n);

/// table[m] = l_m for 1 <= m <= n (table[0] is unused and set to 0).
std::vector<double> harmonic_table(std::uint64_t n);

enum class KernelKind { kDirichlet, kNoerlund, kRiesz };

const char* to_string(KernelKind kind);

/// A 1-d kernel held twice: as grid samples computed by summing Dirichlet
/// kernels, and as Walsh multipliers from the closed forms above.
struct KernelProfile {
  KernelKind kind;
  std::uint64_t order;
  int resolution;
  std::vector<double> samples;
  std::vector<double> multipliers;
};

/// Closed-form multipliers padded with zeros to `length` entries.
std::vector<double> noerlund_multipliers(std::uint64_t n, std::size_t length);
std::vector<double> riesz_multipliers(std::uint64_t n, std::size_t length);
std::vector<double> dirichlet_multipliers(std::uint64_t n, std::size_t length);

KernelProfile kernel_f(std::uint64_t n, int resolution);
KernelProfile kernel_g(std::uint64_t n, int resolution);
KernelProfile kernel_d(std::uint64_t n, int resolution);
KernelProfile make_kernel(KernelKind kind, std::uint64_t n, int resolution);

/// Process-wide cache keyed by (kind, n, K). Concurrent lookups share a
/// reader lock; a miss computes outside the lock and inserts under a writer
/// lock, keeping whichever profile landed first.
std::shared_ptr<const KernelProfile> cached_kernel(KernelKind kind, std::uint64_t n, int resolution);
void clear_kernel_cache();
std::size_t kernel_cache_size();

/// Per-axis summability assignment: Noerlund on B, Riesz on B'.
class MeanSpec {
 public:
  MeanSpec(AxisSubset noerlund_axes, std::vector<std::uint64_t> orders);

  /// Same order n on every axis.
  static MeanSpec uniform(AxisSubset noerlund_axes, std::uint64_t n);

  int dims() const { return noerlund_axes_.dims(); }
  const AxisSubset& noerlund_axes() const { return noerlund_axes_; }
  AxisSubset riesz_axes() const { return noerlund_axes_.complement(); }
  const std::vector<std::uint64_t>& orders() const { return orders_; }
  std::uint64_t order(std::size_t axis) const { return orders_[axis]; }
  bool is_noerlund(std::size_t axis) const { return noerlund_axes_.contains_axis(axis); }

  /// Throws unless the spec fits on the grid.
  void check_against(const Grid& grid) const;

 private:
  AxisSubset noerlund_axes_;
  std::vector<std::uint64_t> orders_;
};

/// prod_{i in B} F_{n_i}(x_i) * prod_{i in B'} G_{n_i}(x_i).
DyadicFunction tensor_kernel(const MeanSpec& spec, const Grid& grid);

enum class MeanMethod { kDirect, kSpectral };

/// (L_{n_B} o R_{n_B'})(f). kDirect forms the weighted sum of rectangular
/// partial sums with every index running over 1..n_i - 1; kSpectral scales
/// the Walsh spectrum by the closed-form multipliers.
DyadicFunction apply_mean(const DyadicFunction& f, const MeanSpec& spec,
                          MeanMethod method = MeanMethod::kSpectral);

/// (f * k)(x) = int f(t) k(x + t) dt by direct O(N^2) summation.
DyadicFunction dyadic_convolve(const DyadicFunction& f, const DyadicFunction& kernel);

}  // namespace walsh
