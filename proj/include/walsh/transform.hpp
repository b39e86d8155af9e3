#pragma once

// Fast Walsh-Hadamard analysis and synthesis in Paley order, for functions
// that are constant on the cells of a d-dimensional dyadic grid.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "walsh/dyadic.hpp"

namespace walsh {

/// Shape of a dense d-dimensional dyadic grid with 2^{K_i} cells on axis i.
/// Storage is row-major: axis 0 varies slowest.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<int> resolution);

  std::size_t dims() const { return resolution_.size(); }
  int resolution(std::size_t axis) const { return resolution_[axis]; }
  const std::vector<int>& resolutions() const { return resolution_; }
  std::uint64_t extent(std::size_t axis) const { return std::uint64_t{1} << resolution_[axis]; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }
  std::size_t size() const { return size_; }
  int total_resolution() const;

  std::size_t flat_index(std::span<const std::uint64_t> coords) const;
  std::vector<std::uint64_t> unravel(std::size_t flat) const;
  std::uint64_t coord(std::size_t flat, std::size_t axis) const {
    return (flat / strides_[axis]) & (extent(axis) - 1);
  }
  DyadicPoint point(std::size_t flat) const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.resolution_ == b.resolution_; }

 private:
  std::vector<int> resolution_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// Dense array of doubles over a Grid. The tag separates cell samples from
/// Walsh coefficients at the type level.
template <class Tag>
class GridArray {
 public:
  GridArray() = default;
  explicit GridArray(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}
  GridArray(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t dims() const { return grid_.dims(); }
  std::size_t size() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& storage() { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(std::span<const std::uint64_t> coords) { return values_[grid_.flat_index(coords)]; }
  double at(std::span<const std::uint64_t> coords) const { return values_[grid_.flat_index(coords)]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

struct SampleTag {};
struct CoefficientTag {};

/// Function constant on every dyadic cell; values_[c] is its value on the
/// cell with lower corner c / 2^K. Integrals are means of the samples.
using DyadicFunction = GridArray<SampleTag>;
/// Walsh-Fourier coefficients f^(j_1, ..., j_d), Paley order on each axis.
using WalshSpectrum = GridArray<CoefficientTag>;

extern template class GridArray<SampleTag>;
extern template class GridArray<CoefficientTag>;

double integral(const DyadicFunction& f);
DyadicFunction operator+(const DyadicFunction& a, const DyadicFunction& b);
DyadicFunction operator-(const DyadicFunction& a, const DyadicFunction& b);
DyadicFunction operator*(double scale, const DyadicFunction& f);
/// Largest absolute difference between two functions on the same grid.
double max_abs_difference(const DyadicFunction& a, const DyadicFunction& b);

enum class Direction { kAnalyze, kSynthesize };

/// In-place Paley-ordered Walsh-Hadamard transform of 2^K values.
/// kAnalyze computes f^(k) = 2^-K sum_j f(j/2^K) w_k(j/2^K); kSynthesize is
/// the unnormalized inverse.
void fwht_in_place(std::span<double> values, Direction direction);
std::vector<double> fwht(std::vector<double> values, Direction direction);

WalshSpectrum analyze(const DyadicFunction& f);
DyadicFunction synthesize(const WalshSpectrum& s);

/// Rectangular partial sum S_N: keeps coefficients with j_i < N_i on every
/// axis. Orders above 2^{K_i} are rejected rather than silently aliased.
DyadicFunction partial_sum(const DyadicFunction& f, std::span<const std::uint64_t> orders);
WalshSpectrum truncate(const WalshSpectrum& s, std::span<const std::uint64_t> orders);

/// Multiplies coefficient (j_1..j_d) by prod_i multipliers[i][j_i].
/// multipliers[i] may be shorter than the axis extent; missing entries are 0.
WalshSpectrum apply_separable_multiplier(const WalshSpectrum& s,
                                         std::span<const std::vector<double>> multipliers);

/// g(x) = f(x + shift) with dyadic addition on every axis.
DyadicFunction dyadic_translate(const DyadicFunction& f, std::span<const std::uint64_t> shift);

/// Samples of w_{j_1}(x_1) ... w_{j_d}(x_d).
DyadicFunction walsh_product(const Grid& grid, std::span<const std::uint64_t> indices);

}  // namespace walsh
