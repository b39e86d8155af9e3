#pragma once

// Finite-resolution arithmetic on the dyadic group [0,1)^d together with
// the Rademacher, Walsh (Paley order) and Walsh-Dirichlet systems.
//
// A point of [0,1) at resolution K is stored as its grid index c, meaning
// x = c / 2^K. Binary digit i of x (counting from 1 after the point) is bit
// K - i of c, which is what Rademacher functions read.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace walsh {

using WalshIndex = std::uint64_t;

/// Largest per-axis resolution exponent accepted anywhere in the library.
inline constexpr int kMaxResolution = 30;

/// Reverses the low `bits` bits of `value`.
std::uint64_t reverse_bits(std::uint64_t value, int bits);

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two; throws kShape otherwise.
int exact_log2(std::uint64_t n);

class DyadicPoint {
 public:
  DyadicPoint() = default;
  DyadicPoint(std::vector<std::uint64_t> coords, std::vector<int> resolution);

  /// 1-d convenience: the point index / 2^resolution.
  static DyadicPoint on_line(std::uint64_t index, int resolution);
  /// Nearest grid point at or below x in [0,1).
  static DyadicPoint from_real(double x, int resolution);

  std::size_t dims() const { return coords_.size(); }
  std::uint64_t coord(std::size_t axis) const { return coords_[axis]; }
  int resolution(std::size_t axis) const { return resolution_[axis]; }
  const std::vector<std::uint64_t>& coords() const { return coords_; }
  const std::vector<int>& resolutions() const { return resolution_; }

  /// The real coordinate coords_i / 2^{K_i}.
  double value(std::size_t axis = 0) const;

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  std::vector<std::uint64_t> coords_;
  std::vector<int> resolution_;
};

/// Sorted subset of the axis labels {1, ..., d}. Labels are 1-based to
/// match the usual B / B' notation; `contains_axis` takes a 0-based axis.
class AxisSubset {
 public:
  AxisSubset() = default;
  AxisSubset(int dims, std::vector<int> members);
  AxisSubset(int dims, std::initializer_list<int> members)
      : AxisSubset(dims, std::vector<int>(members)) {}

  static AxisSubset all(int dims);
  static AxisSubset none(int dims);

  int dims() const { return dims_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int label) const;
  bool contains_axis(std::size_t axis) const { return contains(static_cast<int>(axis) + 1); }
  AxisSubset complement() const;

  friend bool operator==(const AxisSubset&, const AxisSubset&) = default;

 private:
  int dims_ = 0;
  std::vector<int> members_;
};

/// Coordinatewise dyadic sum (bitwise XOR of grid indices).
DyadicPoint dyadic_add(const DyadicPoint& x, const DyadicPoint& y);

/// r_n(x) for a grid point at resolution K: the sign of binary digit n+1.
int rademacher(int n, std::uint64_t index, int resolution);
int rademacher(int n, const DyadicPoint& x);
/// r_n evaluated at a real x in [0,1), r_0 = +1 on [0,1/2) and -1 on [1/2,1).
int rademacher(int n, double x);

/// Paley-ordered Walsh function w_n as a product of Rademacher functions.
int walsh_function(WalshIndex n, std::uint64_t index, int resolution);
int walsh_function(WalshIndex n, const DyadicPoint& x);
int walsh_function(WalshIndex n, double x);

/// D_n(x) = sum_{k<n} w_k(x), evaluated by direct summation.
double dirichlet(WalshIndex n, std::uint64_t index, int resolution);
double dirichlet(WalshIndex n, const DyadicPoint& x);
double dirichlet(WalshIndex n, double x);

/// Closed form of D_{2^m}: 2^m on [0, 2^-m), 0 elsewhere.
double dirichlet_power_of_two(int m, std::uint64_t index, int resolution);

}  // namespace walsh
