#include "walsh/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "walsh/error.hpp"

namespace walsh {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kResolutionMismatch: return "resolution mismatch";
    case ErrorKind::kResolutionExceeded: return "resolution exceeded";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kNumeric: return "numeric error";
    case ErrorKind::kUsage: return "usage error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

std::uint64_t reverse_bits(std::uint64_t value, int bits) {
  std::uint64_t out = 0;
  for (int i = 0; i < bits; ++i) {
    out = (out << 1) | (value & 1u);
    value >>= 1;
  }
  return out;
}

int exact_log2(std::uint64_t n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorKind::kShape, "length " + std::to_string(n) + " is not a power of two");
  }
  return std::countr_zero(n);
}

namespace {

void check_resolution(int k) {
  if (k < 0 || k > kMaxResolution) {
    throw Error(ErrorKind::kDomain, "resolution exponent " + std::to_string(k) + " out of range");
  }
}

}  // namespace

DyadicPoint::DyadicPoint(std::vector<std::uint64_t> coords, std::vector<int> resolution)
    : coords_(std::move(coords)), resolution_(std::move(resolution)) {
  if (coords_.size() != resolution_.size()) {
    throw Error(ErrorKind::kShape, "point has " + std::to_string(coords_.size()) +
                                       " coordinates but " + std::to_string(resolution_.size()) +
                                       " resolution exponents");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    check_resolution(resolution_[i]);
    if (coords_[i] >= (std::uint64_t{1} << resolution_[i])) {
      throw Error(ErrorKind::kDomain, "grid index " + std::to_string(coords_[i]) +
                                          " outside 2^" + std::to_string(resolution_[i]));
    }
  }
}

DyadicPoint DyadicPoint::on_line(std::uint64_t index, int resolution) {
  return DyadicPoint({index}, {resolution});
}

DyadicPoint DyadicPoint::from_real(double x, int resolution) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw Error(ErrorKind::kDomain, "point must lie in [0,1)");
  }
  check_resolution(resolution);
  auto index = static_cast<std::uint64_t>(std::floor(std::ldexp(x, resolution)));
  return on_line(index, resolution);
}

double DyadicPoint::value(std::size_t axis) const {
  return std::ldexp(static_cast<double>(coords_[axis]), -resolution_[axis]);
}

AxisSubset::AxisSubset(int dims, std::vector<int> members) : dims_(dims), members_(std::move(members)) {
  if (dims < 0) throw Error(ErrorKind::kDomain, "negative dimension");
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1 || members_[i] > dims) {
      throw Error(ErrorKind::kDomain, "axis label " + std::to_string(members_[i]) +
                                          " outside 1.." + std::to_string(dims));
    }
    if (i > 0 && members_[i] == members_[i - 1]) {
      throw Error(ErrorKind::kDomain, "duplicate axis label " + std::to_string(members_[i]));
    }
  }
}

AxisSubset AxisSubset::all(int dims) {
  std::vector<int> m(static_cast<std::size_t>(dims));
  for (int i = 0; i < dims; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return AxisSubset(dims, std::move(m));
}

AxisSubset AxisSubset::none(int dims) { return AxisSubset(dims, std::vector<int>{}); }

bool AxisSubset::contains(int label) const {
  return std::binary_search(members_.begin(), members_.end(), label);
}

AxisSubset AxisSubset::complement() const {
  std::vector<int> rest;
  for (int i = 1; i <= dims_; ++i) {
    if (!contains(i)) rest.push_back(i);
  }
  return AxisSubset(dims_, std::move(rest));
}

DyadicPoint dyadic_add(const DyadicPoint& x, const DyadicPoint& y) {
  if (x.resolutions() != y.resolutions()) {
    throw Error(ErrorKind::kResolutionMismatch, "dyadic addition of points at different resolutions");
  }
  std::vector<std::uint64_t> sum(x.dims());
  for (std::size_t i = 0; i < x.dims(); ++i) sum[i] = x.coord(i) ^ y.coord(i);
  return DyadicPoint(std::move(sum), x.resolutions());
}

int rademacher(int n, std::uint64_t index, int resolution) {
  if (n < 0) throw Error(ErrorKind::kDomain, "negative Rademacher index");
  if (n >= resolution) return 1;
  return ((index >> (resolution - 1 - n)) & 1u) ? -1 : 1;
}

int rademacher(int n, const DyadicPoint& x) { return rademacher(n, x.coord(0), x.resolution(0)); }

int rademacher(int n, double x) {
  if (n < 0) throw Error(ErrorKind::kDomain, "negative Rademacher index");
  if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorKind::kDomain, "point must lie in [0,1)");
  double scaled = std::ldexp(x, n);
  double frac = scaled - std::floor(scaled);
  return frac < 0.5 ? 1 : -1;
}

int walsh_function(WalshIndex n, std::uint64_t index, int resolution) {
  std::uint64_t digits = reverse_bits(index, resolution);
  return (std::popcount(n & digits) & 1) ? -1 : 1;
}

int walsh_function(WalshIndex n, const DyadicPoint& x) {
  return walsh_function(n, x.coord(0), x.resolution(0));
}

int walsh_function(WalshIndex n, double x) {
  int sign = 1;
  for (int bit = 0; bit < 64 && (n >> bit) != 0; ++bit) {
    if ((n >> bit) & 1u) sign *= rademacher(bit, x);
  }
  return sign;
}

double dirichlet(WalshIndex n, std::uint64_t index, int resolution) {
  std::uint64_t digits = reverse_bits(index, resolution);
  std::int64_t sum = 0;
  for (WalshIndex k = 0; k < n; ++k) sum += (std::popcount(k & digits) & 1) ? -1 : 1;
  return static_cast<double>(sum);
}

double dirichlet(WalshIndex n, const DyadicPoint& x) { return dirichlet(n, x.coord(0), x.resolution(0)); }

double dirichlet(WalshIndex n, double x) {
  double sum = 0.0;
  for (WalshIndex k = 0; k < n; ++k) sum += walsh_function(k, x);
  return sum;
}

double dirichlet_power_of_two(int m, std::uint64_t index, int resolution) {
  if (m < 0) throw Error(ErrorKind::kDomain, "negative Dirichlet exponent");
  bool inside = m <= resolution ? index < (std::uint64_t{1} << (resolution - m)) : index == 0;
  return inside ? std::ldexp(1.0, m) : 0.0;
}

}  // namespace walsh
