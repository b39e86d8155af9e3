#include "walsh/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "walsh/error.hpp"

namespace walsh {

Grid::Grid(std::vector<int> resolution) : resolution_(std::move(resolution)) {
  if (resolution_.empty()) throw Error(ErrorKind::kShape, "grid needs at least one axis");
  int total = 0;
  for (int k : resolution_) {
    if (k < 0 || k > kMaxResolution) {
      throw Error(ErrorKind::kDomain, "resolution exponent " + std::to_string(k) + " out of range");
    }
    total += k;
  }
  if (total > 34) throw Error(ErrorKind::kResolutionExceeded, "grid with 2^" + std::to_string(total) + " cells is too large");
  strides_.assign(resolution_.size(), 1);
  for (std::size_t axis = resolution_.size(); axis-- > 0;) {
    strides_[axis] = size_;
    size_ <<= resolution_[axis];
  }
}

int Grid::total_resolution() const {
  int total = 0;
  for (int k : resolution_) total += k;
  return total;
}

std::size_t Grid::flat_index(std::span<const std::uint64_t> coords) const {
  if (coords.size() != dims()) throw Error(ErrorKind::kShape, "coordinate count does not match grid");
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < dims(); ++axis) {
    if (coords[axis] >= extent(axis)) throw Error(ErrorKind::kDomain, "grid index out of range");
    flat += static_cast<std::size_t>(coords[axis]) * strides_[axis];
  }
  return flat;
}

std::vector<std::uint64_t> Grid::unravel(std::size_t flat) const {
  std::vector<std::uint64_t> coords(dims());
  for (std::size_t axis = 0; axis < dims(); ++axis) coords[axis] = coord(flat, axis);
  return coords;
}

DyadicPoint Grid::point(std::size_t flat) const { return DyadicPoint(unravel(flat), resolution_); }

template <class Tag>
GridArray<Tag>::GridArray(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::kShape, "expected " + std::to_string(grid_.size()) + " values, got " +
                                       std::to_string(values_.size()));
  }
}

template class GridArray<SampleTag>;
template class GridArray<CoefficientTag>;

double integral(const DyadicFunction& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum / static_cast<double>(f.size());
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(ErrorKind::kResolutionMismatch, "functions live on different grids");
}

// Bit-reversal permutation of a power-of-two array.
void bit_reverse_permute(std::span<double> v, int bits) {
  for (std::uint64_t i = 0; i < v.size(); ++i) {
    std::uint64_t j = reverse_bits(i, bits);
    if (i < j) std::swap(v[i], v[j]);
  }
}

// Natural-order butterfly: v[k] <- sum_j (-1)^{popcount(j & k)} v[j].
void hadamard_butterfly(std::span<double> v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        double a = v[j];
        double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

template <class Fn>
void for_each_line(const Grid& grid, std::size_t axis, Fn&& fn) {
  const std::size_t len = grid.extent(axis);
  const std::size_t stride = grid.stride(axis);
  const std::size_t block = len * stride;
  for (std::size_t outer = 0; outer < grid.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) fn(outer + inner, stride, len);
  }
}

void transform_all_axes(const Grid& grid, std::span<double> data, Direction direction) {
  std::vector<double> line;
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
    if (grid.dims() == 1) {
      fwht_in_place(data, direction);
      return;
    }
    for_each_line(grid, axis, [&](std::size_t start, std::size_t stride, std::size_t len) {
      line.resize(len);
      for (std::size_t i = 0; i < len; ++i) line[i] = data[start + i * stride];
      fwht_in_place(line, direction);
      for (std::size_t i = 0; i < len; ++i) data[start + i * stride] = line[i];
    });
  }
}

}  // namespace

DyadicFunction operator+(const DyadicFunction& a, const DyadicFunction& b) {
  require_same_grid(a.grid(), b.grid());
  DyadicFunction out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

DyadicFunction operator-(const DyadicFunction& a, const DyadicFunction& b) {
  require_same_grid(a.grid(), b.grid());
  DyadicFunction out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

DyadicFunction operator*(double scale, const DyadicFunction& f) {
  DyadicFunction out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = scale * f[i];
  return out;
}

double max_abs_difference(const DyadicFunction& a, const DyadicFunction& b) {
  require_same_grid(a.grid(), b.grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

void fwht_in_place(std::span<double> values, Direction direction) {
  const int bits = exact_log2(values.size());
  if (direction == Direction::kAnalyze) {
    bit_reverse_permute(values, bits);
    hadamard_butterfly(values);
    const double scale = std::ldexp(1.0, -bits);
    for (double& v : values) v *= scale;
  } else {
    hadamard_butterfly(values);
    bit_reverse_permute(values, bits);
  }
}

std::vector<double> fwht(std::vector<double> values, Direction direction) {
  fwht_in_place(values, direction);
  return values;
}

WalshSpectrum analyze(const DyadicFunction& f) {
  std::vector<double> data(f.values().begin(), f.values().end());
  transform_all_axes(f.grid(), data, Direction::kAnalyze);
  return WalshSpectrum(f.grid(), std::move(data));
}

DyadicFunction synthesize(const WalshSpectrum& s) {
  std::vector<double> data(s.values().begin(), s.values().end());
  transform_all_axes(s.grid(), data, Direction::kSynthesize);
  return DyadicFunction(s.grid(), std::move(data));
}

WalshSpectrum truncate(const WalshSpectrum& s, std::span<const std::uint64_t> orders) {
  const Grid& grid = s.grid();
  if (orders.size() != grid.dims()) throw Error(ErrorKind::kShape, "one order per axis required");
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
    if (orders[axis] > grid.extent(axis)) {
      throw Error(ErrorKind::kResolutionExceeded,
                  "order " + std::to_string(orders[axis]) + " exceeds 2^" +
                      std::to_string(grid.resolution(axis)) + " on axis " + std::to_string(axis + 1));
    }
  }
  WalshSpectrum out(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    bool keep = true;
    for (std::size_t axis = 0; axis < grid.dims() && keep; ++axis) keep = grid.coord(flat, axis) < orders[axis];
    if (keep) out[flat] = s[flat];
  }
  return out;
}

DyadicFunction partial_sum(const DyadicFunction& f, std::span<const std::uint64_t> orders) {
  return synthesize(truncate(analyze(f), orders));
}

WalshSpectrum apply_separable_multiplier(const WalshSpectrum& s,
                                         std::span<const std::vector<double>> multipliers) {
  const Grid& grid = s.grid();
  if (multipliers.size() != grid.dims()) throw Error(ErrorKind::kShape, "one multiplier per axis required");
  WalshSpectrum out(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    double factor = 1.0;
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
      std::uint64_t j = grid.coord(flat, axis);
      factor *= j < multipliers[axis].size() ? multipliers[axis][j] : 0.0;
      if (factor == 0.0) break;
    }
    out[flat] = factor * s[flat];
  }
  return out;
}

DyadicFunction dyadic_translate(const DyadicFunction& f, std::span<const std::uint64_t> shift) {
  const Grid& grid = f.grid();
  if (shift.size() != grid.dims()) throw Error(ErrorKind::kShape, "one shift per axis required");
  std::size_t flat_shift = grid.flat_index(shift);
  DyadicFunction out(grid);
  // XOR of flat indices is XOR per axis because every axis occupies its own bit field.
  for (std::size_t flat = 0; flat < grid.size(); ++flat) out[flat] = f[flat ^ flat_shift];
  return out;
}

DyadicFunction walsh_product(const Grid& grid, std::span<const std::uint64_t> indices) {
  if (indices.size() != grid.dims()) throw Error(ErrorKind::kShape, "one Walsh index per axis required");
  DyadicFunction out(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    int sign = 1;
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) {
      sign *= walsh_function(indices[axis], grid.coord(flat, axis), grid.resolution(axis));
    }
    out[flat] = sign;
  }
  return out;
}

}  // namespace walsh
