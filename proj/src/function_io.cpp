#include "walsh/function_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "walsh/error.hpp"

namespace walsh {

void write_binary(std::ostream& out, const DyadicFunction& f) {
  const Grid& grid = f.grid();
  if (grid.dims() > kMaxSerializedDims) throw Error(ErrorKind::kShape, "too many axes for binary header");
  std::array<char, kBinaryHeaderBytes> header{};
  header[0] = static_cast<char>(grid.dims());
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) header[axis + 1] = static_cast<char>(grid.resolution(axis));
  out.write(header.data(), header.size());
  for (double v : f.values()) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> bytes;
    for (int b = 0; b < 8; ++b) bytes[static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.write(bytes.data(), bytes.size());
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing binary function");
}

DyadicFunction read_binary(std::istream& in) {
  std::array<unsigned char, kBinaryHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in) throw Error(ErrorKind::kIo, "truncated binary header");
  const std::size_t dims = header[0];
  if (dims == 0 || dims > kMaxSerializedDims) throw Error(ErrorKind::kShape, "bad dimension in binary header");
  std::vector<int> resolution(dims);
  for (std::size_t axis = 0; axis < dims; ++axis) resolution[axis] = header[axis + 1];
  DyadicFunction f{Grid(resolution)};
  for (double& v : f.storage()) {
    std::array<unsigned char, 8> bytes;
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw Error(ErrorKind::kIo, "truncated binary samples");
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[static_cast<std::size_t>(b)];
    v = std::bit_cast<double>(bits);
  }
  return f;
}

void save_binary(const std::string& path, const DyadicFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  write_binary(out, f);
}

DyadicFunction load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return read_binary(in);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const DyadicFunction& f) {
  const Grid& grid = f.grid();
  for (std::size_t axis = 0; axis < grid.dims(); ++axis) out << 'i' << axis + 1 << ',';
  out << "value\n";
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    for (std::size_t axis = 0; axis < grid.dims(); ++axis) out << grid.coord(flat, axis) << ',';
    out << format_double(f[flat]) << '\n';
  }
}

}  // namespace walsh
