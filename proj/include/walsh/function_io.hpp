#pragma once

// Serialization of DyadicFunction.
//
// Binary layout (little-endian throughout):
//   bytes 0..15  header: byte 0 holds d (1..15), bytes 1..d hold K_1..K_d,
//                remaining header bytes are zero
//   bytes 16..   2^{K_1+...+K_d} IEEE-754 binary64 samples, row-major with
//                axis 1 varying slowest
//
// CSV layout: header row "i1,...,id,value", then one row per cell.

#include <iosfwd>
#include <string>

#include "walsh/transform.hpp"

namespace walsh {

inline constexpr std::size_t kBinaryHeaderBytes = 16;
inline constexpr std::size_t kMaxSerializedDims = kBinaryHeaderBytes - 1;

void write_binary(std::ostream& out, const DyadicFunction& f);
DyadicFunction read_binary(std::istream& in);

void save_binary(const std::string& path, const DyadicFunction& f);
DyadicFunction load_binary(const std::string& path);

void write_csv(std::ostream& out, const DyadicFunction& f);

/// Shortest round-tripping text for a double (17 significant digits).
std::string format_double(double v);

}  // namespace walsh
