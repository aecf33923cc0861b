#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace tracelab {

// Shortest round-trip decimal representation (at most 17 significant digits).
std::string format_double(double v);
std::string format_complex(std::complex<double> v); // "re im"

// FNV-1a 64-bit content hash, hex encoded; used for manifest checksums.
std::string fnv1a_hex(const std::string& bytes);

// Writes bytes to path, creating parent directories.
void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

} // namespace tracelab
