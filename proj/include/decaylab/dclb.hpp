#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "decaylab/grid.hpp"

namespace decaylab {

/// Malformed or truncated field file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// DCLB layout, all little-endian:
//   "DCLB" | u32 version=1 | u32 dim | u32 N | f64 box_length |
//   u32 components | components * N^dim * (f64 re, f64 im)
// Coefficients are stored component-major in Grid storage order (DFT order
// per axis, last axis fastest).
void write_dclb(std::ostream& out, const SpectralField& field);
SpectralField read_dclb(std::istream& in);

void save_dclb(const std::filesystem::path& path, const SpectralField& field);
SpectralField load_dclb(const std::filesystem::path& path);

}  // namespace decaylab
