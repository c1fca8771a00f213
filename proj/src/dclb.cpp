#include "decaylab/dclb.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace decaylab {

namespace {

constexpr char kMagic[4] = {'D', 'C', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw FormatError(std::string("DCLB: truncated while reading ") + what);
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_dclb(std::ostream& out, const SpectralField& field) {
  const Grid& g = field.grid();
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points()));
  put<double>(out, g.box_length());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.components()));
  for (const cplx& c : field.data()) {
    put<double>(out, c.real());
    put<double>(out, c.imag());
  }
  if (!out) throw std::runtime_error("DCLB: write failed");
}

SpectralField read_dclb(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError("DCLB: bad magic bytes");
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw FormatError("DCLB: unsupported version " + std::to_string(version));
  const auto dim = get<std::uint32_t>(in, "dim");
  const auto n = get<std::uint32_t>(in, "N");
  const auto box = get<double>(in, "box_length");
  const auto comps = get<std::uint32_t>(in, "components");
  if (comps < 1 || comps > 16) throw FormatError("DCLB: bad component count");
  Grid grid = [&] {
    try {
      return Grid(static_cast<int>(dim), static_cast<int>(n), box);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("DCLB: bad header: ") + e.what());
    }
  }();
  SpectralField field(grid, static_cast<int>(comps));
  for (cplx& c : field.data()) {
    const double re = get<double>(in, "coefficients");
    const double im = get<double>(in, "coefficients");
    c = cplx{re, im};
  }
  return field;
}

void save_dclb(const std::filesystem::path& path, const SpectralField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_dclb(out, field);
}

SpectralField load_dclb(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_dclb(in);
}

}  // namespace decaylab
