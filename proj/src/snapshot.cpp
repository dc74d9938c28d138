#include "gravswap/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "gravswap/errors.hpp"
#include "gravswap/format.hpp"

namespace gravswap {

namespace {

constexpr const char* kMagic = "GRIDSNAP";
constexpr const char* kEncoding = "complex128-le row-major";

void put_double(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(bytes, 8);
}

double get_double(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& what) {
  throw IoError(path.string() + ": malformed snapshot: " + what);
}

std::string expect_key(std::istream& is, const std::filesystem::path& path, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) malformed(path, "missing '" + key + "'");
  if (line.rfind(key + " ", 0) != 0) malformed(path, "expected '" + key + "', got '" + line + "'");
  return line.substr(key.size() + 1);
}

double parse_number(const std::string& s, const std::filesystem::path& path, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) malformed(path, "bad value for " + key);
    return v;
  } catch (const std::logic_error&) {
    malformed(path, "bad value for " + key);
  }
}

}  // namespace

void write_snapshot(const GridWavefunction& psi, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path.string() + ": cannot open for writing");
  os << kMagic << ' ' << kSnapshotVersion << '\n'
     << "points " << psi.spec.points << '\n'
     << "half_extent " << format_double(psi.spec.half_extent) << '\n'
     << "frame " << to_string(psi.frame) << '\n'
     << "time " << format_double(psi.time) << '\n'
     << "encoding " << kEncoding << '\n'
     << "END\n";
  for (const auto& a : psi.amplitudes) {
    put_double(os, a.real());
    put_double(os, a.imag());
  }
  if (!os) throw IoError(path.string() + ": write failed");
}

GridWavefunction read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string() + ": cannot open for reading");

  std::string version = expect_key(is, path, kMagic);
  if (version != std::to_string(kSnapshotVersion)) malformed(path, "unsupported version " + version);

  GridWavefunction psi;
  const double points = parse_number(expect_key(is, path, "points"), path, "points");
  if (points < 2 || points > 65536 || points != static_cast<int>(points)) malformed(path, "bad point count");
  psi.spec.points = static_cast<int>(points);
  psi.spec.half_extent = parse_number(expect_key(is, path, "half_extent"), path, "half_extent");
  const std::string frame = expect_key(is, path, "frame");
  if (frame == to_string(Frame::Lab))
    psi.frame = Frame::Lab;
  else if (frame == to_string(Frame::Normal))
    psi.frame = Frame::Normal;
  else
    malformed(path, "unknown frame '" + frame + "'");
  psi.time = parse_number(expect_key(is, path, "time"), path, "time");
  if (expect_key(is, path, "encoding") != kEncoding) malformed(path, "unsupported encoding");
  std::string end;
  if (!std::getline(is, end) || end != "END") malformed(path, "missing END");

  const std::size_t n = static_cast<std::size_t>(psi.spec.points) * static_cast<std::size_t>(psi.spec.points);
  std::string raw(n * 16, '\0');
  is.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(is.gcount()) != raw.size()) malformed(path, "truncated data");
  if (is.peek() != std::char_traits<char>::eof()) malformed(path, "trailing data");

  psi.amplitudes.resize(n);
  const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());
  for (std::size_t i = 0; i < n; ++i)
    psi.amplitudes[i] = {get_double(bytes + 16 * i), get_double(bytes + 16 * i + 8)};
  return psi;
}

}  // namespace gravswap
