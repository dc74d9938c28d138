#pragma once

#include <filesystem>

#include "gravswap/grid.hpp"

namespace gravswap {

/// Snapshot files are a short ASCII header followed by raw amplitudes:
///
///   GRIDSNAP 1
///   points <N>
///   half_extent <L>
///   frame <lab|normal>
///   time <t seconds>
///   encoding complex128-le row-major
///   END
///
/// then N*N (re, im) pairs of little-endian IEEE doubles, first index
/// (x1 or x+) major. Numbers in the header use 17 significant digits.
inline constexpr int kSnapshotVersion = 1;

/// Throws IoError with the path on failure.
void write_snapshot(const GridWavefunction& psi, const std::filesystem::path& path);

/// Throws IoError on I/O failure or a malformed / unsupported header.
GridWavefunction read_snapshot(const std::filesystem::path& path);

}  // namespace gravswap
