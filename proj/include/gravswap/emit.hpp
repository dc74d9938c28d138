#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gravswap/report.hpp"

namespace gravswap {

/// RFC 4180 style: header row, comma separated, 17 significant digits,
/// fields quoted only when needed.
std::string render_csv(const Table& t);

/// One-page plain text summary with verdicts.
std::string render_summary(const ExperimentReport& r);

/// plots.json: figure descriptions (axes, series, labels) referencing the
/// CSV files.
std::string render_plots(const ExperimentReport& r);

/// manifest.json including the SHA-256 of every other emitted file.
std::string render_manifest(const ExperimentReport& r, const std::map<std::string, std::string>& output_digests);

struct EmittedFiles {
  std::vector<std::filesystem::path> files;          // manifest last
  std::map<std::string, std::string> output_digests;  // file name -> sha256, manifest excluded
};

/// Writes manifest.json, summary.txt, plots.json, one CSV per table and
/// any grid snapshots into `out_dir` (created if needed). Overwrites
/// previous files; identical reports give identical files. Throws IoError
/// naming the offending path.
EmittedFiles emit_report(const ExperimentReport& r, const std::filesystem::path& out_dir);

struct ManifestRecord {
  std::string kind;
  std::string config_echo;
  std::string config_digest;
  std::string version;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::map<std::string, std::string> output_digests;
};

/// Throws IoError for unreadable or malformed manifests.
ManifestRecord read_manifest(const std::filesystem::path& path);

struct ReplayResult {
  ExperimentReport report;
  EmittedFiles emitted;
  std::vector<std::string> mismatches;  // file names whose digest differs or is missing
  bool matched() const { return mismatches.empty(); }
};

/// Re-runs the configuration recorded in a manifest, writes the new
/// report to `out_dir` and compares output digests. Throws IoError when
/// the recorded configuration does not match its own digest.
ReplayResult replay_manifest(const std::filesystem::path& manifest, const std::filesystem::path& out_dir);

}  // namespace gravswap
