#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gravswap/config.hpp"
#include "gravswap/grid.hpp"

namespace gravswap {

using Cell = std::variant<double, std::int64_t, std::string>;

/// One CSV file: header plus rows of equal length.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;  // throws std::out_of_range
  double number(std::size_t row, const std::string& column) const;
};

struct Metric {
  std::string name;
  double value = 0.0;
  std::string note;
};

/// A thresholded check; `comparison` is "<=" or ">=" between value and
/// threshold.
struct Verdict {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string comparison;
  double threshold = 0.0;
  std::string detail;
};

Verdict verdict_at_most(std::string name, double value, double threshold, std::string detail = {});
Verdict verdict_at_least(std::string name, double value, double threshold, std::string detail = {});

struct PlotSeries {
  std::string label;
  std::string y;  // column
  std::map<std::string, std::string> filter;  // column -> required value
};

/// Renderer-agnostic figure description pointing at one table.
struct Plot {
  std::string name;
  std::string title;
  std::string table;
  std::string x;
  std::string x_label;
  std::string y_label;
  std::string y_scale = "linear";
  std::vector<PlotSeries> series;
};

struct NamedSnapshot {
  std::string name;  // file stem
  GridWavefunction state;
};

struct RunManifest {
  std::string config_echo;
  std::string version;
  std::string timestamp;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path -> sha256
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::Swap;
  RunManifest manifest;
  std::vector<Table> tables;
  std::vector<Metric> metrics;
  std::vector<Verdict> verdicts;
  std::vector<Plot> plots;
  std::vector<NamedSnapshot> snapshots;
  std::vector<std::string> notes;

  bool passed() const;
  const Table& table(const std::string& name) const;  // throws std::out_of_range
  const Verdict& verdict(const std::string& name) const;
  const Metric& metric(const std::string& name) const;
  bool has_verdict(const std::string& name) const;
};

/// Manifest fields shared by every experiment. The timestamp comes from
/// SOURCE_DATE_EPOCH when set, so that whole report directories can be
/// reproduced byte for byte.
RunManifest make_manifest(const ExperimentConfig& cfg);

/// ISO-8601 UTC time, honouring SOURCE_DATE_EPOCH.
std::string current_timestamp();

std::string artifact_version();

}  // namespace gravswap
