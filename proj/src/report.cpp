#include "gravswap/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <stdexcept>

#ifndef GRAVSWAP_VERSION
#define GRAVSWAP_VERSION "0.0.0"
#endif

namespace gravswap {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& c) const {
  auto it = std::find(columns.begin(), columns.end(), c);
  if (it == columns.end()) throw std::out_of_range("table " + name + ": no column " + c);
  return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, const std::string& c) const {
  const Cell& cell = rows.at(row).at(column(c));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  throw std::out_of_range("table " + name + ": column " + c + " is not numeric");
}

Verdict verdict_at_most(std::string name, double value, double threshold, std::string detail) {
  return {std::move(name), value <= threshold, value, "<=", threshold, std::move(detail)};
}

Verdict verdict_at_least(std::string name, double value, double threshold, std::string detail) {
  return {std::move(name), value >= threshold, value, ">=", threshold, std::move(detail)};
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

const Table& ExperimentReport::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw std::out_of_range("report has no table " + name);
}

const Verdict& ExperimentReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  throw std::out_of_range("report has no verdict " + name);
}

const Metric& ExperimentReport::metric(const std::string& name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m;
  throw std::out_of_range("report has no metric " + name);
}

bool ExperimentReport::has_verdict(const std::string& name) const {
  return std::any_of(verdicts.begin(), verdicts.end(), [&](const Verdict& v) { return v.name == name; });
}

std::string artifact_version() { return GRAVSWAP_VERSION; }

std::string current_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0' && v >= 0) now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest make_manifest(const ExperimentConfig& cfg) {
  RunManifest m;
  m.config_echo = echo_config(cfg);
  m.version = artifact_version();
  m.timestamp = current_timestamp();
  m.seed = cfg.seed;
  m.threads = cfg.threads;
  const auto& t = cfg.tolerances;
  const auto& ic = cfg.integrator;
  m.tolerances = {
      {"swap_fidelity", t.swap_fidelity},
      {"moment_identity", t.moment_identity},
      {"ode_agreement", t.ode_agreement},
      {"grid_agreement", t.grid_agreement},
      {"grid_width", t.grid_width},
      {"norm_per_step", t.norm_per_step},
      {"coherence", t.coherence},
      {"envelope_ratio", t.envelope_ratio},
      {"envelope_max_coupling", t.envelope_max_coupling},
      {"linearity", t.linearity},
      {"significance", t.significance},
      {"entropy_oracle", t.entropy_oracle},
      {"entropy_min", t.entropy_min},
      {"product_entropy", t.product_entropy},
      {"sceg_first_moment", t.sceg_first_moment},
      {"sceg_purity_loss", t.sceg_purity_loss},
      {"impractical_time", t.impractical_time},
      {"reference_coupling_rate", t.reference_coupling_rate},
      {"coupling_rate_decades", t.coupling_rate_decades},
      {"reference_swap_time", t.reference_swap_time},
      {"integrator.grid_dt_fraction", ic.grid_dt_fraction},
      {"integrator.rk_step_fraction", ic.rk_step_fraction},
      {"integrator.rk_tolerance", ic.rk_tolerance},
      {"integrator.norm_drift_rate_limit", ic.norm_drift_rate_limit},
      {"integrator.leakage_limit", ic.leakage_limit},
      {"integrator.max_grid_dt_fraction", ic.max_grid_dt_fraction},
  };
  return m;
}

}  // namespace gravswap
