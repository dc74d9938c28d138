#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gravswap/analytic.hpp"
#include "gravswap/grid.hpp"
#include "gravswap/moment_ode.hpp"
#include "gravswap/params.hpp"
#include "gravswap/states.hpp"

namespace gravswap {

enum class ExperimentKind { Swap, RwaValidity, CatState, Feasibility };

/// Which independent cross-checks run alongside the closed forms.
enum class OracleMode { None, Ode, Grid, All };

std::string_view to_string(ExperimentKind k);
std::string_view to_string(OracleMode m);
bool uses_ode(OracleMode m);
bool uses_grid(OracleMode m);

/// Either a direct coupling (delta, omega) or SI parameters, optionally
/// starting from a named preset.
struct ParamsSpec {
  bool physical = false;
  double delta = 0.0;
  double omega = 1.0;  // rad/s
  std::string preset;  // informational once resolved
  PhysicalParams si;

  DimensionlessParams resolve() const;
  bool operator==(const ParamsSpec&) const = default;
};

struct PlatformSpec {
  std::string name;
  ParamsSpec params;
  bool operator==(const PlatformSpec&) const = default;
};

struct TimeOptions {
  double t_final = 0.0;          // seconds
  std::size_t samples = 100;     // closed-form / ODE intervals on [0, t_final]
  std::size_t grid_samples = 10; // grid snapshot intervals
  bool operator==(const TimeOptions&) const = default;
};

struct GridOptions {
  int points = 256;
  double half_extent = 8.0;
  Frame frame = Frame::Lab;
  std::size_t max_inits = 1;  // swap: grid oracle runs on the first max_inits initial pairs
  bool write_snapshots = false;
  bool operator==(const GridOptions&) const = default;
};

/// Every pass/fail threshold used by the experiments. All of them are
/// written to the manifest.
struct Tolerances {
  double swap_fidelity = 1e-12;
  double moment_identity = 1e-12;
  double ode_agreement = 1e-8;
  double grid_agreement = 1e-5;
  double grid_width = 5e-6;
  double norm_per_step = 1e-10;
  double coherence = 1e-6;
  double envelope_ratio = 0.10;
  double envelope_max_coupling = 0.5;  // envelope check applies for delta*amplitude <= this
  double linearity = 0.05;
  double significance = 1.0;  // deviation (amplitude units) marking RWA breakdown
  double entropy_oracle = 1e-2;
  double entropy_min = 0.5;
  double product_entropy = 1e-6;
  double sceg_first_moment = 1e-6;
  double sceg_purity_loss = 1e-4;
  double impractical_time = 1e9;
  double reference_coupling_rate = 1e-12;  // trapped-ion figure, rad/s
  double coupling_rate_decades = 1.0;
  double reference_swap_time = 1e10;
  bool operator==(const Tolerances&) const = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Swap;
  std::vector<ModelKind> models;
  ParamsSpec params;
  TwoModeCoherent state;
  std::size_t random_pairs = 0;
  double amplitude_bound = 3.0;
  TimeOptions time;
  OracleMode oracle = OracleMode::Ode;
  GridOptions grid;
  IntegratorConfig integrator;
  Tolerances tolerances;
  std::vector<double> sweep_deltas;
  std::vector<double> sweep_amplitudes;
  std::size_t sweep_samples_per_period = 64;
  std::vector<PlatformSpec> platforms;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string output = "results";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the INI-style configuration. Unknown sections and keys are
/// rejected; every default is filled in so that echo_config writes the
/// complete effective configuration. Throws ConfigError carrying the
/// dotted field path.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Canonical text form; parse_config_text(echo_config(c)) == c.
std::string echo_config(const ExperimentConfig& c);

/// Re-checks cross-field constraints after programmatic edits (for
/// instance command line overrides). Throws ConfigError.
void validate(const ExperimentConfig& c);

}  // namespace gravswap
