#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gravswap {

namespace constants {
inline constexpr double kGravitational = 6.67430e-11;      // m^3 kg^-1 s^-2
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
}  // namespace constants

/// Coupling ratios above this are accepted but flagged; the first-order
/// corrections lose accuracy there.
inline constexpr double kLargeCouplingWarning = 0.2;
/// K_minus = sqrt(1 - 2 delta) becomes imaginary at this value.
inline constexpr double kMaxCoupling = 0.5;

/// SI description of two identical harmonically trapped masses whose trap
/// centres sit a distance `separation` apart.
struct PhysicalParams {
  double mass = 0.0;        // kg
  double omega = 0.0;       // trap angular frequency, rad/s
  double separation = 0.0;  // m
  double G = constants::kGravitational;
  double hbar = constants::kHbar;

  /// lambda = G m^2 / d^3
  double coupling_constant() const;
  /// omega_g = lambda / (m omega), rad/s
  double coupling_rate() const;
  /// Oscillator length sqrt(hbar / (m omega)), m.
  double oscillator_length() const;

  bool operator==(const PhysicalParams&) const = default;
};

/// Throws ParameterError unless m, omega, d, hbar > 0 and G >= 0.
/// G = 0 is the decoupled limit and is allowed.
void validate(const PhysicalParams& p);

/// Derived coupling ladder in oscillator units (hbar = m = omega = 1).
/// `omega` is carried so that times and rates can be restored to SI.
struct DimensionlessParams {
  double delta = 0.0;
  double omega = 1.0;
  double k_plus = 1.0;
  double k_minus = 1.0;
  double K_plus = 1.0;
  double K_minus = 1.0;
  double omega_plus = 1.0;
  double omega_minus = 1.0;
  double Omega_plus = 1.0;
  double Omega_minus = 1.0;

  /// omega_g = delta * omega, rad/s.
  double coupling_rate() const { return delta * omega; }

  bool operator==(const DimensionlessParams&) const = default;
};

/// Builds the ladder from a coupling ratio directly. Throws ParameterError
/// for delta outside [0, 1/2) or omega <= 0.
DimensionlessParams from_coupling(double delta, double omega = 1.0);

DimensionlessParams derive_dimensionless(const PhysicalParams& p);

/// Non-empty when delta exceeds kLargeCouplingWarning.
std::optional<std::string> coupling_warning(const DimensionlessParams& p);

/// T = pi / (2 omega_g) in seconds; +infinity when delta = 0.
double swap_time(const DimensionlessParams& p);

/// Named SI platforms. Currently "ca40": 40Ca+ ions, omega = 1e6 rad/s,
/// d = 1e-10 m.
std::optional<PhysicalParams> platform_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace gravswap
