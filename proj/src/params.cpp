#include "gravswap/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gravswap/errors.hpp"

namespace gravswap {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double PhysicalParams::coupling_constant() const {
  return G * mass * mass / (separation * separation * separation);
}

double PhysicalParams::coupling_rate() const { return coupling_constant() / (mass * omega); }

double PhysicalParams::oscillator_length() const { return std::sqrt(hbar / (mass * omega)); }

void validate(const PhysicalParams& p) {
  require(positive_finite(p.mass), "mass must be positive and finite");
  require(positive_finite(p.omega), "omega must be positive and finite");
  require(positive_finite(p.separation), "separation must be positive and finite");
  require(std::isfinite(p.G) && p.G >= 0.0, "G must be non-negative and finite");
  require(positive_finite(p.hbar), "hbar must be positive and finite");
  const double rate = p.coupling_rate();
  require(std::isfinite(rate) && rate >= 0.0, "coupling rate omega_g is not finite");
}

DimensionlessParams from_coupling(double delta, double omega) {
  require(positive_finite(omega), "omega must be positive and finite");
  require(std::isfinite(delta) && delta >= 0.0, "coupling ratio delta must be non-negative");
  if (delta >= kMaxCoupling) {
    std::ostringstream os;
    os << "expansion regime violated: delta = " << delta
       << " >= 1/2 (requires separation much larger than the oscillation amplitude)";
    throw ParameterError(os.str());
  }
  DimensionlessParams d;
  d.delta = delta;
  d.omega = omega;
  d.k_plus = 1.0 + delta;
  d.k_minus = 1.0 - delta;
  d.K_plus = std::sqrt(1.0 + 2.0 * delta);
  d.K_minus = std::sqrt(1.0 - 2.0 * delta);
  d.omega_plus = omega * d.k_plus;
  d.omega_minus = omega * d.k_minus;
  d.Omega_plus = omega * d.K_plus;
  d.Omega_minus = omega * d.K_minus;
  return d;
}

DimensionlessParams derive_dimensionless(const PhysicalParams& p) {
  validate(p);
  return from_coupling(p.coupling_rate() / p.omega, p.omega);
}

std::optional<std::string> coupling_warning(const DimensionlessParams& p) {
  if (p.delta <= kLargeCouplingWarning) return std::nullopt;
  std::ostringstream os;
  os << "delta = " << p.delta << " exceeds " << kLargeCouplingWarning
     << "; first-order amplitude corrections are unreliable";
  return os.str();
}

double swap_time(const DimensionlessParams& p) {
  if (p.delta == 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (2.0 * p.delta * p.omega);
}

std::optional<PhysicalParams> platform_preset(std::string_view name) {
  if (name == "ca40") {
    PhysicalParams p;
    p.mass = 40.0 * constants::kAtomicMassUnit;
    p.omega = 1e6;
    p.separation = 1e-10;
    return p;
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"ca40"}; }

}  // namespace gravswap
