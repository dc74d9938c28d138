#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gravswap/analytic.hpp"
#include "gravswap/states.hpp"

namespace gravswap {

/// Step sizes are given as fractions of the fastest normal-mode period
/// 2 pi / Omega_+ so that one configuration works for any coupling.
struct IntegratorConfig {
  double grid_dt_fraction = 5e-4;
  double rk_step_fraction = 1e-4;
  /// Bound on the step-doubling local error estimate of each RK4 step;
  /// zero disables the check.
  double rk_tolerance = 1e-10;
  /// Grid runs abort when |norm - 1| grows faster than this per unit
  /// (dimensionless) time.
  double norm_drift_rate_limit = 1e-8;
  /// Grid runs abort when the probability in the outer boundary strip
  /// exceeds this.
  double leakage_limit = 1e-12;
  /// Grid step ceiling, same units as grid_dt_fraction.
  double max_grid_dt_fraction = 1e-3;

  bool operator==(const IntegratorConfig&) const = default;
};

/// 2 pi / Omega_+ in seconds.
double fastest_period(const DimensionlessParams& p);

struct MomentSample {
  double t = 0.0;  // seconds
  PairMoments moments;
};

/// Classic fourth-order Runge-Kutta integration of the per-mode moment
/// equations, reporting the state at each of `sample_times` (ascending,
/// starting at or after 0). Each interval is split into equal steps no
/// longer than the configured RK step. For the semiclassical model the
/// mean-field term uses the integrator's own running mean.
/// Throws NumericalError on step underflow or when a step-doubling error
/// estimate exceeds cfg.rk_tolerance.
std::vector<MomentSample> integrate_moments(ModelKind model, const PairMoments& init,
                                            std::span<const double> sample_times, const IntegratorConfig& cfg,
                                            const DimensionlessParams& p);

/// Convenience overload: `samples` equally spaced outputs on [0, t_final].
std::vector<MomentSample> integrate_moments(ModelKind model, const PairMoments& init, double t_final,
                                            std::size_t samples, const IntegratorConfig& cfg,
                                            const DimensionlessParams& p);

/// n + 1 equally spaced points on [0, t_final] (n >= 1).
std::vector<double> uniform_times(double t_final, std::size_t n);

}  // namespace gravswap
