#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gravswap/analytic.hpp"
#include "gravswap/grid.hpp"
#include "gravswap/moment_ode.hpp"

namespace gravswap {

struct GridDiagnostics {
  std::size_t steps = 0;
  double dt = 0.0;                  // dimensionless step actually used (last segment)
  double max_step_norm_drift = 0.0; // largest |norm change| over one step
  double norm_drift = 0.0;          // |norm(t_end) - norm(0)|
  double max_boundary_mass = 0.0;   // position strip, at snapshot times
  double max_momentum_boundary_mass = 0.0;
};

/// Called with the evolved state at every requested snapshot time.
using SnapshotObserver = std::function<void(const GridWavefunction&)>;

/// Strang-split propagation (half kinetic, potential, half kinetic) of
/// `psi` under `model`, stopping at each of `snapshot_times` (seconds,
/// ascending, >= psi.time). Kinetic factors are applied in momentum space
/// (including the RWA p1 p2 coupling), potential factors in position space
/// (including the 2 lambda x1 x2 coupling of the full model). The
/// semiclassical mean-field potential uses the means measured after the
/// first half kinetic step.
///
/// The norm is never renormalised. Throws NumericalError when the norm
/// drifts faster than cfg.norm_drift_rate_limit per unit time or the
/// boundary strips hold more than cfg.leakage_limit.
GridDiagnostics split_step_evolve(GridWavefunction& psi, ModelKind model, std::span<const double> snapshot_times,
                                  const IntegratorConfig& cfg, const DimensionlessParams& p,
                                  const SnapshotObserver& observer = {});

struct GridRun {
  std::vector<GridWavefunction> snapshots;
  GridDiagnostics diagnostics;
};

/// Convenience form keeping `snapshots + 1` equally spaced states on
/// [psi.time, psi.time + t_final], the initial state included.
GridRun split_step_evolve(const GridWavefunction& psi, ModelKind model, double t_final, std::size_t snapshots,
                          const IntegratorConfig& cfg, const DimensionlessParams& p);

}  // namespace gravswap
