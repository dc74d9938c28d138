#pragma once

#include <cstdint>
#include <vector>

#include "gravswap/config.hpp"
#include "gravswap/report.hpp"

namespace gravswap {

/// Coherent pair swap at T = pi / (2 omega_g): raw and phase-corrected
/// fidelities per model from the closed forms, the first-order corrected
/// displacement and the optional ODE / grid oracles, plus the
/// model-agreement matrix of first-moment trajectories.
ExperimentReport run_swap(const ExperimentConfig& cfg);

/// Deviation between the RWA swap evolution and its first-order
/// corrected form over a (delta, |alpha|) sweep, with the oracle stack on
/// the configured reference point.
ExperimentReport run_rwa_validity(const ExperimentConfig& cfg);

/// Cat (x) vacuum on the grid: entanglement entropy for the quantum
/// models against the branch-overlap oracle, first moments and purity for
/// the semiclassical model.
ExperimentReport run_cat_state(const ExperimentConfig& cfg);

/// Coupling ladder and swap time for each configured platform.
ExperimentReport run_feasibility(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Initial pairs used by the swap experiment: the configured pair first,
/// then cfg.random_pairs pairs drawn from the seed with each amplitude
/// uniform in the disk |z| <= cfg.amplitude_bound.
std::vector<TwoModeCoherent> swap_initial_pairs(const ExperimentConfig& cfg);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw
/// (platform independent, unlike std::uniform_real_distribution).
double unit_uniform(std::uint64_t bits);

}  // namespace gravswap
