#include "gravswap/experiments.hpp"

#include <numbers>
#include <random>

namespace gravswap {

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<TwoModeCoherent> swap_initial_pairs(const ExperimentConfig& cfg) {
  std::vector<TwoModeCoherent> pairs{cfg.state};
  std::mt19937_64 rng(cfg.seed);
  auto draw = [&] {
    const double r = cfg.amplitude_bound * std::sqrt(unit_uniform(rng()));
    const double phi = 2.0 * std::numbers::pi * unit_uniform(rng());
    return std::polar(r, phi);
  };
  for (std::size_t i = 0; i < cfg.random_pairs; ++i) {
    const ComplexAmplitude alpha = draw();
    const ComplexAmplitude beta = draw();
    pairs.push_back({alpha, beta});
  }
  return pairs;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Swap: return run_swap(cfg);
    case ExperimentKind::RwaValidity: return run_rwa_validity(cfg);
    case ExperimentKind::CatState: return run_cat_state(cfg);
    case ExperimentKind::Feasibility: return run_feasibility(cfg);
  }
  return {};
}

}  // namespace gravswap
