#pragma once

#include <vector>

#include "gravswap/grid.hpp"

namespace gravswap {

struct SchmidtResult {
  double entropy = 0.0;          // von Neumann entropy of either reduced state, nats
  double purity = 1.0;           // tr rho_1^2
  std::vector<double> spectrum;  // Schmidt probabilities, descending, summing to 1
};

/// Entanglement between the two lab oscillators of a lab-frame grid state,
/// from the singular values of the amplitude matrix. Throws
/// std::invalid_argument for normal-frame grids.
SchmidtResult schmidt_entropy(const GridWavefunction& psi);

}  // namespace gravswap
