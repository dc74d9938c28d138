#pragma once

#include <array>
#include <span>
#include <vector>

#include "gravswap/params.hpp"
#include "gravswap/states.hpp"

namespace gravswap {

struct BranchEntropy {
  double entropy = 0.0;  // nats
  double purity = 1.0;   // tr rho_1^2
  std::vector<double> spectrum;  // reduced-state eigenvalues, descending
};

/// Entanglement of sum_k w_k |A_k>_1 |B_k>_2 for coherent A_k, B_k, computed
/// from the branch Gram matrices alone. The state is normalised internally.
BranchEntropy branch_entropy(std::span<const CoherentBranch> branches);

/// Cat state (|alpha> + |-alpha>)/N (x) |0> as two branches with N
/// including the e^{-2|alpha|^2} cross term.
std::array<CoherentBranch, 2> cat_branches(ComplexAmplitude alpha);

/// The same cat state after RWA evolution for time t: each branch follows
/// the linear coherent-state map, giving
/// |u>|v> + |-u>|-v>, u = alpha_t cos w_g t, v = -i alpha_t sin w_g t.
std::array<CoherentBranch, 2> rwa_cat_branches(ComplexAmplitude alpha, double t, const DimensionlessParams& p);

}  // namespace gravswap
