#include "gravswap/branch_entropy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gravswap/analytic.hpp"

namespace gravswap {

BranchEntropy branch_entropy(std::span<const CoherentBranch> branches) {
  const auto n = static_cast<Eigen::Index>(branches.size());
  Eigen::MatrixXcd gram1(n, n), gram2(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      gram1(k, l) = coherent_inner_product(branches[k].mode1, branches[l].mode1);
      gram2(k, l) = coherent_inner_product(branches[k].mode2, branches[l].mode2);
    }
  }
  Eigen::VectorXcd w(n);
  for (Eigen::Index k = 0; k < n; ++k) w(k) = branches[k].weight;

  // <psi|psi> = sum_kl w_k* w_l <A_k|A_l> <B_k|B_l>
  const double norm = (w.adjoint() * gram1.cwiseProduct(gram2) * w)(0, 0).real();

  // rho_1 = sum_kl |A_k> M_kl <A_l|, M_kl = w_k w_l* <B_l|B_k> / norm.
  // Its non-zero spectrum equals that of M G with G_lk = <A_l|A_k>.
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) m(k, l) = w(k) * std::conj(w(l)) * gram2(l, k) / norm;
  const Eigen::MatrixXcd reduced = m * gram1;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(reduced, false);
  BranchEntropy out;
  out.entropy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = std::max(0.0, solver.eigenvalues()(i).real());
    out.spectrum.push_back(lam);
    if (lam > 0.0) out.entropy -= lam * std::log(lam);
  }
  out.purity = (reduced * reduced).trace().real();
  std::sort(out.spectrum.begin(), out.spectrum.end(), std::greater<>());
  return out;
}

std::array<CoherentBranch, 2> cat_branches(ComplexAmplitude alpha) {
  const double norm = std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha))));
  return {CoherentBranch{1.0 / norm, alpha, 0.0}, CoherentBranch{1.0 / norm, -alpha, 0.0}};
}

std::array<CoherentBranch, 2> rwa_cat_branches(ComplexAmplitude alpha, double t, const DimensionlessParams& p) {
  auto branches = cat_branches(alpha);
  for (auto& b : branches) {
    const TwoModeCoherent evolved = propagate_rwa_lab({b.mode1, b.mode2}, t, p);
    b.mode1 = evolved.alpha;
    b.mode2 = evolved.beta;
  }
  return branches;
}

}  // namespace gravswap
