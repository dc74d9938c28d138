#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gravswap/branch_entropy.hpp"
#include "oracles.hpp"

using namespace gravswap;

TEST_CASE("product states carry no entropy") {
  const std::array<CoherentBranch, 1> one{CoherentBranch{1.0, {1.0, 0.5}, {-0.3, 0.0}}};
  const auto r = branch_entropy(one);
  CHECK(std::abs(r.entropy) < 1e-14);
  CHECK(r.purity == doctest::Approx(1.0));

  const auto cat = cat_branches({2.0, 0.0});
  CHECK(std::abs(branch_entropy(cat).entropy) < 1e-12);
}

TEST_CASE("cat normalisation includes the cross term") {
  const ComplexAmplitude a(0.4, 0.0);
  const auto cat = cat_branches(a);
  const double expected = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * 0.16)));
  CHECK(cat[0].weight.real() == doctest::Approx(expected));
  // norm from the Fock expansion
  const Eigen::VectorXcd v = cat[0].weight * (oracle::fock(a, 60) + oracle::fock(-a, 60));
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("well separated branches give one bit") {
  const std::vector<CoherentBranch> br{{1.0, {6.0, 0.0}, {0.0, 6.0}}, {1.0, {-6.0, 0.0}, {0.0, -6.0}}};
  const auto r = branch_entropy(br);
  CHECK(r.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(r.purity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("branch Gram entropy agrees with the Fock-space SVD") {
  const auto p = from_coupling(0.05);
  for (double wt : {0.1, 0.3, std::numbers::pi / 4, 1.2}) {
    const double t = wt / p.coupling_rate();
    const auto br = rwa_cat_branches({2.0, 0.0}, t, p);
    std::vector<oracle::Branch> ob;
    for (const auto& b : br) ob.push_back({b.weight, b.mode1, b.mode2});
    const auto r = branch_entropy(br);
    CHECK(r.entropy == doctest::Approx(oracle::fock_entropy(ob)).epsilon(1e-10));
    double sum = 0.0;
    for (double s : r.spectrum) sum += s;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.spectrum.front() >= r.spectrum.back());
  }
}

TEST_CASE("three unequal branches") {
  const std::vector<CoherentBranch> br{{{0.5, 0.1}, {1.0, 0.0}, {0.0, 0.3}},
                                       {{-0.2, 0.4}, {-0.5, 1.0}, {1.0, -1.0}},
                                       {{0.3, 0.0}, {0.0, -1.5}, {-0.7, 0.2}}};
  std::vector<oracle::Branch> ob;
  for (const auto& b : br) ob.push_back({b.weight, b.mode1, b.mode2});
  CHECK(branch_entropy(br).entropy == doctest::Approx(oracle::fock_entropy(ob)).epsilon(1e-10));
}

TEST_CASE("RWA cat entropy at the quarter swap exceeds half a nat") {
  const auto p = from_coupling(0.05);
  const double t = std::numbers::pi / 4 / p.coupling_rate();
  const auto br = rwa_cat_branches({2.0, 0.0}, t, p);
  CHECK(branch_entropy(br).entropy > 0.5);
  // entropy does not depend on the fast carrier phase
  std::vector<oracle::Branch> ob;
  for (const auto& b : br) ob.push_back({b.weight, b.mode1, b.mode2});
  const auto direct = oracle::rwa_cat({2.0, 0.0}, 0.05, p.omega * t);
  std::vector<oracle::Branch> dir(direct.begin(), direct.end());
  CHECK(oracle::fock_entropy(dir) == doctest::Approx(oracle::fock_entropy(ob)).epsilon(1e-10));
}
