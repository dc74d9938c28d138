#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gravswap/analytic.hpp"
#include "gravswap/errors.hpp"
#include "oracles.hpp"

using namespace gravswap;

namespace {

oracle::Model to_oracle(ModelKind m) {
  switch (m) {
    case ModelKind::QgFull: return oracle::Model::Full;
    case ModelKind::QgRwa: return oracle::Model::Rwa;
    case ModelKind::Sceg: return oracle::Model::Sceg;
  }
  return oracle::Model::Free;
}

double max_abs(std::initializer_list<double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("closed-form moments match the lab-frame Heisenberg flow") {
  const auto pairs = oracle::random_pairs(6, 3.0, 11);
  for (double delta : {1e-3, 0.05, 0.2, 0.45}) {
    const auto p = from_coupling(delta);
    for (auto model : kAllModels) {
      for (const auto& [a, b] : pairs) {
        for (double tau : {0.0, 0.7, 13.0, 200.0}) {
          CAPTURE(delta);
          CAPTURE(tau);
          const auto got = propagate_moments(model, moments_of_coherent(TwoModeCoherent{a, b}), tau, p);
          const auto ref = oracle::evolve(to_oracle(model), delta, a, b, tau);
          const auto lab = lab_first_moments(got);
          const double tol = 1e-11 * (1.0 + tau);
          CHECK(max_abs({lab.x1 - ref.mean(0), lab.x2 - ref.mean(1), lab.p1 - ref.mean(2), lab.p2 - ref.mean(3)}) <
                tol);
          const auto cp = oracle::mode_cov(ref.cov, +1), cm = oracle::mode_cov(ref.cov, -1);
          CHECK(max_abs({got.plus.vxx - cp.vxx, got.plus.vpp - cp.vpp, got.plus.vxp - cp.vxp, got.minus.vxx - cm.vxx,
                         got.minus.vpp - cm.vpp, got.minus.vxp - cm.vxp}) < tol);
        }
      }
    }
  }
}

TEST_CASE("RWA lab form matches the ladder-operator flow") {
  for (double delta : {1e-3, 0.1, 0.3}) {
    const auto p = from_coupling(delta, 2.5);
    for (const auto& [a, b] : oracle::random_pairs(5, 3.0, 5)) {
      for (double t : {0.3, 4.0, 50.0}) {
        const auto got = propagate_rwa_lab({a, b}, t, p);
        const auto [ra, rb] = oracle::rwa_ladder(a, b, delta, p.omega * t);
        CHECK(std::abs(got.alpha - ra) < 1e-11);
        CHECK(std::abs(got.beta - rb) < 1e-11);
        // normal-mode phases give the same state
        const auto n = from_normal_modes(propagate_rwa_displacement(to_normal_modes({a, b}), t, p));
        CHECK(std::abs(n.alpha - got.alpha) < 1e-12);
        CHECK(std::abs(n.beta - got.beta) < 1e-12);
      }
    }
  }
}

TEST_CASE("RWA swaps the pair up to a common phase") {
  for (double delta : {1e-3, 1e-2, 1e-1}) {
    const auto p = from_coupling(delta, 1.0);
    const double T = swap_time(p);
    for (const auto& [a, b] : oracle::random_pairs(50, 3.0, 99)) {
      const auto out = phase_corrected(propagate_rwa_lab({a, b}, T, p), T, p);
      CHECK(1.0 - coherent_overlap(out, TwoModeCoherent{b, a}) <= 1e-12);
    }
  }
}

TEST_CASE("RWA moments keep coherent widths") {
  const auto p = from_coupling(0.3);
  const auto init = moments_of_coherent(TwoModeCoherent{{1.0, 0.5}, {0.0, -2.0}});
  for (double tau : {0.5, 10.0, 123.0}) {
    const auto m = propagate_moments(ModelKind::QgRwa, init, tau, p);
    CHECK(std::abs(m.plus.vxx - 0.5) < 1e-14);
    CHECK(std::abs(m.minus.vpp - 0.5) < 1e-14);
    CHECK(std::abs(m.plus.vxp) < 1e-14);
  }
}

TEST_CASE("full and semiclassical first moments coincide") {
  for (double delta : {0.01, 0.1}) {
    const auto p = from_coupling(delta);
    for (const auto& [a, b] : oracle::random_pairs(20, 3.0, 3)) {
      const auto init = moments_of_coherent(TwoModeCoherent{a, b});
      for (int k = 0; k <= 1000; ++k) {
        const double t = k * 0.05;
        const auto f = propagate_moments(ModelKind::QgFull, init, t, p);
        const auto s = propagate_moments(ModelKind::Sceg, init, t, p);
        REQUIRE(max_abs({f.plus.mean_x - s.plus.mean_x, f.plus.mean_p - s.plus.mean_p,
                         f.minus.mean_x - s.minus.mean_x, f.minus.mean_p - s.minus.mean_p}) <= 1e-12);
        REQUIRE(max_abs({s.plus.vxx - 0.5, s.plus.vpp - 0.5, s.minus.vxx - 0.5, s.minus.vpp - 0.5, s.plus.vxp,
                         s.minus.vxp}) <= 1e-12);
      }
    }
  }
}

TEST_CASE("full model squeezes at a quarter mode period") {
  for (double delta : {0.01, 0.05, 0.2}) {
    const auto p = from_coupling(delta);
    const double t = std::numbers::pi / (2.0 * p.Omega_plus);
    const auto m = propagate_moments(ModelKind::QgFull, moments_of_coherent(TwoModeCoherent{1.0, 1.0}), t, p);
    CHECK(std::abs(m.plus.vxx - 0.5 / (p.K_plus * p.K_plus)) <= 1e-12);
    CHECK(m.plus.uncertainty_product() == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("mode Hamiltonians") {
  const auto p = from_coupling(0.1);
  const auto rp = mode_hamiltonian(ModelKind::QgRwa, NormalMode::Plus, p);
  CHECK(rp.A == doctest::Approx(0.55));
  CHECK(rp.B == doctest::Approx(0.55));
  const auto fm = mode_hamiltonian(ModelKind::QgFull, NormalMode::Minus, p);
  CHECK(fm.A == 0.5);
  CHECK(fm.B == doctest::Approx(0.4));
  const auto sp = mode_hamiltonian(ModelKind::Sceg, NormalMode::Plus, p);
  CHECK(sp.B == 0.5);
  CHECK(sp.C == doctest::Approx(0.2));
  CHECK(mode_hamiltonian(ModelKind::Sceg, NormalMode::Minus, p).C == doctest::Approx(-0.2));
}

TEST_CASE("model names") {
  for (auto m : kAllModels) CHECK(parse_model(to_string(m)) == m);
  CHECK_FALSE(parse_model("QG_FULL"));
}

TEST_CASE("coherence condition") {
  CHECK(coherence_check({0.5, 0.5, 0.0}).preserves_coherence);
  for (double d : {0.01, 0.05, 0.1, 0.2}) {
    const auto p = from_coupling(d);
    for (auto mode : {NormalMode::Plus, NormalMode::Minus}) {
      const auto h = mode_hamiltonian(ModelKind::QgRwa, mode, p);
      CHECK(coherence_check(h).preserves_coherence);
      // mean-field terms are linear in x and never break coherence
      CHECK(coherence_check(mode_hamiltonian(ModelKind::Sceg, mode, p)).preserves_coherence);
    }
  }
  double last = 0.0;
  for (double d : {0.01, 0.05, 0.1, 0.2}) {
    const auto p = from_coupling(d);
    const auto c = coherence_check(mode_hamiltonian(ModelKind::QgFull, NormalMode::Plus, p));
    CHECK_FALSE(c.preserves_coherence);
    CHECK(std::abs(c.residual) > last);
    last = std::abs(c.residual);
  }
  CHECK_THROWS_AS(coherence_check({0.0, 0.5, 0.0}), ParameterError);
}

TEST_CASE("coherence residual matches the Fock-space double commutator") {
  const int n = 40;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Eigen::MatrixXcd ad = a.adjoint();
  const std::complex<double> I(0.0, 1.0);
  const Eigen::MatrixXcd x = (a + ad) / std::numbers::sqrt2;
  const Eigen::MatrixXcd pm = I * (ad - a) / std::numbers::sqrt2;
  for (double d : {0.0, 0.05, 0.2}) {
    const auto p = from_coupling(d);
    const auto h = mode_hamiltonian(ModelKind::QgFull, NormalMode::Plus, p);
    const Eigen::MatrixXcd H = h.A * pm * pm + h.B * x * x;
    auto comm = [](const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd { return u * v - v * u; };
    const Eigen::MatrixXcd dc = comm(a, comm(a, H));
    // [a, [a, c a+^2]] = 2c; away from the truncation edge dc is 2c times identity
    const std::complex<double> two_c = dc(3, 3);
    const auto chk = coherence_check(h);
    CHECK(std::abs(two_c.real() - 2.0 * chk.residual * (h.B + h.A)) < 1e-12);
    CHECK(std::abs(dc(5, 5) - two_c) < 1e-12);
    CHECK(std::abs(dc(2, 4)) < 1e-12);
  }
}

TEST_CASE("corrected displacement lab and normal forms agree") {
  const auto p = from_coupling(0.05);
  for (const auto& [a, b] : oracle::random_pairs(10, 3.0, 17)) {
    const auto n = to_normal_modes({a, b});
    for (double t : {0.0, 1.0, 7.3, 31.0}) {
      const auto cd = propagate_corrected_displacement(n, t, p);
      const auto lab = from_normal_modes(cd.normal);
      CHECK(std::abs(lab.alpha - cd.lab.alpha) < 1e-12);
      CHECK(std::abs(lab.beta - cd.lab.beta) < 1e-12);
    }
  }
  CHECK_THROWS_AS(propagate_corrected_displacement({1.0, 1.0}, 1.0, from_coupling(0.25)), ParameterError);
}

TEST_CASE("corrected displacement is first order in delta") {
  // Over a fixed dimensionless window the residual against the exact full
  // flow falls as delta^2.
  const std::complex<double> a(1.5, -0.5), b(-1.0, 0.8);
  auto residual = [&](double delta) {
    const auto p = from_coupling(delta);
    double worst = 0.0;
    for (double tau = 0.0; tau <= 3.0; tau += 0.01) {
      const auto cd = propagate_corrected_displacement(to_normal_modes({a, b}), tau, p);
      const auto [ea, eb] = oracle::amplitudes(oracle::evolve(oracle::Model::Full, delta, a, b, tau).mean);
      worst = std::max({worst, std::abs(cd.lab.alpha - ea), std::abs(cd.lab.beta - eb)});
    }
    return worst;
  };
  const double r1 = residual(0.02), r2 = residual(0.01);
  CHECK(r2 < 1e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  // the RWA alone is only first order
  const auto p = from_coupling(0.01);
  const auto rwa = propagate_rwa_lab({a, b}, 1.3, p);
  const auto [ea, eb] = oracle::amplitudes(oracle::evolve(oracle::Model::Full, 0.01, a, b, 1.3).mean);
  CHECK(std::abs(rwa.alpha - ea) > 10.0 * r2);
}

TEST_CASE("correction terms are delta A_t, delta B_t") {
  const auto p = from_coupling(0.1, 2.0);
  const NormalModeAmplitudes n{{1.0, 2.0}, {-0.5, 0.3}};
  const double t = 0.37;
  const auto cd = propagate_corrected_displacement(n, t, p);
  const auto rwa = propagate_rwa_lab(from_normal_modes(n), t, p);
  const std::complex<double> I(0.0, 1.0);
  const double sp = std::sin(p.omega_plus * t), sm = std::sin(p.omega_minus * t);
  const auto A = I * (std::conj(n.plus) * sp - std::conj(n.minus) * sm) / std::numbers::sqrt2;
  const auto B = I * (std::conj(n.plus) * sp + std::conj(n.minus) * sm) / std::numbers::sqrt2;
  CHECK(std::abs(cd.A_t - A) < 1e-15);
  CHECK(std::abs(cd.B_t - B) < 1e-15);
  CHECK(std::abs(rwa.alpha - 0.1 * A - cd.lab.alpha) < 1e-15);
  CHECK(std::abs(rwa.beta - 0.1 * B - cd.lab.beta) < 1e-15);
}

TEST_CASE("trajectory helper") {
  const auto p = from_coupling(0.05);
  const std::vector<double> times{0.0, 1.0, 2.0};
  const auto tr = corrected_trajectory({1.0, 0.0}, times, p);
  REQUIRE(tr.points.size() == 3);
  CHECK(tr.points[2].t == 2.0);
  CHECK(std::abs(tr.points[0].lab.alpha - std::complex<double>(1.0 / std::numbers::sqrt2)) < 1e-15);
}

TEST_CASE("moment right-hand side is the time derivative of the flow") {
  const QuadraticHamiltonian h{0.6, 0.4, 0.0};
  const ModeMoments m0{0.7, -0.2, 0.6, 0.45, 0.05};
  const double tau = 1.1, e = 1e-5;
  const auto m = evolve_mode(h, m0, tau);
  const auto mp = evolve_mode(h, m0, tau + e), mm = evolve_mode(h, m0, tau - e);
  const auto d = template_moment_rhs(h, m, m.mean_x);
  CHECK(d.mean_x == doctest::Approx((mp.mean_x - mm.mean_x) / (2 * e)).epsilon(1e-8));
  CHECK(d.mean_p == doctest::Approx((mp.mean_p - mm.mean_p) / (2 * e)).epsilon(1e-8));
  CHECK(d.vxx == doctest::Approx((mp.vxx - mm.vxx) / (2 * e)).epsilon(1e-8));
  CHECK(d.vpp == doctest::Approx((mp.vpp - mm.vpp) / (2 * e)).epsilon(1e-8));
  CHECK(d.vxp == doctest::Approx((mp.vxp - mm.vxp) / (2 * e)).epsilon(1e-8));
}

TEST_CASE("inverted and free stiffness") {
  for (double B : {-0.1, 0.0}) {
    const QuadraticHamiltonian h{0.5, B, 0.0};
    const ModeMoments m0{1.0, 0.5, 0.5, 0.5, 0.0};
    const double tau = 2.0;
    Eigen::Matrix2d gen;
    gen << 0.0, 2.0 * h.A * tau, -2.0 * h.B * tau, 0.0;
    const Eigen::Matrix2d S = gen.exp();
    const auto m = evolve_mode(h, m0, tau);
    CHECK(m.mean_x == doctest::Approx(S(0, 0) * 1.0 + S(0, 1) * 0.5));
    CHECK(m.mean_p == doctest::Approx(S(1, 0) * 1.0 + S(1, 1) * 0.5));
    const Eigen::Matrix2d cov = S * (0.5 * Eigen::Matrix2d::Identity()) * S.transpose();
    CHECK(m.vxx == doctest::Approx(cov(0, 0)));
    CHECK(m.vxp == doctest::Approx(cov(0, 1)));
  }
}
