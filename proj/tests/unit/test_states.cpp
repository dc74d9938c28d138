#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gravswap/states.hpp"
#include "oracles.hpp"

using namespace gravswap;

TEST_CASE("normal mode map is an involution") {
  for (const auto& [a, b] : oracle::random_pairs(20, 3.0, 1)) {
    const TwoModeCoherent s{a, b};
    const auto back = from_normal_modes(to_normal_modes(s));
    CHECK(std::abs(back.alpha - a) < 1e-14);
    CHECK(std::abs(back.beta - b) < 1e-14);
    const auto n = to_normal_modes(s);
    CHECK(std::abs(n.plus - (a + b) / std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(n.minus - (a - b) / std::numbers::sqrt2) < 1e-15);
    // the map is unitary on amplitudes
    CHECK(std::norm(n.plus) + std::norm(n.minus) == doctest::Approx(std::norm(a) + std::norm(b)));
  }
}

TEST_CASE("coherent moments round trip") {
  const ComplexAmplitude a(1.25, -0.5);
  const auto m = moments_of_coherent(a);
  CHECK(m.vxx == 0.5);
  CHECK(m.uncertainty_product() == doctest::Approx(0.25));
  const auto e = displacement_from_moments(m);
  CHECK(e.coherent);
  CHECK(std::abs(e.amplitude - a) < 1e-15);

  auto squeezed = m;
  squeezed.vxx = 0.25;
  squeezed.vpp = 1.0;
  const auto f = displacement_from_moments(squeezed);
  CHECK_FALSE(f.coherent);
  CHECK(f.width_deviation == doctest::Approx(1.0));
}

TEST_CASE("lab first moments") {
  const TwoModeCoherent s{{1.0, 2.0}, {-0.5, 0.25}};
  const auto lab = lab_first_moments(moments_of_coherent(s));
  const double r2 = std::numbers::sqrt2;
  CHECK(lab.x1 == doctest::Approx(r2 * 1.0));
  CHECK(lab.p1 == doctest::Approx(r2 * 2.0));
  CHECK(lab.x2 == doctest::Approx(-r2 * 0.5));
  CHECK(lab.p2 == doctest::Approx(r2 * 0.25));
}

TEST_CASE("coherent overlaps") {
  const ComplexAmplitude g(0.3, -1.1), mu(-0.7, 0.4);
  CHECK(coherent_overlap(g, mu) == doctest::Approx(std::exp(-std::norm(g - mu))));
  CHECK(std::norm(coherent_inner_product(g, mu)) == doctest::Approx(coherent_overlap(g, mu)));
  CHECK(coherent_overlap(g, g) == 1.0);
  // inner product against the Fock expansion
  const auto fg = oracle::fock(g, 60), fm = oracle::fock(mu, 60);
  const std::complex<double> ip = fg.dot(fm);  // conjugates the first argument
  CHECK(std::abs(coherent_inner_product(g, mu) - ip) < 1e-12);
}

TEST_CASE("gaussian overlap matches phase-space quadrature") {
  // tr(rho sigma) = 2 pi * integral W_rho W_sigma dx dp
  auto wigner = [](const ModeMoments& m, double x, double p) {
    const double det = m.vxx * m.vpp - m.vxp * m.vxp;
    const double dx = x - m.mean_x, dp = p - m.mean_p;
    const double q = (m.vpp * dx * dx - 2.0 * m.vxp * dx * dp + m.vxx * dp * dp) / det;
    return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
  };
  ModeMoments a{0.3, -0.2, 0.8, 0.4, 0.1};
  ModeMoments b{-0.4, 0.5, 0.5, 0.5, 0.0};
  const double h = 0.02;
  double sum = 0.0;
  for (double x = -10; x <= 10; x += h)
    for (double p = -10; p <= 10; p += h) sum += wigner(a, x, p) * wigner(b, x, p);
  CHECK(gaussian_overlap(a, b) == doctest::Approx(2.0 * std::numbers::pi * sum * h * h).epsilon(1e-8));
}

TEST_CASE("gaussian overlap of coherent states") {
  const TwoModeCoherent s{{1.0, 0.2}, {-0.3, 0.0}}, t{{0.9, 0.0}, {0.1, 0.5}};
  CHECK(gaussian_overlap(moments_of_coherent(s), moments_of_coherent(t)) ==
        doctest::Approx(coherent_overlap(s, t)).epsilon(1e-14));
}

TEST_CASE("records use full precision") {
  CHECK(to_record(ComplexAmplitude(0.1, -2.0)) == "0.10000000000000001 -2");
}
