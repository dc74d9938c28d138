#include "gravswap/moment_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gravswap/errors.hpp"

namespace gravswap {

namespace {

using State = std::array<double, 5>;

State pack(const ModeMoments& m) { return {m.mean_x, m.mean_p, m.vxx, m.vpp, m.vxp}; }
ModeMoments unpack(const State& s) { return {s[0], s[1], s[2], s[3], s[4]}; }

State rhs(const QuadraticHamiltonian& h, const State& s) {
  const ModeMoments m = unpack(s);
  return pack(template_moment_rhs(h, m, m.mean_x));
}

State axpy(const State& y, double a, const State& k) {
  State out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

State rk4_step(const QuadraticHamiltonian& h, const State& y, double dt) {
  const State k1 = rhs(h, y);
  const State k2 = rhs(h, axpy(y, 0.5 * dt, k1));
  const State k3 = rhs(h, axpy(y, 0.5 * dt, k2));
  const State k4 = rhs(h, axpy(y, dt, k3));
  State out;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

double max_abs_diff(const State& a, const State& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

double fastest_period(const DimensionlessParams& p) { return 2.0 * std::numbers::pi / p.Omega_plus; }

std::vector<double> uniform_times(double t_final, std::size_t n) {
  n = std::max<std::size_t>(n, 1);
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = t_final * static_cast<double>(i) / static_cast<double>(n);
  return t;
}

std::vector<MomentSample> integrate_moments(ModelKind model, const PairMoments& init,
                                            std::span<const double> sample_times, const IntegratorConfig& cfg,
                                            const DimensionlessParams& p) {
  // Work in tau = omega t; the right-hand side is in trap units.
  const double max_step = cfg.rk_step_fraction * 2.0 * std::numbers::pi / p.K_plus;
  if (!(max_step > 0.0) || !std::isfinite(max_step)) throw NumericalError("integrate_moments: invalid RK step");

  const std::array<QuadraticHamiltonian, 2> h{mode_hamiltonian(model, NormalMode::Plus, p),
                                              mode_hamiltonian(model, NormalMode::Minus, p)};
  std::array<State, 2> y{pack(init.plus), pack(init.minus)};

  std::vector<MomentSample> out;
  out.reserve(sample_times.size());
  double tau = 0.0;
  for (double t : sample_times) {
    const double target = p.omega * t;
    const double span = target - tau;
    if (span < 0.0) throw NumericalError("integrate_moments: sample times must be ascending and non-negative");
    // Spans at rounding level come from merged sample grids; absorb them.
    if (span > 1e-13 * std::max(1.0, std::abs(target))) {
      const double steps_real = std::ceil(span / max_step);
      if (steps_real > 1e9) throw NumericalError("integrate_moments: step-size underflow");
      const auto steps = static_cast<long>(steps_real);
      const double dt = span / static_cast<double>(steps);
      for (long s = 0; s < steps; ++s) {
        for (std::size_t mode = 0; mode < 2; ++mode) {
          const State next = rk4_step(h[mode], y[mode], dt);
          if (cfg.rk_tolerance > 0.0) {
            const State half = rk4_step(h[mode], rk4_step(h[mode], y[mode], 0.5 * dt), 0.5 * dt);
            const double estimate = max_abs_diff(next, half) / 15.0;
            if (estimate > cfg.rk_tolerance) {
              std::ostringstream os;
              os << "integrate_moments: local error estimate " << estimate << " exceeds tolerance "
                 << cfg.rk_tolerance << " at tau = " << tau;
              throw NumericalError(os.str());
            }
          }
          y[mode] = next;
        }
        tau += dt;
      }
      tau = target;
    }
    out.push_back({t, {unpack(y[0]), unpack(y[1])}});
  }
  return out;
}

std::vector<MomentSample> integrate_moments(ModelKind model, const PairMoments& init, double t_final,
                                            std::size_t samples, const IntegratorConfig& cfg,
                                            const DimensionlessParams& p) {
  const auto times = uniform_times(t_final, samples);
  return integrate_moments(model, init, times, cfg, p);
}

}  // namespace gravswap
