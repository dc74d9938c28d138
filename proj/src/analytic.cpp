#include "gravswap/analytic.hpp"

#include <cmath>
#include <numbers>

#include "gravswap/errors.hpp"

namespace gravswap {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

/// Flow of x' = 2A p, p' = -stiffness x over tau, as a 2x2 matrix.
struct LinearFlow {
  double xx, xp, px, pp;
};

LinearFlow harmonic_flow(double A, double stiffness, double tau) {
  const double kappa = 2.0 * A * stiffness;
  if (kappa > 0.0) {
    const double nu = std::sqrt(kappa);
    const double c = std::cos(nu * tau);
    const double s = std::sin(nu * tau);
    return {c, 2.0 * A / nu * s, -nu / (2.0 * A) * s, c};
  }
  if (kappa < 0.0) {
    const double mu = std::sqrt(-kappa);
    const double c = std::cosh(mu * tau);
    const double s = std::sinh(mu * tau);
    return {c, 2.0 * A / mu * s, mu / (2.0 * A) * s, c};
  }
  return {1.0, 2.0 * A * tau, 0.0, 1.0};
}

}  // namespace

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::QgFull: return "qg_full";
    case ModelKind::QgRwa: return "qg_rwa";
    case ModelKind::Sceg: return "sceg";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model(std::string_view name) {
  for (auto m : kAllModels)
    if (to_string(m) == name) return m;
  return std::nullopt;
}

QuadraticHamiltonian mode_hamiltonian(ModelKind model, NormalMode mode, const DimensionlessParams& p) {
  const double sign = mode == NormalMode::Plus ? 1.0 : -1.0;
  switch (model) {
    case ModelKind::QgRwa: {
      const double k = mode == NormalMode::Plus ? p.k_plus : p.k_minus;
      return {0.5 * k, 0.5 * k, 0.0};
    }
    case ModelKind::QgFull:
      return {0.5, 0.5 * (1.0 + sign * 2.0 * p.delta), 0.0};
    case ModelKind::Sceg:
      return {0.5, 0.5, sign * 2.0 * p.delta};
  }
  return {};
}

ModeMoments evolve_mode(const QuadraticHamiltonian& h, const ModeMoments& init, double tau) {
  ModeMoments out;
  const LinearFlow first = harmonic_flow(h.A, 2.0 * h.B + h.C, tau);
  out.mean_x = first.xx * init.mean_x + first.xp * init.mean_p;
  out.mean_p = first.px * init.mean_x + first.pp * init.mean_p;

  // Sigma(t) = M Sigma(0) M^T
  const LinearFlow m = harmonic_flow(h.A, 2.0 * h.B, tau);
  const double r0x = m.xx * init.vxx + m.xp * init.vxp;
  const double r0p = m.xx * init.vxp + m.xp * init.vpp;
  const double r1x = m.px * init.vxx + m.pp * init.vxp;
  const double r1p = m.px * init.vxp + m.pp * init.vpp;
  out.vxx = r0x * m.xx + r0p * m.xp;
  out.vxp = r0x * m.px + r0p * m.pp;
  out.vpp = r1x * m.px + r1p * m.pp;
  return out;
}

PairMoments propagate_moments(ModelKind model, const PairMoments& init, double t,
                              const DimensionlessParams& p) {
  const double tau = p.omega * t;
  return {evolve_mode(mode_hamiltonian(model, NormalMode::Plus, p), init.plus, tau),
          evolve_mode(mode_hamiltonian(model, NormalMode::Minus, p), init.minus, tau)};
}

NormalModeAmplitudes propagate_rwa_displacement(const NormalModeAmplitudes& n, double t,
                                                const DimensionlessParams& p) {
  return {n.plus * std::exp(-kI * (p.omega_plus * t)), n.minus * std::exp(-kI * (p.omega_minus * t))};
}

TwoModeCoherent propagate_rwa_lab(const TwoModeCoherent& s, double t, const DimensionlessParams& p) {
  const std::complex<double> carrier = std::exp(-kI * (p.omega * t));
  const double c = std::cos(p.coupling_rate() * t);
  const double sn = std::sin(p.coupling_rate() * t);
  return {carrier * (s.alpha * c - kI * s.beta * sn), carrier * (s.beta * c - kI * s.alpha * sn)};
}

ComplexAmplitude swap_phase(double t, const DimensionlessParams& p) { return kI * std::exp(kI * (p.omega * t)); }

TwoModeCoherent phase_corrected(const TwoModeCoherent& s, double t, const DimensionlessParams& p) {
  const ComplexAmplitude phase = swap_phase(t, p);
  return {s.alpha * phase, s.beta * phase};
}

CorrectedDisplacement propagate_corrected_displacement(const NormalModeAmplitudes& n, double t,
                                                       const DimensionlessParams& p) {
  if (p.delta > kLargeCouplingWarning)
    throw ParameterError("first-order displacement corrections require delta <= 0.2");
  const double s_plus = std::sin(p.omega_plus * t);
  const double s_minus = std::sin(p.omega_minus * t);
  const ComplexAmplitude a_conj = std::conj(n.plus);
  const ComplexAmplitude b_conj = std::conj(n.minus);

  CorrectedDisplacement out;
  out.t = t;
  const NormalModeAmplitudes rwa = propagate_rwa_displacement(n, t, p);
  out.normal.plus = rwa.plus - kI * p.delta * a_conj * s_plus;
  out.normal.minus = rwa.minus + kI * p.delta * b_conj * s_minus;
  out.A_t = kI * (a_conj * s_plus - b_conj * s_minus) * kInvSqrt2;
  out.B_t = kI * (a_conj * s_plus + b_conj * s_minus) * kInvSqrt2;
  const TwoModeCoherent lab = propagate_rwa_lab(from_normal_modes(n), t, p);
  out.lab = {lab.alpha - p.delta * out.A_t, lab.beta - p.delta * out.B_t};
  return out;
}

DisplacementTrajectory corrected_trajectory(const NormalModeAmplitudes& n, std::span<const double> times,
                                            const DimensionlessParams& p) {
  DisplacementTrajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.points.reserve(times.size());
  for (double t : times) traj.points.push_back(propagate_corrected_displacement(n, t, p));
  return traj;
}

CoherenceCheck coherence_check(const QuadraticHamiltonian& h, double reference_frequency) {
  if (!(h.A > 0.0)) throw ParameterError("coherence_check: kinetic coefficient A must be positive");
  if (!(reference_frequency > 0.0)) throw ParameterError("coherence_check: reference frequency must be positive");
  // x = (a + a+)/sqrt(2 w), p = i sqrt(w/2)(a+ - a)
  const double w = reference_frequency;
  const double pair_coefficient = h.B / (2.0 * w) - h.A * w / 2.0;
  const double number_coefficient = h.B / w + h.A * w;
  CoherenceCheck out;
  out.residual = pair_coefficient / number_coefficient;
  out.preserves_coherence = std::abs(out.residual) <= kCoherenceThreshold;
  return out;
}

ModeMoments template_moment_rhs(const QuadraticHamiltonian& h, const ModeMoments& m, double mean_field_x) {
  ModeMoments d;
  d.mean_x = 2.0 * h.A * m.mean_p;
  d.mean_p = -2.0 * h.B * m.mean_x - h.C * mean_field_x;
  d.vxx = 4.0 * h.A * m.vxp;
  d.vpp = -4.0 * h.B * m.vxp;
  d.vxp = 2.0 * h.A * m.vpp - 2.0 * h.B * m.vxx;
  return d;
}

}  // namespace gravswap
