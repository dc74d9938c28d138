#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gravswap/params.hpp"
#include "gravswap/states.hpp"

namespace gravswap {

/// The three two-oscillator models: full quadratic quantum gravity, its
/// rotating-wave approximation, and semiclassical (Schrodinger-Newton)
/// gravity with the mean-field pair potential.
enum class ModelKind { QgFull, QgRwa, Sceg };

inline constexpr std::array kAllModels{ModelKind::QgFull, ModelKind::QgRwa, ModelKind::Sceg};

std::string_view to_string(ModelKind m);
std::optional<ModelKind> parse_model(std::string_view name);

enum class NormalMode { Plus, Minus };

/// H = A p^2 + B x^2 + C <x> x for one normal mode, in oscillator units
/// (hbar = m = 1, frequencies relative to the trap frequency).
struct QuadraticHamiltonian {
  double A = 0.5;
  double B = 0.5;
  double C = 0.0;
};

QuadraticHamiltonian mode_hamiltonian(ModelKind model, NormalMode mode, const DimensionlessParams& p);

/// Closed-form solution of the moment equations of `h` after a
/// dimensionless time tau = omega t. The mean-field term is self-consistent:
/// the first moments see an effective stiffness 2B + C while the second
/// moments see 2B only.
ModeMoments evolve_mode(const QuadraticHamiltonian& h, const ModeMoments& init, double tau);

/// Moments at time t (seconds) for the given model.
PairMoments propagate_moments(ModelKind model, const PairMoments& init, double t,
                              const DimensionlessParams& p);

/// a(t) = a exp(-i omega_+ t), b(t) = b exp(-i omega_- t).
NormalModeAmplitudes propagate_rwa_displacement(const NormalModeAmplitudes& n, double t,
                                                const DimensionlessParams& p);

/// Lab-frame form of the same evolution:
/// alpha(t) = e^{-i omega t}(alpha cos omega_g t - i beta sin omega_g t), and 1 <-> 2.
TwoModeCoherent propagate_rwa_lab(const TwoModeCoherent& s, double t, const DimensionlessParams& p);

/// Phase i e^{i omega t} that maps the RWA output at the swap time onto (beta, alpha).
ComplexAmplitude swap_phase(double t, const DimensionlessParams& p);

/// Multiplies both modes by swap_phase(t).
TwoModeCoherent phase_corrected(const TwoModeCoherent& s, double t, const DimensionlessParams& p);

/// First-order-in-delta displacement for the full and semiclassical models.
struct CorrectedDisplacement {
  double t = 0.0;
  NormalModeAmplitudes normal;  // a(t), b(t) including the delta terms
  TwoModeCoherent lab;          // rwa_lab - delta (A_t, B_t)
  ComplexAmplitude A_t;         // i (a* sin w+t - b* sin w-t) / sqrt2
  ComplexAmplitude B_t;         // i (a* sin w+t + b* sin w-t) / sqrt2
};

/// a(t) = a e^{-i w+ t} - i delta a* sin w+ t, b(t) = b e^{-i w- t} + i delta b* sin w- t.
/// Throws ParameterError for delta > kLargeCouplingWarning.
CorrectedDisplacement propagate_corrected_displacement(const NormalModeAmplitudes& n, double t,
                                                       const DimensionlessParams& p);

struct DisplacementTrajectory {
  std::vector<double> times;
  std::vector<CorrectedDisplacement> points;
};

DisplacementTrajectory corrected_trajectory(const NormalModeAmplitudes& n, std::span<const double> times,
                                            const DimensionlessParams& p);

struct CoherenceCheck {
  bool preserves_coherence = false;
  /// Coefficient of a^dagger^2 relative to that of a^dagger a.
  double residual = 0.0;
};

inline constexpr double kCoherenceThreshold = 1e-12;

/// Whether h maps coherent states of an oscillator of frequency
/// `reference_frequency` (in trap units) onto coherent states. For a
/// quadratic h the double commutator [a,[a,H]] is proportional to the
/// a^dagger^2 coefficient, which is what is returned. Linear terms never
/// contribute. Throws ParameterError for A <= 0.
CoherenceCheck coherence_check(const QuadraticHamiltonian& h, double reference_frequency = 1.0);

/// Right-hand side of the moment equations of h. `mean_field_x` is the <x>
/// entering the C term; pass the mode's own current mean for the
/// self-consistent semiclassical dynamics.
ModeMoments template_moment_rhs(const QuadraticHamiltonian& h, const ModeMoments& m, double mean_field_x);

}  // namespace gravswap
