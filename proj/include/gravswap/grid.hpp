#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "gravswap/states.hpp"

namespace gravswap {

/// Coordinates a grid is laid out in: lab (x1, x2) or normal modes (x+, x-).
enum class Frame { Lab, Normal };

std::string_view to_string(Frame f);

/// Square grid of `points` samples per axis on [-L, L) in oscillator
/// lengths, x_j = -L + j dx with dx = 2L / points. The momentum grid is the
/// matching DFT grid, k_max = pi / dx.
struct GridSpec {
  int points = 256;
  double half_extent = 8.0;

  double spacing() const { return 2.0 * half_extent / points; }
  double coordinate(int i) const { return -half_extent + i * spacing(); }
  /// Wavenumber for FFT index i (standard FFT ordering).
  double wavenumber(int i) const;
  double max_wavenumber() const;

  /// Default sizing for a state of total displacement `displacement`
  /// (sqrt(|alpha|^2 + |beta|^2)): L = 8 + 4 displacement.
  static GridSpec for_displacement(double displacement, int points = 256);

  /// Smallest half extent satisfying the sizing rule below.
  static double required_half_extent(double displacement);

  /// Throws GridSizingError unless: points is a power of two >= 64;
  /// sqrt2 displacement + 5 ground-state widths <= 0.8 L; at least 8 samples
  /// span +-2 ground-state widths; and the momentum grid covers the same
  /// extent in momentum.
  void validate(double displacement) const;

  bool operator==(const GridSpec&) const = default;
};

/// Two-coordinate wavefunction sampled on a GridSpec, row-major with the
/// first coordinate (x1 or x+) as the row index.
struct GridWavefunction {
  GridSpec spec;
  Frame frame = Frame::Lab;
  double time = 0.0;  // seconds
  std::vector<std::complex<double>> amplitudes;

  std::complex<double>& at(int i1, int i2) { return amplitudes[index(i1, i2)]; }
  const std::complex<double>& at(int i1, int i2) const { return amplitudes[index(i1, i2)]; }
  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * static_cast<std::size_t>(spec.points) + static_cast<std::size_t>(i2);
  }
};

struct CoherentProduct {
  TwoModeCoherent state;
};

/// (|alpha> + |-alpha>)/N (x) |0>.
struct CatState {
  ComplexAmplitude alpha;
};

/// Arbitrary superposition of lab-frame coherent products; normalised on
/// construction.
struct BranchSuperposition {
  std::vector<CoherentBranch> branches;
};

using InitialState = std::variant<CoherentProduct, CatState, BranchSuperposition>;

/// Largest lab displacement sqrt(|alpha|^2 + |beta|^2) over the branches.
double max_displacement(const InitialState& s);

/// Samples the analytic wavefunction of `state` on the grid in the
/// requested frame. Throws GridSizingError if the grid is too small.
GridWavefunction build_initial_grid(const InitialState& state, const GridSpec& spec, Frame frame = Frame::Lab);

/// sum |psi|^2 dx^2
double grid_norm(const GridWavefunction& psi);

/// Probability in the strip |x| > fraction * L on either axis.
double boundary_mass(const GridWavefunction& psi, double fraction = 0.9);

/// Probability in the strip |k| > fraction * k_max on either axis.
double momentum_boundary_mass(const GridWavefunction& psi, double fraction = 0.9);

/// Normal-mode moments by quadrature; momenta via spectral differentiation.
/// Lab-frame grids are rotated analytically into x+, x-.
PairMoments moments_from_grid(const GridWavefunction& psi);

/// sum conj(psi) phi dx^2. Throws std::invalid_argument for mismatched grids.
std::complex<double> grid_overlap(const GridWavefunction& psi, const GridWavefunction& phi);

}  // namespace gravswap
