#pragma once

#include <complex>
#include <string>

namespace gravswap {

/// Coherent-state displacement alpha = re + i im. |alpha|^2 is the mean
/// excitation number.
using ComplexAmplitude = std::complex<double>;

/// Product of lab-frame coherent states |alpha>_1 (x) |beta>_2.
struct TwoModeCoherent {
  ComplexAmplitude alpha;
  ComplexAmplitude beta;
  bool operator==(const TwoModeCoherent&) const = default;
};

/// Normal-mode image (a, b) of a TwoModeCoherent: a lives on
/// x+ = (x1 + x2)/sqrt2, b on x- = (x1 - x2)/sqrt2.
struct NormalModeAmplitudes {
  ComplexAmplitude plus;
  ComplexAmplitude minus;
  bool operator==(const NormalModeAmplitudes&) const = default;
};

NormalModeAmplitudes to_normal_modes(const TwoModeCoherent& s);
TwoModeCoherent from_normal_modes(const NormalModeAmplitudes& n);

/// Gaussian first and second moments of one mode in oscillator units
/// (length sqrt(hbar/m omega), momentum sqrt(hbar m omega)). vxp is the
/// symmetrised covariance <xp + px>/2 - <x><p>.
struct ModeMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double vxx = 0.5;
  double vpp = 0.5;
  double vxp = 0.0;

  /// vxx vpp - vxp^2; at least 1/4 for any physical state.
  double uncertainty_product() const { return vxx * vpp - vxp * vxp; }
  bool operator==(const ModeMoments&) const = default;
};

/// Moments stored per normal mode; lab-frame quantities are derived.
struct PairMoments {
  ModeMoments plus;
  ModeMoments minus;
  bool operator==(const PairMoments&) const = default;
};

/// Variance of a coherent state in oscillator units.
inline constexpr double kCoherentVariance = 0.5;
inline constexpr double kDefaultCoherenceTolerance = 1e-6;

ModeMoments moments_of_coherent(ComplexAmplitude a);
PairMoments moments_of_coherent(const NormalModeAmplitudes& n);
PairMoments moments_of_coherent(const TwoModeCoherent& s);

struct DisplacementEstimate {
  ComplexAmplitude amplitude;
  /// False when the widths deviate from coherent widths beyond tolerance.
  bool coherent = true;
  /// max(|vxx/0.5 - 1|, |vpp/0.5 - 1|, |vxp|/0.5)
  double width_deviation = 0.0;
};

/// Reads alpha back from the first moments. The estimate is flagged
/// non-coherent when the second moments are not those of a coherent state.
DisplacementEstimate displacement_from_moments(const ModeMoments& m,
                                               double tolerance = kDefaultCoherenceTolerance);

/// |<gamma|mu>|^2 = exp(-|gamma - mu|^2).
double coherent_overlap(ComplexAmplitude gamma, ComplexAmplitude mu);

/// Two-mode product fidelity exp(-|d alpha|^2 - |d beta|^2).
double coherent_overlap(const TwoModeCoherent& s, const TwoModeCoherent& t);

/// tr(rho sigma) for two single-mode Gaussian states given by their moments.
/// Equals the fidelity when either state is pure.
double gaussian_overlap(const ModeMoments& a, const ModeMoments& b);
double gaussian_overlap(const PairMoments& a, const PairMoments& b);

struct LabFirstMoments {
  double x1 = 0.0, p1 = 0.0, x2 = 0.0, p2 = 0.0;
};
LabFirstMoments lab_first_moments(const PairMoments& m);

/// One branch c |mode1>_1 |mode2>_2 of a superposition of coherent products.
struct CoherentBranch {
  std::complex<double> weight;
  ComplexAmplitude mode1;
  ComplexAmplitude mode2;
};

/// <gamma|mu> including phase.
std::complex<double> coherent_inner_product(ComplexAmplitude gamma, ComplexAmplitude mu);

/// "re im" with 17 significant digits.
std::string to_record(ComplexAmplitude a);
/// "mean_x mean_p vxx vpp vxp" with 17 significant digits.
std::string to_record(const ModeMoments& m);

}  // namespace gravswap
