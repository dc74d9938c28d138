#include "gravswap/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gravswap/format.hpp"

namespace gravswap {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

NormalModeAmplitudes to_normal_modes(const TwoModeCoherent& s) {
  return {(s.alpha + s.beta) * kInvSqrt2, (s.alpha - s.beta) * kInvSqrt2};
}

TwoModeCoherent from_normal_modes(const NormalModeAmplitudes& n) {
  return {(n.plus + n.minus) * kInvSqrt2, (n.plus - n.minus) * kInvSqrt2};
}

ModeMoments moments_of_coherent(ComplexAmplitude a) {
  ModeMoments m;
  m.mean_x = std::numbers::sqrt2 * a.real();
  m.mean_p = std::numbers::sqrt2 * a.imag();
  m.vxx = kCoherentVariance;
  m.vpp = kCoherentVariance;
  m.vxp = 0.0;
  return m;
}

PairMoments moments_of_coherent(const NormalModeAmplitudes& n) {
  return {moments_of_coherent(n.plus), moments_of_coherent(n.minus)};
}

PairMoments moments_of_coherent(const TwoModeCoherent& s) {
  return moments_of_coherent(to_normal_modes(s));
}

DisplacementEstimate displacement_from_moments(const ModeMoments& m, double tolerance) {
  DisplacementEstimate e;
  e.amplitude = {m.mean_x / std::numbers::sqrt2, m.mean_p / std::numbers::sqrt2};
  e.width_deviation = std::max({std::abs(m.vxx / kCoherentVariance - 1.0),
                                std::abs(m.vpp / kCoherentVariance - 1.0),
                                std::abs(m.vxp) / kCoherentVariance});
  e.coherent = e.width_deviation <= tolerance;
  return e;
}

double coherent_overlap(ComplexAmplitude gamma, ComplexAmplitude mu) {
  return std::exp(-std::norm(gamma - mu));
}

double coherent_overlap(const TwoModeCoherent& s, const TwoModeCoherent& t) {
  return std::exp(-std::norm(s.alpha - t.alpha) - std::norm(s.beta - t.beta));
}

double gaussian_overlap(const ModeMoments& a, const ModeMoments& b) {
  const double sxx = a.vxx + b.vxx;
  const double spp = a.vpp + b.vpp;
  const double sxp = a.vxp + b.vxp;
  const double det = sxx * spp - sxp * sxp;
  const double dx = a.mean_x - b.mean_x;
  const double dp = a.mean_p - b.mean_p;
  // Delta^T S^-1 Delta with S^-1 = [[spp, -sxp], [-sxp, sxx]] / det
  const double quad = (spp * dx * dx - 2.0 * sxp * dx * dp + sxx * dp * dp) / det;
  return std::exp(-0.5 * quad) / std::sqrt(det);
}

double gaussian_overlap(const PairMoments& a, const PairMoments& b) {
  return gaussian_overlap(a.plus, b.plus) * gaussian_overlap(a.minus, b.minus);
}

LabFirstMoments lab_first_moments(const PairMoments& m) {
  return {(m.plus.mean_x + m.minus.mean_x) * kInvSqrt2, (m.plus.mean_p + m.minus.mean_p) * kInvSqrt2,
          (m.plus.mean_x - m.minus.mean_x) * kInvSqrt2, (m.plus.mean_p - m.minus.mean_p) * kInvSqrt2};
}

std::complex<double> coherent_inner_product(ComplexAmplitude gamma, ComplexAmplitude mu) {
  return std::exp(-0.5 * std::norm(gamma) - 0.5 * std::norm(mu) + std::conj(gamma) * mu);
}

std::string to_record(ComplexAmplitude a) { return format_double(a.real()) + " " + format_double(a.imag()); }

std::string to_record(const ModeMoments& m) {
  return format_double(m.mean_x) + " " + format_double(m.mean_p) + " " + format_double(m.vxx) + " " +
         format_double(m.vpp) + " " + format_double(m.vxp);
}

}  // namespace gravswap
