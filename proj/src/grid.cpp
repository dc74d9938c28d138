#include "gravswap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"
#include "gravswap/errors.hpp"

namespace gravswap {

namespace {

constexpr double kGroundWidth = 1.0 / std::numbers::sqrt2;  // sqrt(1/2)
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// <x|alpha> = pi^{-1/4} exp(-x^2/2 + sqrt2 alpha x - alpha^2/2 - |alpha|^2/2)
std::complex<double> coherent_wavefunction(ComplexAmplitude alpha, double x) {
  static const double prefactor = std::pow(std::numbers::pi, -0.25);
  return prefactor *
         std::exp(-0.5 * x * x + std::numbers::sqrt2 * alpha * x - 0.5 * alpha * alpha - 0.5 * std::norm(alpha));
}

std::vector<CoherentBranch> branches_of(const InitialState& s) {
  return std::visit(
      [](const auto& v) -> std::vector<CoherentBranch> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CoherentProduct>) {
          return {CoherentBranch{1.0, v.state.alpha, v.state.beta}};
        } else if constexpr (std::is_same_v<T, CatState>) {
          return {CoherentBranch{1.0, v.alpha, 0.0}, CoherentBranch{1.0, -v.alpha, 0.0}};
        } else {
          return v.branches;
        }
      },
      s);
}

void normalise_branches(std::vector<CoherentBranch>& branches) {
  std::complex<double> norm = 0.0;
  for (const auto& k : branches)
    for (const auto& l : branches)
      norm += std::conj(k.weight) * l.weight * coherent_inner_product(k.mode1, l.mode1) *
              coherent_inner_product(k.mode2, l.mode2);
  if (!(norm.real() > 0.0)) throw std::invalid_argument("initial state has zero norm");
  const double scale = 1.0 / std::sqrt(norm.real());
  for (auto& b : branches) b.weight *= scale;
}

struct PositionSums {
  double norm = 0, m1 = 0, m2 = 0, s11 = 0, s22 = 0, s12 = 0;
};

}  // namespace

std::string_view to_string(Frame f) { return f == Frame::Lab ? "lab" : "normal"; }

double GridSpec::wavenumber(int i) const {
  const double dk = std::numbers::pi / half_extent;
  return i < points / 2 ? i * dk : (i - points) * dk;
}

double GridSpec::max_wavenumber() const { return std::numbers::pi / spacing(); }

double GridSpec::required_half_extent(double displacement) {
  return (std::numbers::sqrt2 * displacement + 5.0 * kGroundWidth) / 0.8;
}

GridSpec GridSpec::for_displacement(double displacement, int points) {
  return {points, 8.0 + 4.0 * displacement};
}

void GridSpec::validate(double displacement) const {
  const double suggested = std::max(required_half_extent(displacement), 8.0 + 4.0 * displacement);
  if (!is_power_of_two(points) || points < 64) {
    std::ostringstream os;
    os << "grid points per axis must be a power of two >= 64 (got " << points << ")";
    throw GridSizingError(os.str(), suggested);
  }
  if (!(half_extent > 0.0) || !std::isfinite(half_extent))
    throw GridSizingError("grid half extent must be positive", suggested);
  const double reach = std::numbers::sqrt2 * displacement + 5.0 * kGroundWidth;
  if (reach > 0.8 * half_extent) {
    std::ostringstream os;
    os << "displacement " << displacement << " does not fit on a grid of half extent " << half_extent
       << "; use half_extent >= " << suggested;
    throw GridSizingError(os.str(), suggested);
  }
  if (4.0 * kGroundWidth / spacing() < 8.0) {
    std::ostringstream os;
    os << "grid spacing " << spacing() << " resolves the ground-state width with fewer than 8 points; "
       << "increase points or reduce half_extent";
    throw GridSizingError(os.str(), suggested);
  }
  if (reach > 0.8 * max_wavenumber()) {
    std::ostringstream os;
    os << "momentum grid (k_max = " << max_wavenumber() << ") too small for displacement " << displacement
       << "; increase points";
    throw GridSizingError(os.str(), suggested);
  }
}

double max_displacement(const InitialState& s) {
  double d = 0.0;
  for (const auto& b : branches_of(s)) d = std::max(d, std::sqrt(std::norm(b.mode1) + std::norm(b.mode2)));
  return d;
}

GridWavefunction build_initial_grid(const InitialState& state, const GridSpec& spec, Frame frame) {
  spec.validate(max_displacement(state));
  auto branches = branches_of(state);
  normalise_branches(branches);

  const int n = spec.points;
  GridWavefunction psi;
  psi.spec = spec;
  psi.frame = frame;
  psi.amplitudes.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);

  if (frame == Frame::Lab) {
    std::vector<std::complex<double>> f1(static_cast<std::size_t>(n)), f2(static_cast<std::size_t>(n));
    for (const auto& b : branches) {
      for (int i = 0; i < n; ++i) {
        f1[static_cast<std::size_t>(i)] = coherent_wavefunction(b.mode1, spec.coordinate(i));
        f2[static_cast<std::size_t>(i)] = coherent_wavefunction(b.mode2, spec.coordinate(i));
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          psi.at(i, j) += b.weight * f1[static_cast<std::size_t>(i)] * f2[static_cast<std::size_t>(j)];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double xp = spec.coordinate(i);
        const double xm = spec.coordinate(j);
        const double x1 = (xp + xm) * kInvSqrt2;
        const double x2 = (xp - xm) * kInvSqrt2;
        std::complex<double> v = 0.0;
        for (const auto& b : branches)
          v += b.weight * coherent_wavefunction(b.mode1, x1) * coherent_wavefunction(b.mode2, x2);
        psi.at(i, j) = v;
      }
    }
  }

  const double scale = 1.0 / std::sqrt(grid_norm(psi));
  for (auto& a : psi.amplitudes) a *= scale;
  return psi;
}

double grid_norm(const GridWavefunction& psi) {
  double s = 0.0;
  for (const auto& a : psi.amplitudes) s += std::norm(a);
  const double dx = psi.spec.spacing();
  return s * dx * dx;
}

double boundary_mass(const GridWavefunction& psi, double fraction) {
  const int n = psi.spec.points;
  const double edge = fraction * psi.spec.half_extent;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const bool row_out = std::abs(psi.spec.coordinate(i)) > edge;
    for (int j = 0; j < n; ++j)
      if (row_out || std::abs(psi.spec.coordinate(j)) > edge) s += std::norm(psi.at(i, j));
  }
  const double dx = psi.spec.spacing();
  return s * dx * dx;
}

double momentum_boundary_mass(const GridWavefunction& psi, double fraction) {
  const int n = psi.spec.points;
  detail::Fft2d fft(n);
  auto buf = fft.data();
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), buf.begin());
  fft.forward();
  const double edge = fraction * psi.spec.max_wavenumber();
  double total = 0.0, outside = 0.0;
  for (int i = 0; i < n; ++i) {
    const bool row_out = std::abs(psi.spec.wavenumber(i)) > edge;
    for (int j = 0; j < n; ++j) {
      const double w = std::norm(buf[psi.index(i, j)]);
      total += w;
      if (row_out || std::abs(psi.spec.wavenumber(j)) > edge) outside += w;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

PairMoments moments_from_grid(const GridWavefunction& psi) {
  const int n = psi.spec.points;
  const auto& spec = psi.spec;

  PositionSums x;
  for (int i = 0; i < n; ++i) {
    const double x1 = spec.coordinate(i);
    for (int j = 0; j < n; ++j) {
      const double x2 = spec.coordinate(j);
      const double w = std::norm(psi.at(i, j));
      x.norm += w;
      x.m1 += w * x1;
      x.m2 += w * x2;
      x.s11 += w * x1 * x1;
      x.s22 += w * x2 * x2;
      x.s12 += w * x1 * x2;
    }
  }

  detail::Fft2d fft(n);
  auto buf = fft.data();
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), buf.begin());
  fft.forward();
  const std::vector<std::complex<double>> spectrum(buf.begin(), buf.end());

  PositionSums k;
  for (int i = 0; i < n; ++i) {
    const double k1 = spec.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double k2 = spec.wavenumber(j);
      const double w = std::norm(spectrum[psi.index(i, j)]);
      k.norm += w;
      k.m1 += w * k1;
      k.m2 += w * k2;
      k.s11 += w * k1 * k1;
      k.s22 += w * k2 * k2;
      k.s12 += w * k1 * k2;
    }
  }

  // cross[i][j] = Re <x_i p_j>, with p_j psi = IFFT(k_j FFT psi).
  double cross[2][2] = {{0, 0}, {0, 0}};
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  for (int axis = 0; axis < 2; ++axis) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        buf[psi.index(i, j)] = spectrum[psi.index(i, j)] * (axis == 0 ? spec.wavenumber(i) : spec.wavenumber(j));
    fft.backward();
    for (int i = 0; i < n; ++i) {
      const double x1 = spec.coordinate(i);
      for (int j = 0; j < n; ++j) {
        const double x2 = spec.coordinate(j);
        const double v = (std::conj(psi.at(i, j)) * buf[psi.index(i, j)]).real() * inv_n2;
        cross[0][axis] += x1 * v;
        cross[1][axis] += x2 * v;
      }
    }
  }
  for (auto& row : cross)
    for (auto& c : row) c /= x.norm;

  const double mx1 = x.m1 / x.norm, mx2 = x.m2 / x.norm;
  const double xx11 = x.s11 / x.norm, xx22 = x.s22 / x.norm, xx12 = x.s12 / x.norm;
  const double mp1 = k.m1 / k.norm, mp2 = k.m2 / k.norm;
  const double pp11 = k.s11 / k.norm, pp22 = k.s22 / k.norm, pp12 = k.s12 / k.norm;

  auto mode = [](double mx, double mp, double xx, double pp, double xp) {
    return ModeMoments{mx, mp, xx - mx * mx, pp - mp * mp, xp - mx * mp};
  };

  if (psi.frame == Frame::Normal)
    return {mode(mx1, mp1, xx11, pp11, cross[0][0]), mode(mx2, mp2, xx22, pp22, cross[1][1])};

  const double s = kInvSqrt2;
  return {mode((mx1 + mx2) * s, (mp1 + mp2) * s, 0.5 * (xx11 + xx22 + 2.0 * xx12), 0.5 * (pp11 + pp22 + 2.0 * pp12),
               0.5 * (cross[0][0] + cross[0][1] + cross[1][0] + cross[1][1])),
          mode((mx1 - mx2) * s, (mp1 - mp2) * s, 0.5 * (xx11 + xx22 - 2.0 * xx12), 0.5 * (pp11 + pp22 - 2.0 * pp12),
               0.5 * (cross[0][0] - cross[0][1] - cross[1][0] + cross[1][1]))};
}

std::complex<double> grid_overlap(const GridWavefunction& psi, const GridWavefunction& phi) {
  if (!(psi.spec == phi.spec) || psi.frame != phi.frame || psi.amplitudes.size() != phi.amplitudes.size())
    throw std::invalid_argument("grid_overlap: wavefunctions live on different grids");
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) s += std::conj(psi.amplitudes[i]) * phi.amplitudes[i];
  const double dx = psi.spec.spacing();
  return s * dx * dx;
}

}  // namespace gravswap
