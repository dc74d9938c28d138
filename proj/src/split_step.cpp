#include "gravswap/split_step.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "gravswap/errors.hpp"

namespace gravswap {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

/// Quadratic kinetic and potential forms plus the mean-field coupling,
/// all in the coordinates of the grid's frame:
///   T = t11 k1^2/2 + t22 k2^2/2 + t12 k1 k2
///   V = v11 x1^2/2 + v22 x2^2/2 + v12 x1 x2 + sum_ij x_i mf_ij <x_j>
struct GridHamiltonian {
  double t11 = 1, t22 = 1, t12 = 0;
  double v11 = 1, v22 = 1, v12 = 0;
  double mf[2][2] = {{0, 0}, {0, 0}};
  bool mean_field() const { return mf[0][0] != 0 || mf[0][1] != 0 || mf[1][0] != 0 || mf[1][1] != 0; }
};

GridHamiltonian grid_hamiltonian(ModelKind model, Frame frame, const DimensionlessParams& p) {
  GridHamiltonian h;
  const double d = p.delta;
  if (frame == Frame::Lab) {
    switch (model) {
      case ModelKind::QgFull: h.v12 = 2.0 * d; break;
      case ModelKind::QgRwa:
        h.t12 = d;
        h.v12 = d;
        break;
      case ModelKind::Sceg:
        h.mf[0][1] = 2.0 * d;
        h.mf[1][0] = 2.0 * d;
        break;
    }
  } else {
    switch (model) {
      case ModelKind::QgFull:
        h.v11 = 1.0 + 2.0 * d;
        h.v22 = 1.0 - 2.0 * d;
        break;
      case ModelKind::QgRwa:
        h.t11 = h.v11 = p.k_plus;
        h.t22 = h.v22 = p.k_minus;
        break;
      case ModelKind::Sceg:
        h.mf[0][0] = 2.0 * d;
        h.mf[1][1] = -2.0 * d;
        break;
    }
  }
  return h;
}

class Propagator {
 public:
  Propagator(const GridSpec& spec, const GridHamiltonian& h) : spec_(spec), h_(h), fft_(spec.points) {}

  /// Advances the state held in the FFT buffer by n steps of dt
  /// (dimensionless).
  void run(std::size_t n, double dt, const IntegratorConfig& cfg, double& reference_norm, double& elapsed,
           GridDiagnostics& diag) {
    prepare(dt);
    const std::size_t np = static_cast<std::size_t>(spec_.points);
    auto buf = fft_.data();
    const double dx2 = spec_.spacing() * spec_.spacing();

    fft_.forward();
    multiply(buf, half_kinetic_);
    double previous_norm = std::nan("");
    for (std::size_t s = 0; s < n; ++s) {
      fft_.backward();

      double norm = 0.0, m1 = 0.0, m2 = 0.0;
      if (h_.mean_field()) {
        for (std::size_t i = 0; i < np; ++i) {
          const double x1 = spec_.coordinate(static_cast<int>(i));
          double row = 0.0, row_x2 = 0.0;
          for (std::size_t j = 0; j < np; ++j) {
            const double w = std::norm(buf[i * np + j]);
            row += w;
            row_x2 += w * x2_[j];
          }
          norm += row;
          m1 += row * x1;
          m2 += row_x2;
        }
        m1 /= norm;
        m2 /= norm;
      } else {
        for (const auto& a : buf) norm += std::norm(a);
      }
      norm *= dx2;
      track_norm(norm, previous_norm, reference_norm, elapsed, cfg, diag);
      previous_norm = norm;

      if (h_.mean_field()) {
        const double g1 = h_.mf[0][0] * m1 + h_.mf[0][1] * m2;
        const double g2 = h_.mf[1][0] * m1 + h_.mf[1][1] * m2;
        for (std::size_t i = 0; i < np; ++i) {
          e1_[i] = std::exp(-kI * (g1 * x1_[i] * dt));
          e2_[i] = std::exp(-kI * (g2 * x2_[i] * dt));
        }
        for (std::size_t i = 0; i < np; ++i)
          for (std::size_t j = 0; j < np; ++j) buf[i * np + j] *= potential_[i * np + j] * e1_[i] * e2_[j];
      } else {
        multiply(buf, potential_);
      }

      fft_.forward();
      multiply(buf, s + 1 == n ? half_kinetic_ : kinetic_);
      elapsed += dt;
      ++diag.steps;
    }
    fft_.backward();
    diag.dt = dt;
  }

  std::span<std::complex<double>> buffer() { return fft_.data(); }

 private:
  void prepare(double dt) {
    if (dt == prepared_dt_) return;
    const int n = spec_.points;
    const std::size_t np = static_cast<std::size_t>(n);
    const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
    half_kinetic_.resize(np * np);
    kinetic_.resize(np * np);
    potential_.resize(np * np);
    x1_.resize(np);
    x2_.resize(np);
    e1_.resize(np);
    e2_.resize(np);
    for (int i = 0; i < n; ++i) {
      x1_[static_cast<std::size_t>(i)] = spec_.coordinate(i);
      x2_[static_cast<std::size_t>(i)] = spec_.coordinate(i);
    }
    for (int i = 0; i < n; ++i) {
      const double k1 = spec_.wavenumber(i);
      const double x1 = spec_.coordinate(i);
      for (int j = 0; j < n; ++j) {
        const double k2 = spec_.wavenumber(j);
        const double x2 = spec_.coordinate(j);
        const double t = 0.5 * h_.t11 * k1 * k1 + 0.5 * h_.t22 * k2 * k2 + h_.t12 * k1 * k2;
        const double v = 0.5 * h_.v11 * x1 * x1 + 0.5 * h_.v22 * x2 * x2 + h_.v12 * x1 * x2;
        const std::size_t idx = static_cast<std::size_t>(i) * np + static_cast<std::size_t>(j);
        half_kinetic_[idx] = std::exp(-kI * (0.5 * t * dt)) * inv_n2;
        kinetic_[idx] = std::exp(-kI * (t * dt)) * inv_n2;
        potential_[idx] = std::exp(-kI * (v * dt));
      }
    }
    prepared_dt_ = dt;
  }

  static void multiply(std::span<std::complex<double>> buf, const std::vector<std::complex<double>>& f) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= f[i];
  }

  static void track_norm(double norm, double previous, double reference, double elapsed, const IntegratorConfig& cfg,
                         GridDiagnostics& diag) {
    if (!std::isnan(previous)) diag.max_step_norm_drift = std::max(diag.max_step_norm_drift, std::abs(norm - previous));
    const double drift = std::abs(norm - reference);
    diag.norm_drift = drift;
    if (elapsed > 0.0 && drift > cfg.norm_drift_rate_limit * std::max(elapsed, 1.0)) {
      std::ostringstream os;
      os << "split_step_evolve: norm drift " << drift << " after tau = " << elapsed << " exceeds "
         << cfg.norm_drift_rate_limit << " per unit time";
      throw NumericalError(os.str());
    }
  }

  GridSpec spec_;
  GridHamiltonian h_;
  detail::Fft2d fft_;
  double prepared_dt_ = -1.0;
  std::vector<std::complex<double>> half_kinetic_, kinetic_, potential_;
  std::vector<double> x1_, x2_;
  std::vector<std::complex<double>> e1_, e2_;
};

void check_leakage(const GridWavefunction& psi, const IntegratorConfig& cfg, GridDiagnostics& diag) {
  const double pos = boundary_mass(psi);
  const double mom = momentum_boundary_mass(psi);
  diag.max_boundary_mass = std::max(diag.max_boundary_mass, pos);
  diag.max_momentum_boundary_mass = std::max(diag.max_momentum_boundary_mass, mom);
  if (pos > cfg.leakage_limit || mom > cfg.leakage_limit) {
    std::ostringstream os;
    os << "split_step_evolve: boundary leakage (position " << pos << ", momentum " << mom << ") exceeds "
       << cfg.leakage_limit << " at t = " << psi.time;
    throw NumericalError(os.str());
  }
}

}  // namespace

GridDiagnostics split_step_evolve(GridWavefunction& psi, ModelKind model, std::span<const double> snapshot_times,
                                  const IntegratorConfig& cfg, const DimensionlessParams& p,
                                  const SnapshotObserver& observer) {
  if (!(cfg.grid_dt_fraction > 0.0) || cfg.grid_dt_fraction > cfg.max_grid_dt_fraction)
    throw NumericalError("split_step_evolve: grid step must be positive and at most the configured ceiling");
  const double max_dt = cfg.grid_dt_fraction * 2.0 * std::numbers::pi / p.K_plus;

  Propagator prop(psi.spec, grid_hamiltonian(model, psi.frame, p));
  GridDiagnostics diag;
  double reference_norm = grid_norm(psi);
  double elapsed = 0.0;
  check_leakage(psi, cfg, diag);

  auto buf = prop.buffer();
  for (double t : snapshot_times) {
    const double span = p.omega * (t - psi.time);
    if (span < 0.0) throw NumericalError("split_step_evolve: snapshot times must be ascending");
    if (span > 1e-13 * std::max(1.0, p.omega * t)) {
      const double steps_real = std::ceil(span / max_dt);
      if (steps_real > 1e9) throw NumericalError("split_step_evolve: too many steps");
      const auto steps = static_cast<std::size_t>(steps_real);
      std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), buf.begin());
      prop.run(steps, span / static_cast<double>(steps), cfg, reference_norm, elapsed, diag);
      std::copy(buf.begin(), buf.end(), psi.amplitudes.begin());
      check_leakage(psi, cfg, diag);
    }
    psi.time = t;
    if (observer) observer(psi);
  }
  diag.norm_drift = std::abs(grid_norm(psi) - reference_norm);
  return diag;
}

GridRun split_step_evolve(const GridWavefunction& psi, ModelKind model, double t_final, std::size_t snapshots,
                          const IntegratorConfig& cfg, const DimensionlessParams& p) {
  std::vector<double> times = uniform_times(t_final, snapshots);
  for (auto& t : times) t += psi.time;
  GridRun run;
  GridWavefunction state = psi;
  run.diagnostics =
      split_step_evolve(state, model, times, cfg, p, [&](const GridWavefunction& s) { run.snapshots.push_back(s); });
  return run;
}

}  // namespace gravswap
