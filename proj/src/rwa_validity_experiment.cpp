#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "experiment_common.hpp"
#include "gravswap/experiments.hpp"
#include "gravswap/format.hpp"
#include "parallel.hpp"

namespace gravswap {

namespace {

using namespace detail;

struct SweepPoint {
  double delta = 0.0;
  double amplitude = 0.0;
  TwoModeCoherent state;
};

struct PointResult {
  double max_deviation = 0.0;
  double t_at_max = 0.0;
  double envelope = 0.0;
  double consistency = 0.0;  // |lab form - normal-mode form| of the corrected displacement
  std::size_t samples = 0;
  std::vector<std::vector<Cell>> trajectory;
};

struct OracleResult {
  std::vector<std::vector<Cell>> rows;
  double ode_error = 0.0;
  double grid_error = 0.0;
  double grid_width_error = 0.0;
  double first_order_residual = 0.0;
  std::optional<GridDiagnostics> grid;
};

PointResult run_point(const SweepPoint& pt, double omega, std::size_t per_period, bool keep_trajectory) {
  PointResult r;
  const DimensionlessParams p = from_coupling(pt.delta, omega);
  const double T = swap_time(p);
  const auto n = to_normal_modes(pt.state);
  r.envelope = pt.delta * (std::abs(n.plus) + std::abs(n.minus)) / std::sqrt(2.0);
  const double periods = omega * T / (2.0 * std::numbers::pi);
  r.samples = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(periods * static_cast<double>(per_period))));
  for (double t : uniform_times(T, r.samples)) {
    const auto cd = propagate_corrected_displacement(n, t, p);
    const TwoModeCoherent corrected = from_normal_modes(cd.normal);
    const TwoModeCoherent rwa = propagate_rwa_lab(pt.state, t, p);
    const double da = std::abs(corrected.alpha - rwa.alpha);
    const double db = std::abs(corrected.beta - rwa.beta);
    const double dev = std::max(da, db);
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.t_at_max = t;
    }
    r.consistency = std::max(
        {r.consistency, std::abs(corrected.alpha - cd.lab.alpha), std::abs(corrected.beta - cd.lab.beta)});
    if (keep_trajectory)
      r.trajectory.push_back({t, da, db, dev, pt.delta * std::abs(cd.A_t), pt.delta * std::abs(cd.B_t)});
  }
  return r;
}

OracleResult run_oracle(const ExperimentConfig& cfg, const DimensionlessParams& p, ModelKind model) {
  OracleResult r;
  const std::string name(to_string(model));
  const PairMoments init = moments_of_coherent(cfg.state);
  const auto times = uniform_times(cfg.time.t_final, cfg.time.samples);
  const auto n = to_normal_modes(cfg.state);
  for (double t : times) {
    const PairMoments m = propagate_moments(model, init, t, p);
    std::vector<Cell> row{name, text("closed_form"), t};
    append_moments(row, m);
    r.rows.push_back(std::move(row));
    if (p.delta <= kLargeCouplingWarning) {
      const auto lab = propagate_corrected_displacement(n, t, p).lab;
      const auto plus = displacement_from_moments(m.plus, 1.0);
      const auto minus = displacement_from_moments(m.minus, 1.0);
      const auto exact = from_normal_modes({plus.amplitude, minus.amplitude});
      r.first_order_residual = std::max(
          {r.first_order_residual, std::abs(exact.alpha - lab.alpha), std::abs(exact.beta - lab.beta)});
    }
  }
  if (uses_ode(cfg.oracle)) {
    for (const auto& s : integrate_moments(model, init, times, cfg.integrator, p)) {
      std::vector<Cell> row{name, text("ode"), s.t};
      append_moments(row, s.moments);
      r.rows.push_back(std::move(row));
      r.ode_error = std::max(r.ode_error, max_moment_diff(s.moments, propagate_moments(model, init, s.t, p)));
    }
  }
  if (uses_grid(cfg.oracle)) {
    auto psi = build_initial_grid(CoherentProduct{cfg.state}, GridSpec{cfg.grid.points, cfg.grid.half_extent},
                                  cfg.grid.frame);
    const auto grid_times = uniform_times(cfg.time.t_final, cfg.time.grid_samples);
    r.grid = split_step_evolve(psi, model, grid_times, cfg.integrator, p, [&](const GridWavefunction& g) {
      const PairMoments m = moments_from_grid(g);
      std::vector<Cell> row{name, text("grid"), g.time};
      append_moments(row, m);
      r.rows.push_back(std::move(row));
      r.grid_error = std::max(r.grid_error, max_moment_diff(m, propagate_moments(model, init, g.time, p)));
      if (model == ModelKind::Sceg) r.grid_width_error = std::max(r.grid_width_error, width_error(m));
    });
  }
  return r;
}

}  // namespace

ExperimentReport run_rwa_validity(const ExperimentConfig& cfg) {
  validate(cfg);
  const DimensionlessParams p = cfg.params.resolve();
  const double omega = p.omega;
  const ComplexAmplitude direction =
      std::abs(cfg.state.alpha) > 0.0 ? cfg.state.alpha / std::abs(cfg.state.alpha) : ComplexAmplitude{1.0, 0.0};

  std::vector<SweepPoint> points;
  for (double d : cfg.sweep_deltas)
    for (double a : cfg.sweep_amplitudes) points.push_back({d, a, {a * direction, cfg.state.beta}});

  std::vector<PointResult> results(points.size());
  parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
    results[i] = run_point(points[i], omega, cfg.sweep_samples_per_period, i == 0);
  });

  const bool oracle = cfg.oracle != OracleMode::None;
  std::vector<OracleResult> oracles(oracle ? cfg.models.size() : 0);
  parallel_for(oracles.size(), cfg.threads, [&](std::size_t j) { oracles[j] = run_oracle(cfg, p, cfg.models[j]); });

  ExperimentReport rep;
  rep.kind = ExperimentKind::RwaValidity;
  rep.manifest = make_manifest(cfg);

  Table dev_t{"deviation",
              {"point", "delta", "amplitude", "beta_re", "beta_im", "delta_amplitude", "envelope", "max_deviation",
               "ratio", "t_at_max", "significant", "samples"},
              {}};
  double zero_dev = 0.0, ratio_err = 0.0, consistency = 0.0;
  bool have_zero = false, have_ratio = false;
  double onset = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    const auto& r = results[i];
    const double da = pt.delta * std::max(std::abs(pt.state.alpha), std::abs(pt.state.beta));
    const double ratio = r.envelope > 0.0 ? r.max_deviation / r.envelope : std::numeric_limits<double>::quiet_NaN();
    const bool significant = r.max_deviation >= cfg.tolerances.significance;
    dev_t.add({integer(i), pt.delta, pt.amplitude, pt.state.beta.real(), pt.state.beta.imag(), da, r.envelope,
               r.max_deviation, ratio, r.t_at_max, integer(significant ? 1 : 0), integer(r.samples)});
    consistency = std::max(consistency, r.consistency);
    if (r.envelope == 0.0) {
      have_zero = true;
      zero_dev = std::max(zero_dev, r.max_deviation);
    } else if (da <= cfg.tolerances.envelope_max_coupling) {
      have_ratio = true;
      ratio_err = std::max(ratio_err, std::abs(ratio - 1.0));
    }
    if (significant) onset = std::min(onset, da);
  }

  // Linearity in |alpha| at fixed delta, only meaningful with beta = 0.
  double linearity = 0.0;
  bool have_linearity = false;
  if (cfg.state.beta == ComplexAmplitude{0.0, 0.0}) {
    for (double d : cfg.sweep_deltas) {
      std::optional<double> reference;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].delta != d || points[i].amplitude <= 0.0) continue;
        const double slope = results[i].max_deviation / points[i].amplitude;
        if (!reference) {
          reference = slope;
          continue;
        }
        have_linearity = true;
        linearity = std::max(linearity, std::abs(slope / *reference - 1.0));
      }
    }
  }

  Table traj_t{"deviation_trajectory", {"t", "deviation_alpha", "deviation_beta", "deviation", "delta_A_abs",
                                        "delta_B_abs"}, {}};
  if (!results.empty())
    for (auto& row : results.front().trajectory) traj_t.add(std::move(row));

  Table oracle_t{"oracle_moments", {"model", "method", "t"}, {}};
  for (const auto& c : moment_columns()) oracle_t.columns.push_back(c);
  double ode_err = 0.0, grid_err = 0.0, grid_width = 0.0, grid_step = 0.0, residual = 0.0;
  bool have_sceg_grid = false;
  for (std::size_t j = 0; j < oracles.size(); ++j) {
    auto& o = oracles[j];
    for (auto& row : o.rows) oracle_t.add(std::move(row));
    ode_err = std::max(ode_err, o.ode_error);
    grid_err = std::max(grid_err, o.grid_error);
    residual = std::max(residual, o.first_order_residual);
    if (o.grid) grid_step = std::max(grid_step, o.grid->max_step_norm_drift);
    if (o.grid && cfg.models[j] == ModelKind::Sceg) {
      have_sceg_grid = true;
      grid_width = std::max(grid_width, o.grid_width_error);
    }
  }

  rep.metrics.push_back({"points", static_cast<double>(points.size()), ""});
  rep.metrics.push_back({"max_envelope_ratio_error", have_ratio ? ratio_err : 0.0,
                         "|max deviation / envelope - 1| where delta*amplitude is small"});
  rep.metrics.push_back({"lab_normal_consistency", consistency,
                         "max |lab form - normal-mode form| of the corrected displacement"});
  rep.metrics.push_back({"breakdown_onset", std::isfinite(onset) ? onset : std::numeric_limits<double>::quiet_NaN(),
                         "smallest delta*amplitude whose deviation reaches the significance threshold"});
  if (oracle)
    rep.metrics.push_back({"first_order_residual", residual,
                           "max |corrected displacement - exact closed-form displacement| at the reference point"});

  if (have_zero)
    rep.verdicts.push_back(verdict_at_most("zero_deviation", zero_dev, 0.0, "points with zero amplitude"));
  if (have_ratio)
    rep.verdicts.push_back(verdict_at_most("envelope_ratio", ratio_err, cfg.tolerances.envelope_ratio,
                                           "max |max deviation / (delta * envelope) - 1|"));
  if (have_linearity)
    rep.verdicts.push_back(verdict_at_most("linearity", linearity, cfg.tolerances.linearity,
                                           "max relative spread of deviation / amplitude at fixed delta"));
  if (uses_ode(cfg.oracle))
    rep.verdicts.push_back(verdict_at_most("ode_agreement", ode_err, cfg.tolerances.ode_agreement,
                                           "max |RK4 - closed form| at the reference point"));
  if (uses_grid(cfg.oracle)) {
    rep.verdicts.push_back(verdict_at_most("grid_agreement", grid_err, cfg.tolerances.grid_agreement,
                                           "max |grid - closed form| at the reference point"));
    rep.verdicts.push_back(verdict_at_most("grid_norm_per_step", grid_step, cfg.tolerances.norm_per_step,
                                           "largest norm change over one split step"));
  }
  if (have_sceg_grid)
    rep.verdicts.push_back(verdict_at_most("sceg_grid_width_constant", grid_width, cfg.tolerances.grid_width,
                                           "max deviation of semiclassical grid variances from 1/2"));
  if (!have_linearity && cfg.sweep_amplitudes.size() > 1)
    rep.notes.push_back("linearity check skipped: it needs beta = 0 and at least two positive amplitudes");
  rep.notes.push_back("significance threshold " + format_double(cfg.tolerances.significance) +
                      " (amplitude units) is an implementation choice");

  rep.tables = {std::move(dev_t), std::move(traj_t)};
  if (oracle) rep.tables.push_back(std::move(oracle_t));

  Plot dev{"deviation", "Max deviation of the corrected evolution from the RWA swap", "deviation", "delta_amplitude",
           "delta * max(|alpha|, |beta|)", "max deviation", "log", {}};
  for (double d : cfg.sweep_deltas)
    dev.series.push_back({"delta = " + format_double(d), "max_deviation", {{"delta", format_double(d)}}});
  Plot traj{"deviation_trajectory", "Deviation over time for the first sweep point", "deviation_trajectory", "t",
            "t (s)", "deviation", "linear", {{"deviation", "deviation", {}}}};
  rep.plots = {dev, traj};
  if (oracle) {
    Plot om{"oracle_moments", "Plus-mode <x> at the reference point", "oracle_moments", "t", "t (s)", "<x+>",
            "linear", {}};
    for (auto m : cfg.models) {
      const std::string name(to_string(m));
      for (std::string method : {"closed_form", "ode", "grid"}) {
        if ((method == "ode" && !uses_ode(cfg.oracle)) || (method == "grid" && !uses_grid(cfg.oracle))) continue;
        om.series.push_back({name + " " + method, "plus_mean_x", {{"model", name}, {"method", method}}});
      }
    }
    rep.plots.push_back(om);
  }
  return rep;
}

}  // namespace gravswap
