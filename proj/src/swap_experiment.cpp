#include <cmath>
#include <limits>
#include <optional>

#include "experiment_common.hpp"
#include "gravswap/experiments.hpp"
#include "gravswap/format.hpp"
#include "parallel.hpp"

namespace gravswap {

namespace {

using namespace detail;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Series {
  std::string method;
  std::vector<double> times;
  std::vector<PairMoments> moments;
};

struct FidelityRow {
  std::string method;
  double raw = kNaN;
  double corrected = kNaN;
  double delta_a = kNaN;
  double delta_b = kNaN;
};

struct TrajectoryRow {
  double t;
  std::string source;
  TwoModeCoherent lab;
  double width_deviation;
  bool coherent;
};

struct WorkResult {
  std::vector<Series> series;
  std::vector<FidelityRow> fidelities;
  std::optional<GridDiagnostics> grid;
  std::vector<TrajectoryRow> trajectory;
  double ode_error = 0.0;
  double grid_error = 0.0;
  double grid_fidelity_error = 0.0;
  double grid_width_error = 0.0;
};

/// |RWA - FULL| first-moment bound per mode: sqrt2 |n| (|K - k| w t + max(|1 - 1/K|, |K - 1|)).
double phase_pattern_bound(ComplexAmplitude n, double K, double k, double tau) {
  return std::sqrt(2.0) * std::abs(n) * (std::abs(K - k) * tau + std::max(std::abs(1.0 - 1.0 / K), std::abs(K - 1.0)));
}

WorkResult run_pair(const ExperimentConfig& cfg, const DimensionlessParams& p, const TwoModeCoherent& s,
                    ModelKind model, bool with_grid, bool with_trajectory) {
  WorkResult r;
  const double T = swap_time(p);
  const auto times = uniform_times(cfg.time.t_final, cfg.time.samples);
  const PairMoments init = moments_of_coherent(s);
  const TwoModeCoherent target{s.beta, s.alpha};
  const ComplexAmplitude undo = std::conj(swap_phase(T, p));
  const TwoModeCoherent target_rotated{s.beta * undo, s.alpha * undo};
  const PairMoments target_m = moments_of_coherent(target);
  const PairMoments target_rot_m = moments_of_coherent(target_rotated);
  const bool first_order = p.delta <= kLargeCouplingWarning;

  Series closed{"closed_form", times, {}};
  for (double t : times) closed.moments.push_back(propagate_moments(model, init, t, p));
  r.series.push_back(closed);
  {
    const PairMoments out = propagate_moments(model, init, T, p);
    r.fidelities.push_back({"closed_form", gaussian_overlap(out, target_m), gaussian_overlap(out, target_rot_m)});
  }

  if (model == ModelKind::QgRwa) {
    const TwoModeCoherent lab = propagate_rwa_lab(s, T, p);
    r.fidelities.push_back(
        {"displacement", coherent_overlap(lab, target), coherent_overlap(phase_corrected(lab, T, p), target), 0.0, 0.0});
  } else if (first_order) {
    const auto cd = propagate_corrected_displacement(to_normal_modes(s), T, p);
    r.fidelities.push_back({"displacement", coherent_overlap(cd.lab, target),
                            coherent_overlap(phase_corrected(cd.lab, T, p), target), p.delta * std::abs(cd.A_t),
                            p.delta * std::abs(cd.B_t)});
  }

  if (uses_ode(cfg.oracle)) {
    const auto all = merged_times(times, T);
    const auto samples = integrate_moments(model, init, all, cfg.integrator, p);
    Series ode{"ode", {}, {}};
    for (const auto& smp : samples) {
      ode.times.push_back(smp.t);
      ode.moments.push_back(smp.moments);
      r.ode_error = std::max(r.ode_error, max_moment_diff(smp.moments, propagate_moments(model, init, smp.t, p)));
      if (smp.t == T)
        r.fidelities.push_back(
            {"ode", gaussian_overlap(smp.moments, target_m), gaussian_overlap(smp.moments, target_rot_m)});
    }
    r.series.push_back(std::move(ode));
  }

  if (with_grid) {
    const GridSpec spec{cfg.grid.points, cfg.grid.half_extent};
    auto psi = build_initial_grid(CoherentProduct{s}, spec, cfg.grid.frame);
    const auto target_grid = build_initial_grid(CoherentProduct{target}, spec, cfg.grid.frame);
    const auto target_rot_grid = build_initial_grid(CoherentProduct{target_rotated}, spec, cfg.grid.frame);
    const auto grid_times = merged_times(uniform_times(cfg.time.t_final, cfg.time.grid_samples), T);
    Series grid{"grid", {}, {}};
    r.grid = split_step_evolve(psi, model, grid_times, cfg.integrator, p, [&](const GridWavefunction& g) {
      const PairMoments m = moments_from_grid(g);
      grid.times.push_back(g.time);
      grid.moments.push_back(m);
      r.grid_error = std::max(r.grid_error, max_moment_diff(m, propagate_moments(model, init, g.time, p)));
      if (model == ModelKind::Sceg) r.grid_width_error = std::max(r.grid_width_error, width_error(m));
      if (g.time == T) {
        FidelityRow row{"grid", std::norm(grid_overlap(target_grid, g)), std::norm(grid_overlap(target_rot_grid, g))};
        const PairMoments exact = propagate_moments(model, init, T, p);
        r.grid_fidelity_error = std::abs(row.corrected - gaussian_overlap(exact, target_rot_m));
        r.fidelities.push_back(row);
      }
    });
    r.series.push_back(std::move(grid));
  }

  if (with_trajectory) {
    const auto n = to_normal_modes(s);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      if (model == ModelKind::QgRwa) {
        r.trajectory.push_back({t, "rwa_map", propagate_rwa_lab(s, t, p), 0.0, true});
      } else if (first_order) {
        r.trajectory.push_back({t, "corrected", propagate_corrected_displacement(n, t, p).lab, 0.0, true});
      }
      const auto& m = closed.moments[i];
      const auto plus = displacement_from_moments(m.plus, cfg.tolerances.coherence);
      const auto minus = displacement_from_moments(m.minus, cfg.tolerances.coherence);
      r.trajectory.push_back({t, "moments", from_normal_modes({plus.amplitude, minus.amplitude}),
                              std::max(plus.width_deviation, minus.width_deviation), plus.coherent && minus.coherent});
    }
  }
  return r;
}

}  // namespace

ExperimentReport run_swap(const ExperimentConfig& cfg) {
  validate(cfg);
  const DimensionlessParams p = cfg.params.resolve();
  const double T = swap_time(p);
  const auto pairs = swap_initial_pairs(cfg);
  const auto& models = cfg.models;

  std::vector<WorkResult> results(pairs.size() * models.size());
  parallel_for(results.size(), cfg.threads, [&](std::size_t k) {
    const std::size_t i = k / models.size();
    const ModelKind m = models[k % models.size()];
    results[k] = run_pair(cfg, p, pairs[i], m, uses_grid(cfg.oracle) && i < cfg.grid.max_inits, i == 0);
  });
  auto result = [&](std::size_t i, std::size_t j) -> const WorkResult& { return results[i * models.size() + j]; };

  ExperimentReport rep;
  rep.kind = ExperimentKind::Swap;
  rep.manifest = make_manifest(cfg);

  Table pairs_t{"pairs", {"pair", "alpha_re", "alpha_im", "beta_re", "beta_im"}, {}};
  for (std::size_t i = 0; i < pairs.size(); ++i)
    pairs_t.add({integer(i), pairs[i].alpha.real(), pairs[i].alpha.imag(), pairs[i].beta.real(), pairs[i].beta.imag()});

  Table moments_t{"moments", {"pair", "model", "method", "t"}, {}};
  for (const auto& c : moment_columns()) moments_t.columns.push_back(c);
  Table agreement_t{"agreement", {"model", "method", "t", "x1", "p1", "x2", "p2"}, {}};
  Table fidelity_t{"fidelity",
                   {"pair", "model", "method", "t", "raw_fidelity", "corrected_fidelity", "delta_A_abs",
                    "delta_B_abs", "fidelity_bound"},
                   {}};
  Table trajectory_t{"trajectory",
                     {"t", "model", "source", "alpha_re", "alpha_im", "beta_re", "beta_im", "width_deviation",
                      "coherent"},
                     {}};

  double rwa_exact = 0.0, sceg_margin = std::numeric_limits<double>::infinity(), identity = 0.0, sceg_width = 0.0,
         pattern = -std::numeric_limits<double>::infinity(), ode_err = 0.0, grid_err = 0.0, grid_fid_err = 0.0,
         grid_width = 0.0, grid_step = 0.0;
  bool have_grid = false, have_sceg_grid = false, have_sceg_bound = false;
  std::vector<double> min_corrected(models.size(), 1.0);
  double max_delta_a = 0.0, max_delta_b = 0.0;

  const std::size_t ifull = static_cast<std::size_t>(std::find(models.begin(), models.end(), ModelKind::QgFull) - models.begin());
  const std::size_t irwa = static_cast<std::size_t>(std::find(models.begin(), models.end(), ModelKind::QgRwa) - models.begin());
  const std::size_t isceg = static_cast<std::size_t>(std::find(models.begin(), models.end(), ModelKind::Sceg) - models.begin());

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto n = to_normal_modes(pairs[i]);
    const double bound = std::exp(-std::pow(2.0 * p.delta * std::max(std::abs(n.plus), std::abs(n.minus)), 2));
    for (std::size_t j = 0; j < models.size(); ++j) {
      const WorkResult& r = result(i, j);
      const std::string model(to_string(models[j]));
      for (const auto& s : r.series) {
        for (std::size_t q = 0; q < s.times.size(); ++q) {
          std::vector<Cell> row{integer(i), model, s.method, s.times[q]};
          append_moments(row, s.moments[q]);
          moments_t.add(std::move(row));
          if (i == 0) {
            const auto lab = lab_first_moments(s.moments[q]);
            agreement_t.add({model, s.method, s.times[q], lab.x1, lab.p1, lab.x2, lab.p2});
          }
        }
      }
      for (const auto& f : r.fidelities) {
        fidelity_t.add({integer(i), model, f.method, T, f.raw, f.corrected, f.delta_a, f.delta_b, bound});
        if (f.method == "closed_form") min_corrected[j] = std::min(min_corrected[j], f.corrected);
        if (f.method == "displacement") {
          if (models[j] == ModelKind::QgRwa) rwa_exact = std::max(rwa_exact, std::abs(1.0 - f.corrected));
          if (models[j] == ModelKind::Sceg) {
            sceg_margin = std::min(sceg_margin, f.corrected - bound);
            have_sceg_bound = true;
          }
          if (models[j] != ModelKind::QgRwa) {
            max_delta_a = std::max(max_delta_a, f.delta_a);
            max_delta_b = std::max(max_delta_b, f.delta_b);
          }
        }
      }
      for (const auto& tr : r.trajectory)
        trajectory_t.add({tr.t, model, tr.source, tr.lab.alpha.real(), tr.lab.alpha.imag(), tr.lab.beta.real(),
                          tr.lab.beta.imag(), tr.width_deviation, integer(tr.coherent ? 1 : 0)});
      ode_err = std::max(ode_err, r.ode_error);
      if (r.grid) {
        have_grid = true;
        grid_err = std::max(grid_err, r.grid_error);
        grid_fid_err = std::max(grid_fid_err, r.grid_fidelity_error);
        grid_step = std::max(grid_step, r.grid->max_step_norm_drift);
        if (models[j] == ModelKind::Sceg) {
          have_sceg_grid = true;
          grid_width = std::max(grid_width, r.grid_width_error);
        }
      }
    }

    const auto& closed_of = [&](std::size_t j) -> const Series& { return result(i, j).series.front(); };
    if (ifull < models.size() && isceg < models.size()) {
      const auto& a = closed_of(ifull);
      const auto& b = closed_of(isceg);
      for (std::size_t q = 0; q < a.times.size(); ++q)
        identity = std::max(identity, max_first_moment_diff(a.moments[q], b.moments[q]));
    }
    if (isceg < models.size())
      for (const auto& m : closed_of(isceg).moments) sceg_width = std::max(sceg_width, width_error(m));
    if (ifull < models.size() && irwa < models.size()) {
      const auto& a = closed_of(ifull);
      const auto& b = closed_of(irwa);
      for (std::size_t q = 0; q < a.times.size(); ++q) {
        const double tau = p.omega * a.times[q];
        const double bp = phase_pattern_bound(n.plus, p.K_plus, p.k_plus, tau);
        const double bm = phase_pattern_bound(n.minus, p.K_minus, p.k_minus, tau);
        const auto& x = a.moments[q];
        const auto& y = b.moments[q];
        pattern = std::max({pattern, std::abs(x.plus.mean_x - y.plus.mean_x) - bp,
                            std::abs(x.plus.mean_p - y.plus.mean_p) - bp, std::abs(x.minus.mean_x - y.minus.mean_x) - bm,
                            std::abs(x.minus.mean_p - y.minus.mean_p) - bm});
      }
    }
  }

  rep.metrics.push_back({"delta", p.delta, "omega_g / omega"});
  rep.metrics.push_back({"swap_time", T, "seconds, pi / (2 omega_g)"});
  rep.metrics.push_back({"pairs", static_cast<double>(pairs.size()), ""});
  for (std::size_t j = 0; j < models.size(); ++j)
    rep.metrics.push_back({"min_corrected_fidelity." + std::string(to_string(models[j])), min_corrected[j],
                           "closed-form moments at the swap time"});
  if (ifull < models.size() || isceg < models.size()) {
    rep.metrics.push_back({"max_delta_A_T", max_delta_a, "first-order correction to mode 1 at the swap time"});
    rep.metrics.push_back({"max_delta_B_T", max_delta_b, "first-order correction to mode 2 at the swap time"});
  }

  const double slack = 1e-12;
  if (irwa < models.size())
    rep.verdicts.push_back(verdict_at_most("rwa_swap_exact", rwa_exact, cfg.tolerances.swap_fidelity,
                                           "max |1 - F| of the phase-corrected RWA swap over all pairs"));
  if (have_sceg_bound)
    rep.verdicts.push_back(verdict_at_least("sceg_fidelity_bound", sceg_margin, 0.0,
                                            "min of F - exp(-(2 delta max(|a|,|b|))^2) over all pairs"));
  if (ifull < models.size() && isceg < models.size())
    rep.verdicts.push_back(verdict_at_most("qg_sceg_first_moment_identity", identity, cfg.tolerances.moment_identity,
                                           "max first-moment difference, full vs semiclassical closed forms"));
  if (isceg < models.size())
    rep.verdicts.push_back(verdict_at_most("sceg_width_constant", sceg_width, cfg.tolerances.moment_identity,
                                           "max deviation of semiclassical variances from 1/2"));
  if (ifull < models.size() && irwa < models.size())
    rep.verdicts.push_back(verdict_at_most("rwa_full_phase_pattern", pattern, slack,
                                           "max of |RWA - full| minus the K vs k phase-pattern bound"));
  if (uses_ode(cfg.oracle))
    rep.verdicts.push_back(verdict_at_most("ode_agreement", ode_err, cfg.tolerances.ode_agreement,
                                           "max |RK4 - closed form| over all moments"));
  if (have_grid) {
    rep.verdicts.push_back(verdict_at_most("grid_agreement", grid_err, cfg.tolerances.grid_agreement,
                                           "max |grid - closed form| over all moments"));
    rep.verdicts.push_back(verdict_at_most("grid_fidelity_agreement", grid_fid_err, cfg.tolerances.grid_agreement,
                                           "|grid overlap - Gaussian overlap| of the corrected fidelity"));
    rep.verdicts.push_back(verdict_at_most("grid_norm_per_step", grid_step, cfg.tolerances.norm_per_step,
                                           "largest norm change over one split step"));
  }
  if (have_sceg_grid)
    rep.verdicts.push_back(verdict_at_most("sceg_grid_width_constant", grid_width, cfg.tolerances.grid_width,
                                           "max deviation of semiclassical grid variances from 1/2"));

  if (p.delta > kLargeCouplingWarning)
    rep.notes.push_back("delta exceeds " + format_double(kLargeCouplingWarning) +
                        "; first-order corrected displacements were skipped");
  if (uses_grid(cfg.oracle) && pairs.size() > cfg.grid.max_inits)
    rep.notes.push_back("grid oracle ran on the first " + std::to_string(cfg.grid.max_inits) + " pair(s)");
  if (auto w = coupling_warning(p)) rep.notes.push_back(*w);

  rep.tables = {std::move(pairs_t), std::move(moments_t), std::move(fidelity_t), std::move(trajectory_t),
                std::move(agreement_t)};

  Plot first{"first_moments", "Lab first moment <x1> by model and method", "agreement", "t", "t (s)", "<x1>", "linear",
             {}};
  Plot fid{"swap_fidelity", "Phase-corrected swap fidelity per initial pair", "fidelity", "pair", "pair",
           "corrected fidelity", "linear", {}};
  Plot traj{"displacement", "Re alpha(t) from the displacement maps and from the moments", "trajectory", "t", "t (s)",
            "Re alpha", "linear", {}};
  Plot widths{"widths", "Plus-mode position variance", "moments", "t", "t (s)", "V_xx (plus)", "linear", {}};
  std::vector<std::string> methods{"closed_form"};
  if (uses_ode(cfg.oracle)) methods.push_back("ode");
  if (have_grid) methods.push_back("grid");
  for (auto m : models) {
    const std::string name(to_string(m));
    for (const auto& method : methods)
      first.series.push_back({name + " " + method, "x1", {{"model", name}, {"method", method}}});
    fid.series.push_back({name, "corrected_fidelity", {{"model", name}, {"method", "closed_form"}}});
    traj.series.push_back({name + " moments", "alpha_re", {{"model", name}, {"source", "moments"}}});
    widths.series.push_back({name, "plus_vxx", {{"model", name}, {"method", "closed_form"}, {"pair", "0"}}});
  }
  rep.plots = {first, fid, traj, widths};
  return rep;
}

}  // namespace gravswap
