#include <cmath>
#include <limits>

#include "experiment_common.hpp"
#include "gravswap/experiments.hpp"
#include "gravswap/format.hpp"

namespace gravswap {

using detail::integer;

ExperimentReport run_feasibility(const ExperimentConfig& cfg) {
  validate(cfg);
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  const auto& tol = cfg.tolerances;

  ExperimentReport rep;
  rep.kind = ExperimentKind::Feasibility;
  rep.manifest = make_manifest(cfg);

  Table t{"feasibility",
          {"platform", "source", "mass", "trap_frequency", "separation", "lambda", "omega_g", "delta", "swap_time",
           "inverse_omega_g", "oscillator_length", "displacement_sensitivity", "impractical"},
          {}};
  for (const auto& pl : cfg.platforms) {
    const DimensionlessParams p = pl.params.resolve();
    const double wg = p.coupling_rate();
    const double T = swap_time(p);
    double mass = kNaN, trap = p.omega, separation = kNaN, lambda = kNaN, length = kNaN;
    if (pl.params.physical) {
      mass = pl.params.si.mass;
      trap = pl.params.si.omega;
      separation = pl.params.si.separation;
      lambda = pl.params.si.coupling_constant();
      length = pl.params.si.oscillator_length();
    }
    // First-order amplitude correction per unit |alpha|, in metres:
    // delta |alpha| in amplitude units times sqrt2 oscillator lengths.
    const double sensitivity = std::sqrt(2.0) * p.delta * length;
    const bool impractical = !(T <= tol.impractical_time);
    const std::string source = pl.params.physical ? (pl.params.preset.empty() ? "si" : "preset:" + pl.params.preset)
                                                  : "coupling";
    t.add({pl.name, source, mass, trap, separation, lambda, wg, p.delta, T, wg > 0.0 ? 1.0 / wg : kNaN, length,
           sensitivity, integer(impractical ? 1 : 0)});
    rep.metrics.push_back({"swap_time." + pl.name, T, impractical ? "impractical" : "practical"});

    const auto preset = platform_preset("ca40");
    if (pl.params.physical && preset && pl.params.si == *preset) {
      rep.verdicts.push_back(verdict_at_most("ca40_coupling_rate." + pl.name,
                                             std::abs(std::log10(wg / tol.reference_coupling_rate)),
                                             tol.coupling_rate_decades,
                                             "decades between omega_g and the trapped-ion reference rate"));
      rep.verdicts.push_back(verdict_at_least("ca40_swap_time." + pl.name, T, tol.reference_swap_time,
                                              "swap time of the trapped-ion preset, seconds"));
    }
  }
  rep.notes.push_back("omega is an angular frequency (rad/s); platforms with swap time above " +
                      format_double(tol.impractical_time) + " s are flagged impractical");
  rep.tables = {std::move(t)};
  rep.plots = {{"swap_time", "Swap time per platform", "feasibility", "platform", "platform", "swap time (s)", "log",
                {{"swap time", "swap_time", {}}}}};
  return rep;
}

}  // namespace gravswap
