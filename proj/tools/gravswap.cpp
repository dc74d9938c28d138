// Command line front end: one subcommand per experiment plus replay.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "gravswap/config.hpp"
#include "gravswap/digest.hpp"
#include "gravswap/emit.hpp"
#include "gravswap/errors.hpp"
#include "gravswap/experiments.hpp"

namespace {

using namespace gravswap;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kRuntime = 3 };

struct RunOptions {
  std::string config;
  std::string out;
  std::string oracle;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int run(ExperimentKind kind, const RunOptions& opt) {
  ExperimentConfig cfg = parse_config(opt.config);
  if (cfg.kind != kind)
    throw ConfigError("experiment.kind", "config describes a '" + std::string(to_string(cfg.kind)) +
                                             "' experiment, not '" + std::string(to_string(kind)) + "'");
  if (!opt.oracle.empty()) {
    if (opt.oracle == "none")
      cfg.oracle = OracleMode::None;
    else if (opt.oracle == "ode")
      cfg.oracle = OracleMode::Ode;
    else if (opt.oracle == "grid")
      cfg.oracle = OracleMode::Grid;
    else
      cfg.oracle = OracleMode::All;
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  if (!opt.out.empty()) cfg.output = opt.out;
  validate(cfg);

  ExperimentReport report = run_experiment(cfg);
  report.manifest.input_digests.emplace_back(opt.config, sha256_file(opt.config));
  emit_report(report, cfg.output);
  std::cout << render_summary(report) << "\nwrote " << cfg.output << '\n';
  return report.passed() ? kPass : kFail;
}

int replay(const std::string& manifest, const std::string& out) {
  const ReplayResult r = replay_manifest(manifest, out);
  std::cout << render_summary(r.report);
  if (!r.matched()) {
    std::cerr << "replay: digest mismatch for";
    for (const auto& m : r.mismatches) std::cerr << ' ' << m;
    std::cerr << '\n';
    return kFail;
  }
  std::cout << "\nreplay: all " << r.emitted.output_digests.size() << " output digests match\n";
  return r.report.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled-oscillator gravity experiments: coherent swap, RWA validity, cat-state entanglement and "
               "feasibility"};
  app.set_version_flag("--version", artifact_version());
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    ExperimentKind kind;
    const char* help;
  };
  const Sub subs[] = {
      {"swap", ExperimentKind::Swap, "coherent-state swap fidelity for each model"},
      {"rwa-validity", ExperimentKind::RwaValidity, "deviation of the corrected evolution from the RWA swap"},
      {"cat-state", ExperimentKind::CatState, "entanglement of a cat state: quantum vs semiclassical gravity"},
      {"feasibility", ExperimentKind::Feasibility, "coupling rate and swap time for physical platforms"},
  };

  RunOptions opt;
  std::optional<ExperimentKind> chosen;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("--config", opt.config, "experiment configuration (INI)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "output directory (default: experiment.output)");
    cmd->add_option("--oracle", opt.oracle, "cross-checks to run")->check(CLI::IsMember({"none", "ode", "grid", "all"}));
    cmd->add_option("--seed", opt.seed, "random seed for sampled inputs");
    cmd->add_option("--threads", opt.threads, "worker threads for independent runs")->check(CLI::PositiveNumber);
    cmd->callback([&chosen, kind = s.kind] { chosen = kind; });
  }
  std::string manifest, replay_out;
  auto* rep = app.add_subcommand("replay", "re-run a recorded manifest and compare output digests");
  rep->add_option("--manifest", manifest, "manifest.json of a previous run")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", replay_out, "directory for the replayed report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (rep->parsed()) return replay(manifest, replay_out);
    return run(*chosen, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
