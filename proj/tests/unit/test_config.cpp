#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "gravswap/config.hpp"
#include "gravswap/errors.hpp"

using namespace gravswap;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

const char* kSwap = R"(
[experiment]
kind = swap
seed = 42

[params]
delta = 0.01

[state]
alpha = 2, 0
beta = -1, 0.5
random_pairs = 3
)";

}  // namespace

TEST_CASE("swap defaults are resolved at parse time") {
  const auto c = parse_config_text(kSwap);
  CHECK(c.kind == ExperimentKind::Swap);
  CHECK(c.models == std::vector<ModelKind>(kAllModels.begin(), kAllModels.end()));
  CHECK(c.oracle == OracleMode::Ode);
  CHECK(c.time.t_final == doctest::Approx(std::numbers::pi / 0.02));
  CHECK(c.state.beta == ComplexAmplitude(-1.0, 0.5));
  CHECK(c.random_pairs == 3);
  CHECK(c.seed == 42);
  CHECK(c.grid.half_extent == doctest::Approx(8.0 + 4.0 * std::sqrt(4.0 + 1.25)));
  CHECK(c.tolerances == Tolerances{});
}

TEST_CASE("echo is canonical and round trips") {
  for (const char* text : {kSwap,
                           "[experiment]\nkind = cat-state\n[params]\ndelta = 0.05\n[state]\nalpha = 2, 0\n",
                           "[experiment]\nkind = rwa_validity\n[params]\ndelta = 0.05\n[state]\nalpha = 1, 0\n"
                           "[sweep]\ndeltas = 0.01, 0.05\namplitudes = 0, 1\n",
                           "[experiment]\nkind = feasibility\n[platforms]\nnames = ca40, toy\n"
                           "[platform.toy]\ndelta = 0.01\nomega = 2\n"}) {
    const auto c = parse_config_text(text);
    const auto echo = echo_config(c);
    CHECK(parse_config_text(echo) == c);
    CHECK(echo_config(parse_config_text(echo)) == echo);
  }
}

TEST_CASE("per-kind defaults") {
  const auto cat = parse_config_text("[experiment]\nkind = cat_state\n[params]\ndelta = 0.05\n[state]\nalpha = 2, 0\n");
  CHECK(cat.oracle == OracleMode::Grid);
  CHECK(cat.models == std::vector{ModelKind::QgRwa, ModelKind::Sceg});
  CHECK(cat.time.t_final * 0.05 == doctest::Approx(std::numbers::pi / 4));

  const auto rwa = parse_config_text("[experiment]\nkind = rwa_validity\n[params]\ndelta = 0.05\n[state]\nalpha = 3, 0\n");
  CHECK(rwa.sweep_deltas == std::vector{0.05});
  CHECK(rwa.sweep_amplitudes == std::vector{3.0});

  const auto feas = parse_config_text("[experiment]\nkind = feasibility\n");
  REQUIRE(feas.platforms.size() == 1);
  CHECK(feas.platforms[0].name == "ca40");
  CHECK(feas.oracle == OracleMode::None);
}

TEST_CASE("physical parameters and presets") {
  const auto c = parse_config_text(
      "[experiment]\nkind = swap\n[params]\npreset = ca40\nseparation = 2e-10\n[state]\nalpha = 1, 0\n");
  CHECK(c.params.physical);
  CHECK(c.params.si.separation == 2e-10);
  const auto p = c.params.resolve();
  CHECK(p.coupling_rate() == doctest::Approx(platform_preset("ca40")->coupling_rate() / 8.0));
  CHECK(parse_config_text(echo_config(c)) == c);
}

TEST_CASE("strict parsing reports the field") {
  CHECK(field_of("[experiment]\nkind = swap\nkinds = 1\n[params]\ndelta = 0.1\n") == "experiment.kinds");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.1\n[stat]\nalpha = 1, 0\n") == "stat");
  CHECK(field_of("[experiment]\nkind = teleport\n") == "experiment.kind");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = abc\n") == "params.delta");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.7\n") == "params.delta");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.1\n[state]\nalpha = 1\n") == "state.alpha");
  CHECK(field_of("[experiment]\nkind = swap\nmodels = qg_full, qg_full\n[params]\ndelta = 0.1\n") ==
        "experiment.models");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.1\n[grid]\npoints = 100\n") == "grid.points");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.1\n[integrator]\ngrid_dt_fraction = 0.01\n") ==
        "integrator.grid_dt_fraction");
  CHECK(field_of("[experiment]\nkind = cat_state\n[params]\ndelta = 0.1\n[oracle]\nmode = ode\n") == "oracle.mode");
  CHECK(field_of("[experiment]\nkind = cat_state\n[params]\ndelta = 0.1\n[grid]\nframe = normal\n") == "grid.frame");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0\n") == "params.delta");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.1\nmass = 1\n") == "params.delta");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\npreset = ca41\n") == "params.preset");
  CHECK(field_of("[experiment]\nkind = rwa_validity\n[params]\ndelta = 0.1\n[sweep]\ndeltas = 0.3\n") ==
        "sweep.deltas");
  CHECK(field_of("[experiment]\nkind = feasibility\n[platforms]\nnames = nowhere\n") == "platforms.names");
  CHECK(field_of("[experiment]\nkind = swap\n[params]\ndelta = 0.1\n[tolerances]\nswap_fidelity = -1\n") ==
        "tolerances.swap_fidelity");
  CHECK(field_of("[experiment]\nkind = swap\n") == "params");
  CHECK(field_of("[experiment]\n") == "experiment.kind");
}

TEST_CASE("programmatic edits are revalidated") {
  auto c = parse_config_text(kSwap);
  CHECK_NOTHROW(validate(c));
  c.threads = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.threads = 1;
  c.grid.points = 96;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("missing config file") {
  CHECK_THROWS_AS(parse_config(std::filesystem::path("/nonexistent/gravswap.ini")), Error);
}

TEST_CASE("oracle mode helpers") {
  CHECK(uses_ode(OracleMode::All));
  CHECK(uses_grid(OracleMode::All));
  CHECK_FALSE(uses_grid(OracleMode::Ode));
  CHECK(to_string(OracleMode::None) == "none");
  CHECK(to_string(ExperimentKind::RwaValidity) == "rwa_validity");
}
