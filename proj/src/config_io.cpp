#include "gravswap/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "gravswap/errors.hpp"
#include "gravswap/format.hpp"

namespace gravswap {

namespace pt = boost::property_tree;

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Swap: return "swap";
    case ExperimentKind::RwaValidity: return "rwa_validity";
    case ExperimentKind::CatState: return "cat_state";
    case ExperimentKind::Feasibility: return "feasibility";
  }
  return "?";
}

std::string_view to_string(OracleMode m) {
  switch (m) {
    case OracleMode::None: return "none";
    case OracleMode::Ode: return "ode";
    case OracleMode::Grid: return "grid";
    case OracleMode::All: return "all";
  }
  return "?";
}

bool uses_ode(OracleMode m) { return m == OracleMode::Ode || m == OracleMode::All; }
bool uses_grid(OracleMode m) { return m == OracleMode::Grid || m == OracleMode::All; }

DimensionlessParams ParamsSpec::resolve() const {
  return physical ? derive_dimensionless(si) : from_coupling(delta, omega);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

double to_double(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) throw ConfigError(field, "expected a number, got '" + s + "'");
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

std::uint64_t to_unsigned(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw ConfigError(field, "expected a non-negative integer, got '" + s + "'");
  return v;
}

bool to_bool(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError(field, "expected true or false, got '" + s + "'");
}

ComplexAmplitude to_amplitude(const std::string& text, const std::string& field) {
  const auto parts = split_list(text);
  if (parts.size() != 2) throw ConfigError(field, "expected 're, im', got '" + trim(text) + "'");
  return {to_double(parts[0], field), to_double(parts[1], field)};
}

std::vector<double> to_doubles(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& p : split_list(text)) out.push_back(to_double(p, field));
  return out;
}

/// One INI section with strict key checking.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name, std::set<std::string> allowed)
      : tree_(tree), name_(std::move(name)) {
    if (!tree_) return;
    for (const auto& [key, value] : *tree_) {
      if (!allowed.contains(key)) throw ConfigError(name_ + "." + key, "unknown key");
      (void)value;
    }
  }

  bool present() const { return tree_ != nullptr; }
  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }
  std::string field(const std::string& key) const { return name_ + "." + key; }
  std::string raw(const std::string& key) const { return tree_->get<std::string>(key); }

  double number(const std::string& key, double fallback) const {
    return has(key) ? to_double(raw(key), field(key)) : fallback;
  }
  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? to_unsigned(raw(key), field(key)) : fallback;
  }
  bool flag(const std::string& key, bool fallback) const { return has(key) ? to_bool(raw(key), field(key)) : fallback; }
  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? trim(raw(key)) : fallback;
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

const pt::ptree* child(const pt::ptree& root, const std::string& name) {
  auto it = root.find(name);
  return it == root.not_found() ? nullptr : &it->second;
}

const std::set<std::string> kParamKeys{"delta", "omega", "preset", "mass", "trap_frequency", "separation", "G", "hbar"};

ParamsSpec parse_params(const Section& s, const std::string& implicit_preset = {}) {
  ParamsSpec spec;
  const bool direct = s.has("delta") || s.has("omega");
  const bool si = s.has("preset") || s.has("mass") || s.has("trap_frequency") || s.has("separation") ||
                  s.has("G") || s.has("hbar") || (!implicit_preset.empty() && !direct);
  if (direct && si) throw ConfigError(s.field("delta"), "give either delta/omega or physical parameters, not both");

  if (si) {
    spec.physical = true;
    spec.preset = s.text("preset", implicit_preset);
    if (!spec.preset.empty()) {
      auto preset = platform_preset(spec.preset);
      if (!preset) throw ConfigError(s.field("preset"), "unknown preset '" + spec.preset + "'");
      spec.si = *preset;
    } else {
      for (const char* key : {"mass", "trap_frequency", "separation"})
        if (!s.has(key)) throw ConfigError(s.field(key), "required when no preset is given");
    }
    spec.si.mass = s.number("mass", spec.si.mass);
    spec.si.omega = s.number("trap_frequency", spec.si.omega);
    spec.si.separation = s.number("separation", spec.si.separation);
    spec.si.G = s.number("G", spec.si.G);
    spec.si.hbar = s.number("hbar", spec.si.hbar);
    try {
      (void)spec.resolve();
    } catch (const ParameterError& e) {
      throw ConfigError(s.field("mass"), e.what());
    }
  } else {
    spec.delta = s.number("delta", 0.0);
    spec.omega = s.number("omega", 1.0);
    try {
      (void)spec.resolve();
    } catch (const ParameterError& e) {
      throw ConfigError(s.field(s.has("omega") && spec.omega <= 0 ? "omega" : "delta"), e.what());
    }
  }
  return spec;
}

void echo_params(std::ostringstream& os, const ParamsSpec& p) {
  if (p.physical) {
    if (!p.preset.empty()) os << "preset = " << p.preset << '\n';
    os << "mass = " << format_double(p.si.mass) << '\n'
       << "trap_frequency = " << format_double(p.si.omega) << '\n'
       << "separation = " << format_double(p.si.separation) << '\n'
       << "G = " << format_double(p.si.G) << '\n'
       << "hbar = " << format_double(p.si.hbar) << '\n';
  } else {
    os << "delta = " << format_double(p.delta) << '\n' << "omega = " << format_double(p.omega) << '\n';
  }
}

std::vector<ModelKind> default_models(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Swap: return {kAllModels.begin(), kAllModels.end()};
    case ExperimentKind::RwaValidity: return {ModelKind::QgFull, ModelKind::Sceg};
    case ExperimentKind::CatState: return {ModelKind::QgRwa, ModelKind::Sceg};
    case ExperimentKind::Feasibility: return {};
  }
  return {};
}

OracleMode default_oracle(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Swap:
    case ExperimentKind::RwaValidity: return OracleMode::Ode;
    case ExperimentKind::CatState: return OracleMode::Grid;
    case ExperimentKind::Feasibility: return OracleMode::None;
  }
  return OracleMode::None;
}

double default_t_final(ExperimentKind k, const DimensionlessParams& p) {
  if (p.delta <= 0.0) return 0.0;
  switch (k) {
    case ExperimentKind::Swap:
    case ExperimentKind::RwaValidity: return swap_time(p);
    case ExperimentKind::CatState: return 0.5 * swap_time(p);
    case ExperimentKind::Feasibility: return 0.0;
  }
  return 0.0;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

std::string amplitude_text(ComplexAmplitude a) { return format_double(a.real()) + ", " + format_double(a.imag()); }

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.kind != ExperimentKind::Feasibility) {
    const auto p = c.params.resolve();
    if (!(p.delta > 0.0)) throw ConfigError("params.delta", "must be positive for this experiment");
    if (c.models.empty()) throw ConfigError("experiment.models", "at least one model is required");
    if (!(c.time.t_final > 0.0)) throw ConfigError("time.t_final", "must be positive");
    if (c.time.samples < 1) throw ConfigError("time.samples", "must be at least 1");
    if (c.time.grid_samples < 1) throw ConfigError("time.grid_samples", "must be at least 1");
  }
  if (c.kind == ExperimentKind::CatState && !uses_grid(c.oracle))
    throw ConfigError("oracle.mode", "the cat-state experiment needs the grid oracle (grid or all)");
  if (c.kind == ExperimentKind::Feasibility && c.platforms.empty())
    throw ConfigError("platforms.names", "at least one platform is required");
  if (c.kind == ExperimentKind::RwaValidity) {
    if (c.sweep_deltas.empty()) throw ConfigError("sweep.deltas", "must not be empty");
    if (c.sweep_amplitudes.empty()) throw ConfigError("sweep.amplitudes", "must not be empty");
    for (double d : c.sweep_deltas)
      if (!(d > 0.0) || d > kLargeCouplingWarning)
        throw ConfigError("sweep.deltas", "values must lie in (0, " + format_double(kLargeCouplingWarning) + "]");
    for (double a : c.sweep_amplitudes)
      if (a < 0.0) throw ConfigError("sweep.amplitudes", "values must be non-negative");
    if (c.sweep_samples_per_period < 8) throw ConfigError("sweep.samples_per_period", "must be at least 8");
  }
  if (!(c.amplitude_bound >= 0.0)) throw ConfigError("state.amplitude_bound", "must be non-negative");
  if (c.threads < 1) throw ConfigError("experiment.threads", "must be at least 1");
  if (!(c.grid.half_extent > 0.0)) throw ConfigError("grid.half_extent", "must be positive");
  if (c.grid.points < 64 || (c.grid.points & (c.grid.points - 1)) != 0)
    throw ConfigError("grid.points", "must be a power of two >= 64");
  const auto& ic = c.integrator;
  if (!(ic.grid_dt_fraction > 0.0) || ic.grid_dt_fraction > ic.max_grid_dt_fraction)
    throw ConfigError("integrator.grid_dt_fraction", "must lie in (0, max_grid_dt_fraction]");
  if (!(ic.rk_step_fraction > 0.0)) throw ConfigError("integrator.rk_step_fraction", "must be positive");
  if (ic.rk_tolerance < 0.0) throw ConfigError("integrator.rk_tolerance", "must be non-negative");
  if (!(ic.norm_drift_rate_limit > 0.0)) throw ConfigError("integrator.norm_drift_rate_limit", "must be positive");
  if (!(ic.leakage_limit > 0.0)) throw ConfigError("integrator.leakage_limit", "must be positive");
  if (c.output.empty()) throw ConfigError("experiment.output", "must not be empty");
}

ExperimentConfig parse_config_text(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream is(text);
    pt::ini_parser::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", std::string("syntax error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  static const std::set<std::string> sections{"experiment", "params", "state",      "time",  "oracle",
                                              "grid",       "integrator", "tolerances", "sweep", "platforms"};
  for (const auto& [name, sub] : root) {
    if (sub.empty() && !sub.data().empty()) throw ConfigError(name, "key outside of any section");
    if (!sections.contains(name) && name.rfind("platform.", 0) != 0) throw ConfigError(name, "unknown section");
  }

  ExperimentConfig c;
  Section exp(child(root, "experiment"), "experiment", {"kind", "models", "seed", "threads", "output"});
  if (!exp.has("kind")) throw ConfigError("experiment.kind", "required");
  const std::string kind = exp.text("kind", "");
  if (kind == "swap")
    c.kind = ExperimentKind::Swap;
  else if (kind == "rwa_validity" || kind == "rwa-validity")
    c.kind = ExperimentKind::RwaValidity;
  else if (kind == "cat_state" || kind == "cat-state")
    c.kind = ExperimentKind::CatState;
  else if (kind == "feasibility")
    c.kind = ExperimentKind::Feasibility;
  else
    throw ConfigError("experiment.kind", "unknown experiment '" + kind + "'");

  if (exp.has("models")) {
    for (const auto& name : split_list(exp.raw("models"))) {
      auto m = parse_model(name);
      if (!m) throw ConfigError("experiment.models", "unknown model '" + name + "'");
      if (std::find(c.models.begin(), c.models.end(), *m) != c.models.end())
        throw ConfigError("experiment.models", "duplicate model '" + name + "'");
      c.models.push_back(*m);
    }
  } else {
    c.models = default_models(c.kind);
  }
  c.seed = exp.count("seed", 0);
  const auto threads = exp.count("threads", 1);
  if (threads > 1024) throw ConfigError("experiment.threads", "at most 1024");
  c.threads = static_cast<unsigned>(threads);
  c.output = exp.text("output", c.output);

  Section params(child(root, "params"), "params", kParamKeys);
  if (!params.present() && c.kind != ExperimentKind::Feasibility) throw ConfigError("params", "section required");
  c.params = parse_params(params);
  const DimensionlessParams p = c.params.resolve();

  Section state(child(root, "state"), "state", {"alpha", "beta", "random_pairs", "amplitude_bound"});
  if (state.has("alpha")) c.state.alpha = to_amplitude(state.raw("alpha"), "state.alpha");
  if (state.has("beta")) c.state.beta = to_amplitude(state.raw("beta"), "state.beta");
  c.random_pairs = state.count("random_pairs", 0);
  c.amplitude_bound = state.number("amplitude_bound", c.amplitude_bound);

  Section time(child(root, "time"), "time", {"t_final", "samples", "grid_samples"});
  const bool cat = c.kind == ExperimentKind::CatState;
  c.time.t_final = time.number("t_final", default_t_final(c.kind, p));
  c.time.samples = time.count("samples", cat ? 8 : 100);
  c.time.grid_samples = time.count("grid_samples", cat ? 8 : 10);

  Section oracle(child(root, "oracle"), "oracle", {"mode"});
  if (oracle.has("mode")) {
    const std::string m = oracle.text("mode", "");
    if (m == "none")
      c.oracle = OracleMode::None;
    else if (m == "ode")
      c.oracle = OracleMode::Ode;
    else if (m == "grid")
      c.oracle = OracleMode::Grid;
    else if (m == "all")
      c.oracle = OracleMode::All;
    else
      throw ConfigError("oracle.mode", "expected none, ode, grid or all");
  } else {
    c.oracle = default_oracle(c.kind);
  }

  Section sweep(child(root, "sweep"), "sweep", {"deltas", "amplitudes", "samples_per_period"});
  if (c.kind == ExperimentKind::RwaValidity) {
    c.sweep_deltas = sweep.has("deltas") ? to_doubles(sweep.raw("deltas"), "sweep.deltas")
                                         : std::vector<double>{p.delta};
    c.sweep_amplitudes = sweep.has("amplitudes") ? to_doubles(sweep.raw("amplitudes"), "sweep.amplitudes")
                                                 : std::vector<double>{std::abs(c.state.alpha)};
  } else {
    if (sweep.has("deltas")) c.sweep_deltas = to_doubles(sweep.raw("deltas"), "sweep.deltas");
    if (sweep.has("amplitudes")) c.sweep_amplitudes = to_doubles(sweep.raw("amplitudes"), "sweep.amplitudes");
  }
  c.sweep_samples_per_period = sweep.count("samples_per_period", c.sweep_samples_per_period);

  Section grid(child(root, "grid"), "grid", {"points", "half_extent", "frame", "max_inits", "write_snapshots"});
  const auto points = grid.count("points", 256);
  if (points > 8192) throw ConfigError("grid.points", "at most 8192");
  c.grid.points = static_cast<int>(points);
  const double displacement =
      cat ? std::abs(c.state.alpha) : std::sqrt(std::norm(c.state.alpha) + std::norm(c.state.beta));
  c.grid.half_extent = grid.number("half_extent", GridSpec::for_displacement(displacement).half_extent);
  const std::string frame = grid.text("frame", "lab");
  if (frame == "lab")
    c.grid.frame = Frame::Lab;
  else if (frame == "normal")
    c.grid.frame = Frame::Normal;
  else
    throw ConfigError("grid.frame", "expected lab or normal");
  if (cat && c.grid.frame != Frame::Lab)
    throw ConfigError("grid.frame", "entanglement entropy needs the lab frame");
  c.grid.max_inits = grid.count("max_inits", 1);
  c.grid.write_snapshots = grid.flag("write_snapshots", false);

  Section integ(child(root, "integrator"), "integrator",
                {"grid_dt_fraction", "rk_step_fraction", "rk_tolerance", "norm_drift_rate_limit", "leakage_limit",
                 "max_grid_dt_fraction"});
  auto& ic = c.integrator;
  ic.grid_dt_fraction = integ.number("grid_dt_fraction", ic.grid_dt_fraction);
  ic.rk_step_fraction = integ.number("rk_step_fraction", ic.rk_step_fraction);
  ic.rk_tolerance = integ.number("rk_tolerance", ic.rk_tolerance);
  ic.norm_drift_rate_limit = integ.number("norm_drift_rate_limit", ic.norm_drift_rate_limit);
  ic.leakage_limit = integ.number("leakage_limit", ic.leakage_limit);
  ic.max_grid_dt_fraction = integ.number("max_grid_dt_fraction", ic.max_grid_dt_fraction);

  auto& t = c.tolerances;
  std::vector<std::pair<const char*, double*>> tol_fields{
      {"swap_fidelity", &t.swap_fidelity},
      {"moment_identity", &t.moment_identity},
      {"ode_agreement", &t.ode_agreement},
      {"grid_agreement", &t.grid_agreement},
      {"grid_width", &t.grid_width},
      {"norm_per_step", &t.norm_per_step},
      {"coherence", &t.coherence},
      {"envelope_ratio", &t.envelope_ratio},
      {"envelope_max_coupling", &t.envelope_max_coupling},
      {"linearity", &t.linearity},
      {"significance", &t.significance},
      {"entropy_oracle", &t.entropy_oracle},
      {"entropy_min", &t.entropy_min},
      {"product_entropy", &t.product_entropy},
      {"sceg_first_moment", &t.sceg_first_moment},
      {"sceg_purity_loss", &t.sceg_purity_loss},
      {"impractical_time", &t.impractical_time},
      {"reference_coupling_rate", &t.reference_coupling_rate},
      {"coupling_rate_decades", &t.coupling_rate_decades},
      {"reference_swap_time", &t.reference_swap_time},
  };
  std::set<std::string> tol_keys;
  for (const auto& [k, v] : tol_fields) tol_keys.insert(k);
  Section tol(child(root, "tolerances"), "tolerances", tol_keys);
  for (const auto& [k, v] : tol_fields) {
    *v = tol.number(k, *v);
    if (*v < 0.0) throw ConfigError(std::string("tolerances.") + k, "must be non-negative");
  }

  Section plats(child(root, "platforms"), "platforms", {"names"});
  std::vector<std::string> names;
  if (plats.has("names"))
    names = split_list(plats.raw("names"));
  else if (c.kind == ExperimentKind::Feasibility)
    names = {"ca40"};
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw ConfigError("platforms.names", "empty platform name");
    if (!seen.insert(name).second) throw ConfigError("platforms.names", "duplicate platform '" + name + "'");
    const std::string section = "platform." + name;
    Section ps(child(root, section), section, kParamKeys);
    if (!ps.present() && !platform_preset(name))
      throw ConfigError("platforms.names", "'" + name + "' is neither a preset nor a [" + section + "] section");
    c.platforms.push_back({name, parse_params(ps, ps.present() ? std::string{} : name)});
  }
  for (const auto& [name, sub] : root) {
    if (name.rfind("platform.", 0) == 0 && !seen.contains(name.substr(9)))
      throw ConfigError(name, "section not listed in platforms.names");
    (void)sub;
  }

  validate(c);
  return c;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string() + ": cannot open config");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::string echo_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\n" << "kind = " << to_string(c.kind) << '\n' << "models = ";
  for (std::size_t i = 0; i < c.models.size(); ++i) os << (i ? ", " : "") << to_string(c.models[i]);
  os << '\n' << "seed = " << c.seed << '\n' << "threads = " << c.threads << '\n' << "output = " << c.output << "\n\n";

  os << "[params]\n";
  echo_params(os, c.params);

  os << "\n[state]\n"
     << "alpha = " << amplitude_text(c.state.alpha) << '\n'
     << "beta = " << amplitude_text(c.state.beta) << '\n'
     << "random_pairs = " << c.random_pairs << '\n'
     << "amplitude_bound = " << format_double(c.amplitude_bound) << "\n\n";

  os << "[time]\n"
     << "t_final = " << format_double(c.time.t_final) << '\n'
     << "samples = " << c.time.samples << '\n'
     << "grid_samples = " << c.time.grid_samples << "\n\n";

  os << "[oracle]\nmode = " << to_string(c.oracle) << "\n\n";

  os << "[grid]\n"
     << "points = " << c.grid.points << '\n'
     << "half_extent = " << format_double(c.grid.half_extent) << '\n'
     << "frame = " << to_string(c.grid.frame) << '\n'
     << "max_inits = " << c.grid.max_inits << '\n'
     << "write_snapshots = " << (c.grid.write_snapshots ? "true" : "false") << "\n\n";

  const auto& ic = c.integrator;
  os << "[integrator]\n"
     << "grid_dt_fraction = " << format_double(ic.grid_dt_fraction) << '\n'
     << "rk_step_fraction = " << format_double(ic.rk_step_fraction) << '\n'
     << "rk_tolerance = " << format_double(ic.rk_tolerance) << '\n'
     << "norm_drift_rate_limit = " << format_double(ic.norm_drift_rate_limit) << '\n'
     << "leakage_limit = " << format_double(ic.leakage_limit) << '\n'
     << "max_grid_dt_fraction = " << format_double(ic.max_grid_dt_fraction) << "\n\n";

  const auto& t = c.tolerances;
  os << "[tolerances]\n"
     << "swap_fidelity = " << format_double(t.swap_fidelity) << '\n'
     << "moment_identity = " << format_double(t.moment_identity) << '\n'
     << "ode_agreement = " << format_double(t.ode_agreement) << '\n'
     << "grid_agreement = " << format_double(t.grid_agreement) << '\n'
     << "grid_width = " << format_double(t.grid_width) << '\n'
     << "norm_per_step = " << format_double(t.norm_per_step) << '\n'
     << "coherence = " << format_double(t.coherence) << '\n'
     << "envelope_ratio = " << format_double(t.envelope_ratio) << '\n'
     << "envelope_max_coupling = " << format_double(t.envelope_max_coupling) << '\n'
     << "linearity = " << format_double(t.linearity) << '\n'
     << "significance = " << format_double(t.significance) << '\n'
     << "entropy_oracle = " << format_double(t.entropy_oracle) << '\n'
     << "entropy_min = " << format_double(t.entropy_min) << '\n'
     << "product_entropy = " << format_double(t.product_entropy) << '\n'
     << "sceg_first_moment = " << format_double(t.sceg_first_moment) << '\n'
     << "sceg_purity_loss = " << format_double(t.sceg_purity_loss) << '\n'
     << "impractical_time = " << format_double(t.impractical_time) << '\n'
     << "reference_coupling_rate = " << format_double(t.reference_coupling_rate) << '\n'
     << "coupling_rate_decades = " << format_double(t.coupling_rate_decades) << '\n'
     << "reference_swap_time = " << format_double(t.reference_swap_time) << "\n\n";

  os << "[sweep]\n"
     << "deltas = " << join(c.sweep_deltas) << '\n'
     << "amplitudes = " << join(c.sweep_amplitudes) << '\n'
     << "samples_per_period = " << c.sweep_samples_per_period << "\n\n";

  os << "[platforms]\nnames = ";
  for (std::size_t i = 0; i < c.platforms.size(); ++i) os << (i ? ", " : "") << c.platforms[i].name;
  os << '\n';
  for (const auto& pl : c.platforms) {
    os << "\n[platform." << pl.name << "]\n";
    echo_params(os, pl.params);
  }
  return os.str();
}

}  // namespace gravswap
