#include "gravswap/emit.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gravswap/digest.hpp"
#include "gravswap/errors.hpp"
#include "gravswap/experiments.hpp"
#include "gravswap/format.hpp"
#include "gravswap/snapshot.hpp"

namespace gravswap {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return csv_field(std::get<std::string>(c));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path.string() + ": cannot open for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  os.close();
  if (!os) throw IoError(path.string() + ": write failed");
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + ' ' : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
  out += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += "\r\n";
  }
  return out;
}

std::string render_summary(const ExperimentReport& r) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& v : r.verdicts) passed += v.passed ? 1 : 0;
  os << "gravswap " << r.manifest.version << ", experiment " << to_string(r.kind) << "\n";
  os << "result: " << (r.passed() ? "PASS" : "FAIL") << " (" << passed << " of " << r.verdicts.size()
     << " verdicts passed)\n\n";

  os << "verdicts\n";
  if (r.verdicts.empty()) os << "  (none)\n";
  for (const auto& v : r.verdicts) {
    os << "  " << (v.passed ? "PASS  " : "FAIL  ") << pad(v.name, 34) << format_double(v.value) << ' '
       << v.comparison << ' ' << format_double(v.threshold) << '\n';
    if (!v.detail.empty()) os << "        " << v.detail << '\n';
  }

  os << "\nmetrics\n";
  if (r.metrics.empty()) os << "  (none)\n";
  for (const auto& m : r.metrics) {
    os << "  " << pad(m.name, 40) << format_double(m.value);
    if (!m.note.empty()) os << "  (" << m.note << ')';
    os << '\n';
  }

  if (!r.notes.empty()) {
    os << "\nnotes\n";
    for (const auto& n : r.notes) os << "  - " << n << '\n';
  }

  os << "\ndata files\n";
  for (const auto& t : r.tables) os << "  " << t.name << ".csv (" << t.rows.size() << " rows)\n";
  for (const auto& s : r.snapshots) os << "  " << s.name << ".gsnap\n";
  return os.str();
}

std::string render_plots(const ExperimentReport& r) {
  ordered_json figures = ordered_json::array();
  for (const auto& p : r.plots) {
    ordered_json series = ordered_json::array();
    for (const auto& s : p.series) {
      ordered_json filter = ordered_json::object();
      for (const auto& [k, v] : s.filter) filter[k] = v;
      series.push_back({{"label", s.label}, {"y", s.y}, {"filter", filter}});
    }
    figures.push_back({{"name", p.name},
                       {"title", p.title},
                       {"data", p.table + ".csv"},
                       {"x", {{"column", p.x}, {"label", p.x_label}}},
                       {"y", {{"label", p.y_label}, {"scale", p.y_scale}}},
                       {"series", series}});
  }
  ordered_json doc = {{"format", "gravswap-plots"}, {"version", 1}, {"figures", figures}};
  return doc.dump(2) + "\n";
}

std::string render_manifest(const ExperimentReport& r, const std::map<std::string, std::string>& output_digests) {
  const auto& m = r.manifest;
  ordered_json tolerances = ordered_json::object();
  for (const auto& [k, v] : m.tolerances) tolerances[k] = v;
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : m.input_digests) inputs[k] = v;
  ordered_json outputs = ordered_json::object();
  for (const auto& [k, v] : output_digests) outputs[k] = v;
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name},
                        {"passed", v.passed},
                        {"value", format_double(v.value)},
                        {"comparison", v.comparison},
                        {"threshold", format_double(v.threshold)}});
  ordered_json doc = {{"format", "gravswap-manifest"},
                      {"format_version", 1},
                      {"artifact_version", m.version},
                      {"experiment", std::string(to_string(r.kind))},
                      {"timestamp", m.timestamp},
                      {"seed", m.seed},
                      {"threads", m.threads},
                      {"config", m.config_echo},
                      {"config_digest", sha256_hex(m.config_echo)},
                      {"tolerances", tolerances},
                      {"input_digests", inputs},
                      {"output_digests", outputs},
                      {"verdicts", verdicts},
                      {"passed", r.passed()}};
  return doc.dump(2) + "\n";
}

EmittedFiles emit_report(const ExperimentReport& r, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string() + ": cannot create directory: " + ec.message());

  EmittedFiles out;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto path = out_dir / name;
    write_file(path, content);
    out.files.push_back(path);
    out.output_digests[name] = sha256_hex(content);
  };
  for (const auto& t : r.tables) put(t.name + ".csv", render_csv(t));
  put("plots.json", render_plots(r));
  put("summary.txt", render_summary(r));
  for (const auto& s : r.snapshots) {
    const auto path = out_dir / (s.name + ".gsnap");
    write_snapshot(s.state, path);
    out.files.push_back(path);
    out.output_digests[s.name + ".gsnap"] = sha256_file(path);
  }
  const auto manifest = out_dir / "manifest.json";
  write_file(manifest, render_manifest(r, out.output_digests));
  out.files.push_back(manifest);
  return out;
}

ManifestRecord read_manifest(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string() + ": cannot open manifest");
  ManifestRecord rec;
  try {
    const auto doc = nlohmann::json::parse(is);
    if (doc.at("format").get<std::string>() != "gravswap-manifest")
      throw IoError(path.string() + ": not a gravswap manifest");
    rec.kind = doc.at("experiment").get<std::string>();
    rec.config_echo = doc.at("config").get<std::string>();
    rec.config_digest = doc.at("config_digest").get<std::string>();
    rec.version = doc.at("artifact_version").get<std::string>();
    rec.seed = doc.at("seed").get<std::uint64_t>();
    rec.threads = doc.at("threads").get<unsigned>();
    for (const auto& [k, v] : doc.at("output_digests").items()) rec.output_digests[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": malformed manifest: " + e.what());
  }
  return rec;
}

ReplayResult replay_manifest(const std::filesystem::path& manifest, const std::filesystem::path& out_dir) {
  const ManifestRecord rec = read_manifest(manifest);
  if (sha256_hex(rec.config_echo) != rec.config_digest)
    throw IoError(manifest.string() + ": recorded configuration does not match its digest");

  ReplayResult result;
  result.report = run_experiment(parse_config_text(rec.config_echo));
  result.emitted = emit_report(result.report, out_dir);
  for (const auto& [name, digest] : rec.output_digests) {
    auto it = result.emitted.output_digests.find(name);
    if (it == result.emitted.output_digests.end() || it->second != digest) result.mismatches.push_back(name);
  }
  for (const auto& [name, digest] : result.emitted.output_digests)
    if (!rec.output_digests.contains(name)) result.mismatches.push_back(name);
  return result;
}

}  // namespace gravswap
