#include "bflab/report.hpp"

#include <sys/utsname.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bflab/errors.hpp"
#include "bflab/kernels.hpp"
#include "bflab/svg.hpp"

namespace bflab {

using ojson = nlohmann::ordered_json;

Platform Platform::current() {
  Platform p;
  utsname u{};
  if (uname(&u) == 0) {
    p.os = std::string(u.sysname) + " " + u.release;
    p.arch = u.machine;
  }
#if defined(__clang__)
  p.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  p.compiler = "gcc " __VERSION__;
#else
  p.compiler = "unknown";
#endif
  p.kernels = std::string(kernels::active().name);
  p.hardware_threads = std::thread::hardware_concurrency();
  return p;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t RunManifest::hash() const {
  std::string text = "version=" + version + "\n" + config_text + "kernels=" + platform.kernels + "\n";
  for (const auto& [k, v] : verdicts) text += "verdict:" + k + "=" + v + "\n";
  return fnv1a64(text);
}

std::string RunManifest::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double json_number(const ojson& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::optional<double> read_optional(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ojson manifest_json(const RunManifest& m) {
  ojson config = ojson::object();
  std::istringstream in(m.config_text);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) config[line.substr(0, eq)] = line.substr(eq + 1);
  }
  ojson j;
  j["version"] = m.version;
  j["config"] = config;
  j["platform"] = {{"os", m.platform.os},
                   {"arch", m.platform.arch},
                   {"compiler", m.platform.compiler},
                   {"kernels", m.platform.kernels},
                   {"hardware_threads", m.platform.hardware_threads}};
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["verdicts"] = m.verdicts;
  j["hash"] = m.hash_hex();
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

svg::LinePlot plot_vs_n(const ExperimentReport& rep, const std::string& hash) {
  svg::LinePlot plot{rep.experiment + ": log2 value vs n", "n", "log2 value", {}, "manifest=" + hash};
  std::map<std::string, svg::Series> by_q;
  for (const auto& r : rep.rows)
    if (!r.t && r.value > 0.0) {
      auto& s = by_q[r.quantity];
      s.name = r.quantity;
      s.points.emplace_back(r.n, std::log2(r.value));
    }
  for (auto& [q, s] : by_q)
    if (s.points.size() >= 2) plot.series.push_back(std::move(s));
  return plot;
}

svg::LinePlot plot_vs_t(const ExperimentReport& rep, const std::string& hash) {
  svg::LinePlot plot{rep.experiment + ": value vs t", "t", "value", {}, "manifest=" + hash};
  std::map<std::pair<std::string, int>, svg::Series> by_q;
  for (const auto& r : rep.rows)
    if (r.t) {
      auto& s = by_q[{r.quantity, r.n}];
      s.name = r.quantity + " n=" + std::to_string(r.n);
      s.points.emplace_back(*r.t, r.value);
    }
  for (auto& [q, s] : by_q)
    if (s.points.size() >= 2) plot.series.push_back(std::move(s));
  return plot;
}

}  // namespace

std::string verdict_of(const ExperimentReport& rep) { return rep.passed() ? "PASS" : "FAIL"; }

std::string to_csv(const ExperimentReport& rep, const std::string& manifest_hash) {
  std::string out = "experiment,n,t,quantity,value\n";
  for (const auto& r : rep.rows) {
    out += rep.experiment + "," + std::to_string(r.n) + "," + (r.t ? g17(*r.t) : std::string()) + "," +
           r.quantity + "," + g17(r.value) + "\n";
  }
  out += "# manifest=" + manifest_hash + "\n";
  return out;
}

std::vector<ReportRow> parse_csv_rows(std::string_view csv) {
  std::vector<ReportRow> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
      cols.push_back(line.substr(start, pos - start));
    cols.push_back(line.substr(start));
    if (cols.size() != 5) throw std::invalid_argument("malformed CSV row: " + line);
    ReportRow r;
    r.n = std::stoi(cols[1]);
    if (!cols[2].empty()) r.t = std::strtod(cols[2].c_str(), nullptr);
    r.quantity = cols[3];
    r.value = std::strtod(cols[4].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_json(const ExperimentReport& rep, const RunManifest& manifest) {
  ojson j;
  j["experiment"] = rep.experiment;
  j["verdict"] = verdict_of(rep);
  j["manifest"] = manifest_json(manifest);
  ojson rows = ojson::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n}, {"t", optional_number(r.t)}, {"quantity", r.quantity}, {"value", r.value}});
  j["rows"] = rows;
  ojson fits = ojson::array();
  for (const auto& f : rep.fits)
    fits.push_back({{"name", f.name},
                    {"slope", f.fit.slope},
                    {"intercept", f.fit.intercept},
                    {"residual", f.fit.residual},
                    {"points", f.fit.points}});
  j["fits"] = fits;
  ojson checks = ojson::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"lower", optional_number(c.lower)},
                      {"upper", optional_number(c.upper)},
                      {"passed", c.passed},
                      {"note", c.note}});
  j["checks"] = checks;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

ParsedReport parse_json_report(std::string_view text) {
  const ojson j = ojson::parse(text);
  ParsedReport out;
  out.report.experiment = j.at("experiment").get<std::string>();
  out.verdict = j.at("verdict").get<std::string>();
  for (const auto& r : j.at("rows"))
    out.report.rows.push_back({r.at("n").get<int>(), read_optional(r.at("t")), r.at("quantity").get<std::string>(),
                               json_number(r.at("value"))});
  for (const auto& f : j.at("fits"))
    out.report.fits.push_back({f.at("name").get<std::string>(),
                               {json_number(f.at("slope")), json_number(f.at("intercept")),
                                json_number(f.at("residual")), f.at("points").get<std::size_t>()}});
  for (const auto& c : j.at("checks"))
    out.report.checks.push_back({c.at("name").get<std::string>(), json_number(c.at("measured")),
                                 read_optional(c.at("lower")), read_optional(c.at("upper")),
                                 c.at("passed").get<bool>(), c.at("note").get<std::string>()});
  out.report.notes = j.at("notes").get<std::vector<std::string>>();

  const auto& m = j.at("manifest");
  out.manifest.version = m.at("version").get<std::string>();
  for (const auto& [k, v] : m.at("config").items()) out.manifest.config_text += k + "=" + v.get<std::string>() + "\n";
  const auto& p = m.at("platform");
  out.manifest.platform = {p.at("os").get<std::string>(), p.at("arch").get<std::string>(),
                           p.at("compiler").get<std::string>(), p.at("kernels").get<std::string>(),
                           p.at("hardware_threads").get<unsigned>()};
  out.manifest.wall_clock_seconds = m.at("wall_clock_seconds").get<std::map<std::string, double>>();
  out.manifest.verdicts = m.at("verdicts").get<std::map<std::string, std::string>>();
  out.manifest_hash = m.at("hash").get<std::string>();
  return out;
}

std::vector<std::string> write_artifacts(const std::string& out_dir, const ExperimentReport& rep,
                                         const RunManifest& manifest, bool svg) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string hash = manifest.hash_hex();
  const fs::path base = fs::path(out_dir) / rep.experiment;
  std::vector<std::string> written;
  auto emit = [&](const fs::path& path, const std::string& text) {
    write_file(path, text);
    written.push_back(path.string());
  };
  emit(base.string() + ".csv", to_csv(rep, hash));
  emit(base.string() + ".json", to_json(rep, manifest));
  if (svg) {
    const auto by_n = plot_vs_n(rep, hash);
    if (!by_n.series.empty()) emit(base.string() + "_n.svg", svg::render(by_n));
    const auto by_t = plot_vs_t(rep, hash);
    if (!by_t.series.empty()) emit(base.string() + "_t.svg", svg::render(by_t));
  }
  return written;
}

std::vector<std::string> write_failed_artifacts(const std::string& out_dir, const std::string& experiment,
                                                const RunManifest& manifest, const std::string& reason) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path base = fs::path(out_dir) / experiment;
  std::string one_line = reason;
  for (char& c : one_line)
    if (c == '\n') c = ' ';
  const std::string hash = manifest.hash_hex();
  write_file(base.string() + ".csv",
             "experiment,n,t,quantity,value\n# FAILED: " + one_line + "\n# manifest=" + hash + "\n");
  ojson j;
  j["experiment"] = experiment;
  j["verdict"] = "FAILED";
  j["manifest"] = manifest_json(manifest);
  j["error"] = reason;
  write_file(base.string() + ".json", j.dump(2) + "\n");
  return {base.string() + ".csv", base.string() + ".json"};
}

}  // namespace bflab
