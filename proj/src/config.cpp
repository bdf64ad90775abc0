#include "bflab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "bflab/errors.hpp"

namespace bflab {

namespace {

const std::set<std::string, std::less<>> kKeys{"s",  "p",  "r", "case", "b",  "k1",    "k2",    "k3",
                                               "L",  "N",  "dt", "T",   "n_min", "n_max", "t_list",
                                               "out_dir"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    throw ConfigError("invalid number for " + key + ": '" + std::string(text) + "'");
  return v;
}

long long to_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    throw ConfigError("invalid integer for " + key + ": '" + std::string(text) + "'");
  return v;
}

std::string number_text(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap out;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    if (!kKeys.contains(key)) throw ConfigError("unknown key '" + key + "'");
    if (out.contains(key)) throw ConfigError("key '" + key + "' given twice");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig resolve_config(const ConfigMap& file, const ConfigMap& overrides) {
  ConfigMap kv = file;
  for (const auto& [k, v] : overrides) {
    if (!kKeys.contains(k)) throw ConfigError("unknown key '" + k + "'");
    kv[k] = v;
  }
  auto get = [&](const char* key) -> std::optional<std::string> {
    if (auto it = kv.find(key); it != kv.end()) return it->second;
    return std::nullopt;
  };

  RunConfig out;
  ExperimentConfig& e = out.experiment;
  if (auto v = get("s")) e.besov.s = to_double("s", *v);
  if (auto v = get("p")) e.besov.p = to_double("p", *v);
  if (auto v = get("r")) e.besov.r = to_double("r", *v);
  try {
    e.besov.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }

  const double b = get("b") ? to_double("b", *get("b")) : 2.0;
  std::optional<ParamCase> tag;
  if (auto v = get("case")) {
    if (*v == "i") tag = ParamCase::i;
    else if (*v == "ii") tag = ParamCase::ii;
    else throw ConfigError("case must be 'i' or 'ii', got '" + *v + "'");
  }
  const BFamilyParams base = tag == ParamCase::ii ? BFamilyParams::case_ii(b) : BFamilyParams::case_i(b);
  const std::optional<double> k[3] = {get("k1") ? std::optional(to_double("k1", *get("k1"))) : std::nullopt,
                                      get("k2") ? std::optional(to_double("k2", *get("k2"))) : std::nullopt,
                                      get("k3") ? std::optional(to_double("k3", *get("k3"))) : std::nullopt};
  const double base_k[3] = {base.k1, base.k2, base.k3};
  const bool any_k = k[0] || k[1] || k[2];
  if (tag && any_k) {
    for (int i = 0; i < 3; ++i)
      if (k[i] && std::abs(*k[i] - base_k[i]) > 1e-12 * std::max(1.0, std::abs(base_k[i])))
        throw ConfigError("inconsistent case/k-values: case " + to_string(*tag) + " with b = " + number_text(b) +
                          " requires k" + std::to_string(i + 1) + " = " + number_text(base_k[i]));
    e.model = base;
  } else if (any_k) {
    e.model = BFamilyParams::custom(k[0].value_or(base_k[0]), k[1].value_or(base_k[1]), k[2].value_or(base_k[2]));
  } else {
    e.model = base;
  }
  try {
    e.model.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }

  if (auto v = get("L")) e.half_length = to_double("L", *v);
  if (auto v = get("N")) {
    const long long n = to_integer("N", *v);
    if (n <= 0) throw ConfigError("N must be positive");
    e.points = static_cast<std::size_t>(n);
  }
  if (auto v = get("dt")) e.dt = to_double("dt", *v);
  if (auto v = get("T")) e.final_time = to_double("T", *v);
  if (auto v = get("n_min")) e.n_min = static_cast<int>(to_integer("n_min", *v));
  if (auto v = get("n_max")) e.n_max = static_cast<int>(to_integer("n_max", *v));
  if (auto v = get("t_list")) {
    e.t_list.clear();
    std::string_view rest = *v;
    while (true) {
      const auto comma = rest.find(',');
      e.t_list.push_back(to_double("t_list", rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (auto v = get("out_dir")) {
    if (v->empty()) throw ConfigError("out_dir must not be empty");
    out.out_dir = *v;
  }
  try {
    (void)e.grid();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  return out;
}

std::string to_config_text(const RunConfig& cfg) {
  const ExperimentConfig& e = cfg.experiment;
  std::ostringstream os;
  os << "s=" << number_text(e.besov.s) << "\n";
  os << "p=" << number_text(e.besov.p) << "\n";
  os << "r=" << number_text(e.besov.r) << "\n";
  if (e.model.case_tag) {
    os << "case=" << to_string(*e.model.case_tag) << "\n";
    os << "b=" << number_text(*e.model.b) << "\n";
  }
  os << "k1=" << number_text(e.model.k1) << "\n";
  os << "k2=" << number_text(e.model.k2) << "\n";
  os << "k3=" << number_text(e.model.k3) << "\n";
  os << "L=" << number_text(e.half_length) << "\n";
  os << "N=" << e.points << "\n";
  os << "dt=" << number_text(e.dt) << "\n";
  os << "T=" << number_text(e.final_time) << "\n";
  os << "n_min=" << e.n_min << "\n";
  os << "n_max=" << e.n_max << "\n";
  os << "t_list=";
  for (std::size_t i = 0; i < e.t_list.size(); ++i) os << (i ? "," : "") << number_text(e.t_list[i]);
  os << "\n";
  os << "out_dir=" << cfg.out_dir << "\n";
  return os.str();
}

}  // namespace bflab
