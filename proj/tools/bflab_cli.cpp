// Command-line entry point: bflab <subcommand> [--config FILE] [overrides].
//
// Exit codes: 0 pass, 2 assertion failure, 3 numerical abort, 4 config error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "bflab/config.hpp"
#include "bflab/errors.hpp"
#include "bflab/experiments.hpp"
#include "bflab/report.hpp"
#include "bflab/validation.hpp"

namespace {

using namespace bflab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitAbort = 3;
constexpr int kExitConfig = 4;

const std::map<std::string, std::function<ExperimentReport(const ExperimentConfig&)>>& commands() {
  static const std::map<std::string, std::function<ExperimentReport(const ExperimentConfig&)>> table{
      {"validate", run_validation},   {"norms", check_besov_scaling}, {"concentration", check_concentration},
      {"riemann", check_riemann},     {"prop1", run_prop1},           {"prop2", run_prop2},
      {"theorem", run_theorem},       {"evolve", run_evolve}};
  return table;
}

std::string bound_text(const Check& c) {
  char buf[96];
  if (c.lower && c.upper) std::snprintf(buf, sizeof buf, "in [%.6g, %.6g]", *c.lower, *c.upper);
  else if (c.upper) std::snprintf(buf, sizeof buf, "<= %.6g", *c.upper);
  else if (c.lower) std::snprintf(buf, sizeof buf, ">= %.6g", *c.lower);
  else buf[0] = '\0';
  return buf;
}

void print_report(const ExperimentReport& rep) {
  for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
  for (const auto& f : rep.fits)
    std::printf("fit  %-40s slope=% .6f intercept=% .6f residual=%.3g (%zu points)\n", f.name.c_str(), f.fit.slope,
                f.fit.intercept, f.fit.residual, f.fit.points);
  for (const auto& c : rep.checks)
    std::printf("%s %-40s measured=%.6g %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                bound_text(c).c_str(), c.note.empty() ? "" : "  # ", c.note.c_str());
  std::cout << "verdict: " << verdict_of(rep) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical harness for non-uniform dependence of the two-component b-family system"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::map<std::string, std::optional<std::string>> flags;
  bool svg = false, explore = false;
  unsigned threads = 0;

  app.add_option("--config", config_path, "key=value configuration file");
  const std::pair<const char*, const char*> keyed[] = {
      {"s", "regularity s"},         {"p", "integrability p"},          {"r", "summability r"},
      {"case", "parameter case i|ii"}, {"b", "case parameter b"},       {"k1", "override k1"},
      {"k2", "override k2"},         {"k3", "override k3"},             {"L", "half period L"},
      {"N", "grid points"},          {"dt", "time step"},               {"T", "final time"},
      {"n_min", "smallest n"},       {"n_max", "largest n"},            {"t_list", "comma-separated sample times"},
      {"out_dir", "artifact directory"}};
  for (const auto& [key, help] : keyed) {
    std::string name = "--" + std::string(key);
    if (std::string(key).find('_') != std::string::npos) {
      std::string dashed = key;
      for (char& c : dashed)
        if (c == '_') c = '-';
      name += ",--" + dashed;
    }
    app.add_option(name, flags[key], help);
  }
  app.add_flag("--svg", svg, "also write SVG plots");
  app.add_flag("--explore", explore, "warn instead of failing when s <= max{1+1/p, 3/2}");
  app.add_option("--threads", threads, "worker threads for per-n pipelines (0 = all cores)");

  for (const auto& [name, fn] : commands()) app.add_subcommand(name, "run the " + name + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunManifest manifest;
  manifest.platform = Platform::current();
  RunConfig cfg;
  try {
    ConfigMap file;
    if (config_path) file = read_config_file(*config_path);
    ConfigMap overrides;
    for (const auto& [k, v] : flags)
      if (v) overrides[k] = *v;
    cfg = resolve_config(file, overrides);
    cfg.experiment.enforce_regularity = !explore;
    cfg.experiment.threads = threads;
    manifest.config_text = to_config_text(cfg);
    for (const auto& w : cfg.experiment.validate()) std::cerr << "warning: " << w << "\n";
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  try {
    const ExperimentReport rep = commands().at(command)(cfg.experiment);
    manifest.wall_clock_seconds[command] = elapsed();
    manifest.verdicts[command] = verdict_of(rep);
    print_report(rep);
    for (const auto& path : write_artifacts(cfg.out_dir, rep, manifest, svg)) std::cout << "wrote " << path << "\n";
    return rep.passed() ? kExitPass : kExitFail;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    const bool abort = dynamic_cast<const NumericalAbort*>(&e) != nullptr;
    std::cerr << (abort ? "numerical abort: " : "error: ") << e.what() << "\n";
    manifest.wall_clock_seconds[command] = elapsed();
    manifest.verdicts[command] = "FAILED";
    try {
      write_failed_artifacts(cfg.out_dir, command, manifest, e.what());
    } catch (const std::exception& w) {
      std::cerr << "could not write artifacts: " << w.what() << "\n";
    }
    return abort ? kExitAbort : 1;
  }
}
