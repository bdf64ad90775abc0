#pragma once

// Report emission: CSV rows, the structured JSON report with its run
// manifest, and the artifact writer used by the command-line tool.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bflab/config.hpp"
#include "bflab/experiments.hpp"

namespace bflab {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Platform {
  std::string os;
  std::string arch;
  std::string compiler;
  std::string kernels;  // active kernel variant
  unsigned hardware_threads = 0;

  static Platform current();
};

struct RunManifest {
  std::string version{kToolVersion};
  std::string config_text;  // to_config_text of the resolved configuration
  Platform platform;
  std::map<std::string, double> wall_clock_seconds;  // per experiment
  std::map<std::string, std::string> verdicts;       // PASS / FAIL / FAILED

  /// FNV-1a (64 bit) over the reproducible part: version, configuration,
  /// kernel variant and verdicts. Wall-clock and host details are excluded.
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 14695981039346656037ull);

/// Header `experiment,n,t,quantity,value`, values with 17 significant digits,
/// an empty t field for t-independent rows, then `# manifest=<hash>`.
std::string to_csv(const ExperimentReport& rep, const std::string& manifest_hash);

/// Rows back from to_csv text (comment lines skipped).
std::vector<ReportRow> parse_csv_rows(std::string_view csv);

/// Self-describing JSON document with stable key order.
std::string to_json(const ExperimentReport& rep, const RunManifest& manifest);

struct ParsedReport {
  ExperimentReport report;
  RunManifest manifest;
  std::string verdict;
  std::string manifest_hash;
};
ParsedReport parse_json_report(std::string_view text);

/// "PASS" or "FAIL".
std::string verdict_of(const ExperimentReport& rep);

/// Writes <out_dir>/<experiment>.csv, <experiment>.json and, with `svg`,
/// <experiment>_n.svg / <experiment>_t.svg. Returns the written paths.
std::vector<std::string> write_artifacts(const std::string& out_dir, const ExperimentReport& rep,
                                         const RunManifest& manifest, bool svg);

/// Artifacts of an aborted run: whatever rows exist plus a FAILED marker and
/// the reason, in both the CSV and the JSON report.
std::vector<std::string> write_failed_artifacts(const std::string& out_dir, const std::string& experiment,
                                                const RunManifest& manifest, const std::string& reason);

}  // namespace bflab
