#pragma once

// Line-oriented key=value configuration. Recognized keys:
//   s, p, r, case (i|ii), b, k1, k2, k3, L, N, dt, T, n_min, n_max,
//   t_list (comma-separated), out_dir
// Blank lines and text after '#' are ignored. Command-line overrides take
// precedence over the file.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bflab/experiments.hpp"

namespace bflab {

struct RunConfig {
  ExperimentConfig experiment;
  std::string out_dir = "out";
};

using ConfigMap = std::map<std::string, std::string>;

/// Parses key=value text. Throws ConfigError on syntax errors, unknown or
/// repeated keys.
ConfigMap parse_config_text(std::string_view text);

/// Reads and parses a file. Throws ConfigError when it cannot be read.
ConfigMap read_config_file(const std::string& path);

/// Applies `overrides` on top of `file` and resolves the result against the
/// defaults. Throws ConfigError on bad values or an inconsistent case/k choice.
/// An explicit case with k-values must agree with the case formula; k-values
/// without a case give an untagged parameter set whose missing entries come
/// from case i with the given b.
RunConfig resolve_config(const ConfigMap& file, const ConfigMap& overrides = {});

/// Canonical key=value text of a resolved configuration (every key, fixed
/// order); resolve_config(parse_config_text(to_config_text(c))) reproduces c.
std::string to_config_text(const RunConfig& cfg);

}  // namespace bflab
