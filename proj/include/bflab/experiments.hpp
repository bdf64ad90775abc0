#pragma once

// Measurement layer: Besov-norm scalings of the data families, dyadic
// concentration of the interaction term, the Riemann-Lebesgue limit constant,
// the two approximation estimates and the non-uniform dependence lower bound,
// all evaluated on solver output.

#include <optional>
#include <string>
#include <vector>

#include "bflab/bfamily.hpp"
#include "bflab/littlewood_paley.hpp"
#include "bflab/rate_fit.hpp"

namespace bflab {

struct ExperimentConfig {
  BesovParams besov{2.0, 2.0, 2.0};
  BFamilyParams model = BFamilyParams::case_i(2.0);
  double half_length = 64.0;
  std::size_t points = 65536;
  double dt = 1e-3;
  double final_time = 0.1;
  int n_min = 4;
  int n_max = 8;
  std::vector<double> t_list{0.02, 0.04, 0.06, 0.08, 0.1};
  /// false: a violated s > max{1 + 1/p, 3/2} only produces a warning.
  bool enforce_regularity = true;
  /// Worker threads for the per-n pipelines; 0 = hardware concurrency.
  unsigned threads = 0;

  Grid grid() const { return Grid::make(half_length, points); }
  /// max{1 + 1/p, 3/2}
  double regularity_threshold() const;

  /// Throws ConfigError / CapacityError. Returns warnings (regularity
  /// hypothesis in exploration mode).
  std::vector<std::string> validate() const;
};

struct ReportRow {
  int n = 0;
  std::optional<double> t;
  std::string quantity;
  double value = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct FitRecord {
  std::string name;
  RateFit fit;
};

/// One assertion: measured value against [lower, upper] (either may be open).
struct Check {
  std::string name;
  double measured = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
  bool passed = false;
  std::string note;

  static Check at_most(std::string name, double measured, double upper, std::string note = {});
  static Check at_least(std::string name, double measured, double lower, std::string note = {});
  static Check within(std::string name, double measured, double lower, double upper,
                      std::string note = {});
  static Check flag(std::string name, bool ok, std::string note = {});
};

struct ExperimentReport {
  std::string experiment;
  std::vector<ReportRow> rows;
  std::vector<FitRecord> fits;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const;
  void add(int n, std::optional<double> t, std::string quantity, double value);
  std::optional<double> value(const std::string& quantity, int n,
                              std::optional<double> t = std::nullopt) const;
  const FitRecord* fit(const std::string& name) const;
  const Check* check(const std::string& name) const;
};

/// Slopes of log2 ||.||_{B^{s+sigma}} against n for f_n and the initial data
/// (u: sigma in {-1,0,1}, expected sigma; rho: l in {-2,-1,0}, expected l+1),
/// and of g_n (expected -1).
ExperimentReport check_besov_scaling(const ExperimentConfig& cfg);

/// Off-block energy of h_n = g_n d_x(2^n f_n); asserted for n >= 5.
ExperimentReport check_concentration(const ExperimentConfig& cfg);

struct RiemannGap {
  double measured = 0.0;  // 2^{n(s-1)} ||h_n||_{L^p}
  double limit = 0.0;     // (17/12) (avg |cos|^p)^{1/p} ||phi^2||_{L^p}
  double rel_gap = 0.0;
  double single_block_mismatch = 0.0;  // |besov_{s-1}(h_n) - measured| / measured
};

/// (1/2pi) int_0^{2pi} |cos x|^p dx by composite midpoint quadrature.
double mean_abs_cos_power(double p);

RiemannGap riemann_limit_gap(const ExperimentConfig& cfg, int n);

/// riemann_limit_gap over n = max(5, n_min)..n_max with the 5% and
/// monotonicity assertions.
ExperimentReport check_riemann(const ExperimentConfig& cfg);

/// Approximation of the which = 1 solution by its initial data.
ExperimentReport run_prop1(const ExperimentConfig& cfg);

/// Approximation of the which = 2 solution by u0 + t v0, rho0 + t w0.
ExperimentReport run_prop2(const ExperimentConfig& cfg);

/// Separation of the two solution families versus their initial distance.
ExperimentReport run_theorem(const ExperimentConfig& cfg);

/// Solver runs of both data families with conserved-quantity monitoring.
ExperimentReport run_evolve(const ExperimentConfig& cfg);

/// Re-runs prop1/prop2/theorem quantities at N and 2N for the given n and
/// compares every nonzero norm (relative tolerance 1e-6).
ExperimentReport check_resolution_independence(const ExperimentConfig& cfg,
                                               const std::vector<int>& n_values);

}  // namespace bflab
