#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ara/ara_solver.hpp"
#include "ara/blotto_model.hpp"
#include "ara/greedy.hpp"
#include "ara/wilson_gate.hpp"

namespace ara {

/// Named parameter sets: "original-n2" .. "original-n5", "set2-mirroring",
/// "set3-low-incentive", "set4-randomized".
std::vector<std::string> builtin_names();
/// Throws InvalidArgument for an unknown name.
ModelParams builtin_params(std::string_view name);

enum class SolverKind { kAlgorithm1, kExactPartial, kExactNumeric, kGreedy };
std::string to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view text);

/// desk: 2^n initial, min(5^n, 125) per iteration at both levels,
/// N_R = min(10^n, 1000). paper: SolverBudget::paper_defaults.
enum class Profile { kDesk, kPaper };
std::string to_string(Profile profile);
Profile parse_profile(std::string_view text);
SolverBudget budget_for(Profile profile, int n);

struct ExperimentConfig {
  std::string model_name;  // built-in the model started from; may be empty
  ModelParams model;
  SolverKind solver = SolverKind::kAlgorithm1;
  Profile profile = Profile::kDesk;
  SolverBudget budget;
  GateParams gate = GateParams::make();
  GreedyConfig greedy;
  double equivalence_threshold = kDefaultEquivalence;
  std::int64_t max_trials = 200;
  std::uint64_t seed = 1;
  std::int64_t repeats = 1;
  std::string output_dir;  // empty: nothing is written
  std::vector<Allocation> retain_samples_for;
  bool exact_reference = false;
  std::int64_t reference_n_r = 10'000;

  /// Defaults for a built-in: profile budgets, exact reference when n <= 3.
  static ExperimentConfig for_builtin(std::string_view name,
                                      Profile profile = Profile::kDesk);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates configuration text. Throws ConfigError with line
/// and key context.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
/// Text that parse_config maps back to an equal config.
std::string to_text(const ExperimentConfig& cfg);

struct RunRow {
  std::string solver;
  int n = 0;
  std::int64_t run = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> trials;
  std::optional<bool> gate_passed;
  Allocation chosen;
  std::optional<double> exact_value;
  /// 100 * psi(chosen) / psi(optimum).
  std::optional<double> percent_optimum;
  /// 100 * (psi(chosen) - psi_min) / (psi(optimum) - psi_min).
  std::optional<double> percent_optimum_span;
  std::optional<double> apcs;
  std::vector<std::pair<double, double>> apcs_x;
  std::int64_t total_samples = 0;
  double wall_seconds = 0.0;
};

struct LandscapeRow {
  Allocation strategy;
  std::optional<double> first_iteration;
  std::optional<double> estimate;
  std::optional<std::int64_t> samples;
  std::optional<double> exact;
};

struct RunReport {
  std::vector<RunRow> rows;
  std::vector<LandscapeRow> landscape;  // from run 0
  std::vector<std::pair<Allocation, std::vector<double>>> retained;  // run 0
  std::vector<RankedStrategy> reference;  // empty without an exact reference
};

/// Runs cfg.repeats independent runs (run r uses derive_key(seed, {kRun, r}))
/// and, when cfg.output_dir is set, writes report.csv, timings.csv,
/// landscape.csv and one quantiles_<strategy>.csv per retained strategy.
RunReport run_experiment(const ExperimentConfig& cfg);

/// Deterministic CSV: no wall time.
std::string report_csv(const RunReport& report);
std::string timings_csv(const RunReport& report);
std::string landscape_csv(const RunReport& report);

/// (Phi^{-1}(k / (count + 1)), sample quantile k / (count + 1)) for
/// k = 1..count, using linear interpolation between order statistics.
/// Throws InvalidArgument if fewer than `count` samples.
std::vector<std::pair<double, double>> export_quantiles(std::vector<double> samples,
                                                        int count = 99);
std::string quantiles_csv(const std::vector<std::pair<double, double>>& points);

struct SizeRow {
  int n = 0;
  std::optional<std::uint64_t> strategies;
  std::optional<std::uint64_t> n_r;  // 10^n
  std::uint64_t n_s = 10;
  std::optional<std::uint64_t> computations;  // empty on overflow
};
std::vector<SizeRow> size_report(const std::vector<int>& ns);
std::string size_csv(const std::vector<SizeRow>& rows);

/// Writes to path + ".tmp" and renames over path.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ara
