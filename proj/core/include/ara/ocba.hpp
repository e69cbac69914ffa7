#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ara {

/// Running count, mean and unbiased variance (Welford recurrence).
class SampleStats {
 public:
  /// Throws InvalidSample for non-finite values.
  void add(double value);

  std::int64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 while count < 2.
  double variance() const noexcept {
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
  }
  double stddev() const;
  /// sqrt(variance / count); 0 while count < 2.
  double standard_error() const;

  friend bool operator==(const SampleStats&, const SampleStats&) = default;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

SampleStats update_stats(SampleStats stats, double value);

/// Standard deviation substituted for a zero sample deviation when
/// computing allocations.
inline constexpr double kMinStdDev = 1e-4;

/// Index of the largest mean; ties go to the smallest index.
std::size_t best_index(std::span<const double> means);
std::size_t best_index(std::span<const SampleStats> stats);

struct AllocationPlan {
  std::size_t best = 0;
  /// Real-valued allocation summing to the budget.
  std::vector<double> fractional;
  /// Each fractional entry rounded up; every entry is at least 1.
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
};

/// Asymptotically optimal split of `budget` samples (normal utilities):
/// N_i / N_j = ((s_i / g_i) / (s_j / g_j))^2 for non-best i, j with gaps
/// g = mu_b - mu, and N_b = s_b * sqrt(sum_{i != b} N_i^2 / s_i^2).
/// Throws InvalidArgument for fewer than 2 strategies or a count below 2.
AllocationPlan allocate(std::span<const SampleStats> stats, std::int64_t budget);

/// Same scheme from explicit means and standard deviations.
AllocationPlan allocate_moments(std::span<const double> means,
                                std::span<const double> stddevs,
                                std::int64_t budget);

/// Bonferroni lower bound on the probability of correct selection,
/// 1 - sum_{i != b} Phi((mu_i - mu_b) / sqrt(se_b^2 + se_i^2)).
/// May be negative.
double apcs(std::span<const SampleStats> stats);
double apcs_moments(std::span<const double> means,
                    std::span<const double> standard_errors);

/// As apcs, but only rivals whose normalized mean
/// (mu_i - mu_w) / (mu_b - mu_w) is below x are subtracted. x in (0, 1].
double apcs_x(std::span<const SampleStats> stats, double x);
double apcs_x_moments(std::span<const double> means,
                      std::span<const double> standard_errors, double x);

/// The reporting levels .99, .98, .97, .96, .95.
inline constexpr double kApcsLevels[] = {0.99, 0.98, 0.97, 0.96, 0.95};
std::vector<std::pair<double, double>> apcs_x_table(
    std::span<const SampleStats> stats);

/// (mu - mu_w) / (mu_b - mu_w) per strategy; all ones on a flat landscape.
std::vector<double> normalized_means(std::span<const double> means);

struct StopSnapshot {
  std::vector<double> means;
  std::vector<double> weights;  // sums to 1
};

/// Per-iteration history for the convergence rule.
struct StopState {
  std::vector<StopSnapshot> history;

  /// Appends the current means with weights proportional to the sample
  /// counts allocated in this iteration.
  void record(std::span<const SampleStats> stats,
              std::span<const std::int64_t> allocated);
  std::size_t iteration() const noexcept { return history.size(); }
};

/// q_{t,t'} = sum_i w_{t,i} |alpha_{t,i} - alpha_{t',i}| / delta_t, with
/// delta_t = max alpha_t - min alpha_t; 0 when delta_t is 0.
double weighted_change(const StopSnapshot& current, const StopSnapshot& past);

inline constexpr double kStopTolerance = 0.05;
inline constexpr std::size_t kStopLookback = 4;

/// True once at least five iterations exist and the weighted change
/// against each of the previous four is at most .05.
bool stop_check(const StopState& state);

/// Sample budget for one OCBA selection loop.
struct OcbaBudget {
  std::int64_t initial = 2;         // samples per candidate in iteration 1
  std::int64_t per_iteration = 25;  // samples allocated per later iteration
  int max_iterations = 20;

  friend bool operator==(const OcbaBudget&, const OcbaBudget&) = default;
};
using NestedBudget = OcbaBudget;

struct OcbaOutcome {
  std::vector<SampleStats> stats;
  std::size_t best = 0;
  int iterations = 0;
  bool converged = false;  // stopped by stop_check rather than the cap
  std::int64_t total_samples = 0;
  std::vector<double> first_iteration_means;
};

/// Draws `count` samples for `candidate` during `iteration` (1-based) and
/// folds them into `stats`.
using OcbaSampler = std::function<void(std::size_t candidate, std::int64_t count,
                                       int iteration, SampleStats& stats)>;

/// Iterative selection: `budget.initial` samples per candidate, then
/// allocate/sample rounds until the iteration cap or stop_check. Candidates
/// are sampled through parallel_for when `parallel` is set; results do not
/// depend on scheduling as long as the sampler derives its randomness from
/// (candidate, iteration). A single candidate returns immediately.
OcbaOutcome run_ocba(std::size_t candidates, const OcbaBudget& budget,
                     const OcbaSampler& sampler, bool parallel);

}  // namespace ara
