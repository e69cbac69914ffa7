#include "ara/ocba.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ara/errors.hpp"
#include "ara/normal.hpp"
#include "ara/parallel.hpp"

namespace ara {
namespace {

// P(u_i > u_b) under the normal approximation. With zero spread the
// comparison is deterministic; an exact tie counts as a coin flip.
double exceed_probability(double mean_i, double mean_b, double se_i, double se_b) {
  const double spread = std::sqrt(se_b * se_b + se_i * se_i);
  if (spread == 0.0) {
    if (mean_i < mean_b) return 0.0;
    return mean_i > mean_b ? 1.0 : 0.5;
  }
  return normal_cdf((mean_i - mean_b) / spread);
}

void require_moments(std::span<const SampleStats> stats) {
  for (const auto& s : stats) {
    if (s.count() < 2) {
      throw InvalidArgument("every strategy needs at least 2 samples");
    }
  }
}

std::vector<double> means_of(std::span<const SampleStats> stats) {
  std::vector<double> out(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) out[i] = stats[i].mean();
  return out;
}

std::vector<double> standard_errors_of(std::span<const SampleStats> stats) {
  std::vector<double> out(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) out[i] = stats[i].standard_error();
  return out;
}

}  // namespace

void SampleStats::add(double value) {
  if (!std::isfinite(value)) throw InvalidSample("non-finite sample value");
  ++count_;
  const double delta = value - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (value - mean_);
}

double SampleStats::stddev() const { return std::sqrt(variance()); }

double SampleStats::standard_error() const {
  if (count_ < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(count_));
}

SampleStats update_stats(SampleStats stats, double value) {
  stats.add(value);
  return stats;
}

std::size_t best_index(std::span<const double> means) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] > means[best]) best = i;
  }
  return best;
}

std::size_t best_index(std::span<const SampleStats> stats) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < stats.size(); ++i) {
    if (stats[i].mean() > stats[best].mean()) best = i;
  }
  return best;
}

std::int64_t AllocationPlan::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

AllocationPlan allocate_moments(std::span<const double> means,
                                std::span<const double> stddevs,
                                std::int64_t budget) {
  const std::size_t k = means.size();
  if (k < 2) throw InvalidArgument("allocation needs at least 2 strategies");
  if (stddevs.size() != k) throw InvalidArgument("means/stddevs length mismatch");
  if (budget < 1) throw InvalidArgument("allocation budget must be positive");

  AllocationPlan plan;
  plan.best = best_index(means);
  const double best_mean = means[plan.best];
  // A rival tied with the best gets the smallest positive gap instead of an
  // infinite weight.
  const double min_gap = 1e-12 * std::max(1.0, std::abs(best_mean));

  std::vector<double> sd(k);
  for (std::size_t i = 0; i < k; ++i) {
    sd[i] = stddevs[i] > 0.0 ? stddevs[i] : kMinStdDev;
  }

  std::vector<double> weight(k, 0.0);
  double best_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == plan.best) continue;
    const double gap = std::max(best_mean - means[i], min_gap);
    const double ratio = sd[i] / gap;
    weight[i] = ratio * ratio;
    best_sum += (weight[i] / sd[i]) * (weight[i] / sd[i]);
  }
  weight[plan.best] = sd[plan.best] * std::sqrt(best_sum);

  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  plan.fractional.resize(k);
  plan.counts.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    plan.fractional[i] = static_cast<double>(budget) * weight[i] / total;
    plan.counts[i] = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(plan.fractional[i])));
  }
  return plan;
}

AllocationPlan allocate(std::span<const SampleStats> stats, std::int64_t budget) {
  if (stats.size() < 2) throw InvalidArgument("allocation needs at least 2 strategies");
  require_moments(stats);
  std::vector<double> sd(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) sd[i] = stats[i].stddev();
  return allocate_moments(means_of(stats), sd, budget);
}

double apcs_moments(std::span<const double> means,
                    std::span<const double> standard_errors) {
  if (means.size() != standard_errors.size()) {
    throw InvalidArgument("means/standard errors length mismatch");
  }
  if (means.empty()) return 1.0;
  const std::size_t b = best_index(means);
  double bound = 1.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i == b) continue;
    bound -= exceed_probability(means[i], means[b], standard_errors[i],
                                standard_errors[b]);
  }
  return bound;
}

double apcs(std::span<const SampleStats> stats) {
  if (stats.size() < 2) return 1.0;
  require_moments(stats);
  return apcs_moments(means_of(stats), standard_errors_of(stats));
}

std::vector<double> normalized_means(std::span<const double> means) {
  std::vector<double> out(means.size(), 1.0);
  if (means.empty()) return out;
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  const double span = *hi - *lo;
  if (span <= 0.0) return out;
  for (std::size_t i = 0; i < means.size(); ++i) out[i] = (means[i] - *lo) / span;
  return out;
}

double apcs_x_moments(std::span<const double> means,
                      std::span<const double> standard_errors, double x) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw InvalidArgument(fmt::format("APCS level {} outside (0, 1]", x));
  }
  if (means.size() != standard_errors.size()) {
    throw InvalidArgument("means/standard errors length mismatch");
  }
  if (means.size() < 2) return 1.0;
  const std::size_t b = best_index(means);
  const auto lo = *std::min_element(means.begin(), means.end());
  const double span = means[b] - lo;
  if (span <= 0.0) return 1.0;
  double bound = 1.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i == b) continue;
    if ((means[i] - lo) / span >= x) continue;
    bound -= exceed_probability(means[i], means[b], standard_errors[i],
                                standard_errors[b]);
  }
  return bound;
}

double apcs_x(std::span<const SampleStats> stats, double x) {
  if (stats.size() < 2) return apcs_x_moments({}, {}, x);
  require_moments(stats);
  return apcs_x_moments(means_of(stats), standard_errors_of(stats), x);
}

std::vector<std::pair<double, double>> apcs_x_table(
    std::span<const SampleStats> stats) {
  std::vector<std::pair<double, double>> out;
  for (double level : kApcsLevels) out.emplace_back(level, apcs_x(stats, level));
  return out;
}

void StopState::record(std::span<const SampleStats> stats,
                       std::span<const std::int64_t> allocated) {
  StopSnapshot snap;
  snap.means = means_of(stats);
  const double total = static_cast<double>(
      std::accumulate(allocated.begin(), allocated.end(), std::int64_t{0}));
  snap.weights.resize(allocated.size());
  for (std::size_t i = 0; i < allocated.size(); ++i) {
    snap.weights[i] = total > 0.0 ? allocated[i] / total : 0.0;
  }
  history.push_back(std::move(snap));
}

double weighted_change(const StopSnapshot& current, const StopSnapshot& past) {
  const auto [lo, hi] =
      std::minmax_element(current.means.begin(), current.means.end());
  const double delta = *hi - *lo;
  if (delta <= 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < current.means.size(); ++i) {
    q += current.weights[i] * std::abs(current.means[i] - past.means[i]);
  }
  return q / delta;
}

bool stop_check(const StopState& state) {
  const std::size_t t = state.history.size();
  if (t < kStopLookback + 1) return false;
  const StopSnapshot& current = state.history[t - 1];
  for (std::size_t back = 1; back <= kStopLookback; ++back) {
    if (weighted_change(current, state.history[t - 1 - back]) > kStopTolerance) {
      return false;
    }
  }
  return true;
}

OcbaOutcome run_ocba(std::size_t candidates, const OcbaBudget& budget,
                     const OcbaSampler& sampler, bool parallel) {
  if (candidates == 0) throw InvalidArgument("no candidates to select from");
  if (budget.initial < 2) throw InvalidArgument("initial samples must be at least 2");
  if (budget.per_iteration < 1 || budget.max_iterations < 1) {
    throw InvalidArgument("OCBA budget must be positive");
  }

  OcbaOutcome out;
  out.stats.resize(candidates);
  if (candidates == 1) return out;

  std::vector<std::int64_t> counts(candidates, budget.initial);
  StopState state;

  auto sample_round = [&](int iteration) {
    auto body = [&](std::size_t j) {
      sampler(j, counts[j], iteration, out.stats[j]);
    };
    if (parallel) {
      parallel_for(candidates, body);
    } else {
      for (std::size_t j = 0; j < candidates; ++j) body(j);
    }
    out.total_samples +=
        std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    state.record(out.stats, counts);
  };

  for (int iteration = 1;; ++iteration) {
    sample_round(iteration);
    out.iterations = iteration;
    if (iteration == 1) out.first_iteration_means = state.history.back().means;
    if (stop_check(state)) {
      out.converged = true;
      break;
    }
    if (iteration >= budget.max_iterations) break;
    counts = allocate(out.stats, budget.per_iteration).counts;
  }
  out.best = best_index(out.stats);
  return out;
}

}  // namespace ara
