#include "ara/trial_calculus.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ara/errors.hpp"

namespace ara {
namespace {

constexpr int kMaxCheckpoints = 1'000'000;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

int min_trials(int failures, const GateParams& gate) {
  if (failures < 0) throw InvalidArgument("failures must be non-negative");
  for (std::int64_t n = std::max(1, failures);; ++n) {
    if (wilson_gate(n, failures, gate)) return static_cast<int>(n);
  }
}

int bracket_offset(int failures, const GateParams& gate) {
  return min_trials(failures, gate) - (2 * failures + gate.n0);
}

ConditionReport condition_report(const GateParams& gate) {
  ConditionReport r;
  const double z2 = gate.z * gate.z;
  const double lead = std::pow(gate.n0 / (2.0 * gate.z), 2);
  r.lhs = std::sqrt(3.0) / (18.0 * gate.n0);
  r.rhs_quarter = lead - z2 / 4.0;
  r.rhs_half = lead - z2 / 2.0;
  r.holds_quarter = r.lhs < r.rhs_quarter;
  r.holds_half = r.lhs < r.rhs_half;
  return r;
}

bool sufficient_condition(const GateParams& gate) {
  return condition_report(gate).holds_quarter;
}

std::vector<double> termination_masses(double p, const GateParams& gate,
                                       double tail_tol) {
  if (!(p > 0.5 && p < 1.0)) {
    throw InvalidArgument(fmt::format("win probability {} outside (.5, 1)", p));
  }
  if (!(tail_tol > 0.0)) throw InvalidArgument("tail tolerance must be positive");
  if (gate.mode != GateMode::kPaperFaithful || !sufficient_condition(gate)) {
    throw InvalidArgument("trial counts are not 2f + n0 for this gate");
  }
  const int n0 = gate.n0;
  const double q = 1.0 - p;

  // alive[k]: probability of k failures after 2j + n0 trials without having
  // passed the gate.
  std::vector<double> alive(n0 + 1, 0.0);
  for (int k = 1; k <= n0; ++k) {
    alive[k] = binomial(n0, k) * std::pow(p, n0 - k) * std::pow(q, k);
  }
  std::vector<double> masses{std::pow(p, n0)};
  double remaining = 1.0 - masses[0];

  for (int j = 1; remaining >= tail_tol; ++j) {
    if (j > kMaxCheckpoints) {
      throw InvalidArgument(fmt::format(
          "trial distribution did not converge for p = {}", p));
    }
    // Exactly j - 1 failures so far and two wins.
    masses.push_back(p * p * alive[j]);
    std::vector<double> next(alive.size() + 2, 0.0);
    for (int i = j + 1; i < static_cast<int>(next.size()); ++i) {
      const int k_lo = std::max(j, i - 2);
      const int k_hi = std::min(2 * (j - 1) + n0, i);
      double sum = 0.0;
      for (int k = k_lo; k <= k_hi; ++k) {
        const int lost = i - k;
        sum += alive[k] * binomial(2, lost) * std::pow(p, 2 - lost) * std::pow(q, lost);
      }
      next[i] = sum;
    }
    alive = std::move(next);
    remaining = 0.0;
    for (double m : alive) remaining += m;
  }
  return masses;
}

double expected_trials(double p, const GateParams& gate, double tail_tol) {
  const auto masses = termination_masses(p, gate, tail_tol);
  double e = 0.0;
  for (std::size_t f = 0; f < masses.size(); ++f) {
    e += (2.0 * static_cast<double>(f) + gate.n0) * masses[f];
  }
  return e;
}

std::pair<double, double> expected_trials_mc(double p, const GateParams& gate,
                                             std::int64_t reps, Stream& rng) {
  if (reps < 1) throw InvalidArgument("reps must be positive");
  if (!(p > 0.5 && p < 1.0)) {
    throw InvalidArgument(fmt::format("win probability {} outside (.5, 1)", p));
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t r = 0; r < reps; ++r) {
    std::int64_t n = 0;
    std::int64_t f = 0;
    do {
      ++n;
      if (rng.uniform() >= p) ++f;
    } while (!wilson_gate(n, f, gate));
    const double x = static_cast<double>(n);
    sum += x;
    sum_sq += x * x;
  }
  const double m = static_cast<double>(reps);
  const double mean = sum / m;
  const double var = reps > 1 ? (sum_sq - m * mean * mean) / (m - 1.0) : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / m)};
}

TrialPlan plan_trials(double p, const GateParams& gate, int max_failures) {
  if (max_failures < 0) throw InvalidArgument("max_failures must be non-negative");
  TrialPlan plan;
  plan.alpha = gate.alpha;
  plan.z = gate.z;
  plan.n0 = gate.n0;
  plan.p_b = p;
  plan.expected_trials = gate.mode == GateMode::kPaperFaithful
                             ? expected_trials(p, gate)
                             : std::nan("");
  for (int f = 0; f <= max_failures; ++f) plan.table.emplace_back(f, min_trials(f, gate));
  return plan;
}

}  // namespace ara
