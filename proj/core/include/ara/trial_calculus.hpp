#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ara/rng.hpp"
#include "ara/wilson_gate.hpp"

namespace ara {

/// Smallest N with wilson_gate(N, f, gate) true, by direct search.
int min_trials(int failures, const GateParams& gate);

/// min_trials(f) - (2f + n0); 0 or 1 whenever the gate is paper-faithful.
int bracket_offset(int failures, const GateParams& gate);

/// sqrt(3) / (18 n0) < (n0 / (2z))^2 - z^2/4. When true, min_trials(f) is
/// exactly 2f + n0.
bool sufficient_condition(const GateParams& gate);

/// Both sides of the condition and the variant with z^2/2 in place of
/// z^2/4, for reporting.
struct ConditionReport {
  double lhs = 0.0;
  double rhs_quarter = 0.0;
  double rhs_half = 0.0;
  bool holds_quarter = false;
  bool holds_half = false;
};
ConditionReport condition_report(const GateParams& gate);

inline constexpr double kDefaultTailTol = 1e-12;

/// Expected number of trials until the gate passes when the leading
/// outcome wins each trial independently with probability p. Evaluated by
/// propagating the failure-count distribution between the checkpoints
/// 2f + n0, summing until the unterminated mass drops below tail_tol.
/// Throws InvalidArgument unless .5 < p < 1, the gate is paper-faithful and
/// the sufficient condition holds.
double expected_trials(double p, const GateParams& gate,
                       double tail_tol = kDefaultTailTol);

/// Termination probability at 2f + n0 trials for f = 0, 1, ... until the
/// remaining mass drops below tail_tol.
std::vector<double> termination_masses(double p, const GateParams& gate,
                                       double tail_tol = kDefaultTailTol);

/// Monte Carlo estimate of expected_trials: mean and standard error of the
/// trial count over `reps` simulated runs.
std::pair<double, double> expected_trials_mc(double p, const GateParams& gate,
                                             std::int64_t reps, Stream& rng);

struct TrialPlan {
  double alpha = 0.0;
  double z = 0.0;
  int n0 = 0;
  double p_b = 0.0;
  double expected_trials = 0.0;
  std::vector<std::pair<int, int>> table;  // (f, min_trials(f))
};

TrialPlan plan_trials(double p, const GateParams& gate, int max_failures);

}  // namespace ara
