#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ara/adversary.hpp"
#include "ara/blotto_model.hpp"
#include "ara/ocba.hpp"
#include "ara/strategy_space.hpp"
#include "ara/wilson_gate.hpp"

namespace ara {

/// Sampling budgets for the defender's problem.
struct SolverBudget {
  OcbaBudget outer;       // defender OCBA
  NestedBudget nested;    // attacker OCBA inside every outer sample
  std::int64_t n_r = 10;  // trait draws per strategy for the exact solvers
  int n_s = 10;           // quadrature cells per target (fully numeric)

  /// N_init = 2^n, 5^n per iteration at both levels, N_R = 10^n, N_S = 10.
  static SolverBudget paper_defaults(int n);

  void validate() const;

  friend bool operator==(const SolverBudget&, const SolverBudget&) = default;
};

/// How the attacker's reply is resolved inside a trial. kExact replaces the
/// nested OCBA with full enumeration; it isolates the outer loop in tests.
enum class InnerSolver { kOcba, kExact };

struct TrialOptions {
  InnerSolver inner = InnerSolver::kOcba;
  /// Strategy ordinals whose raw defender utilities are kept.
  std::vector<std::size_t> retain;
};

struct TrialOutcome {
  std::size_t winner = 0;
  std::vector<SampleStats> stats;
  int iterations = 0;
  bool converged = false;
  std::int64_t total_samples = 0;
  std::vector<double> first_iteration_means;
  /// Parallel to TrialOptions::retain.
  std::vector<std::vector<double>> retained;
};

/// One trial: outer OCBA over F_D where every sample draws r, resolves the
/// attacker's reply, draws s and records u_D. Sample k of strategy j in
/// iteration t reads the stream derive_key(trial_key, {j, t, k}), so the
/// result is independent of thread scheduling.
TrialOutcome run_trial(const Model& model, const SpaceIndex& space,
                       const SolverBudget& budget, std::uint64_t trial_key,
                       const TrialOptions& options = {});

/// Trial winners with equivalence merging. Strategies whose normalized
/// means are both at or above the threshold in some trial are equivalent;
/// classes are the transitive closure over every trial so far, and a
/// class's wins are credited to its most frequent member.
struct TrialTally {
  std::int64_t trials = 0;
  std::vector<std::int64_t> wins;  // raw wins per strategy ordinal
  std::vector<std::vector<std::size_t>> equivalent_sets;  // one per merge
  std::vector<std::vector<std::size_t>> classes;  // partition of winners
  std::vector<std::int64_t> class_wins;
  std::vector<std::size_t> representatives;

  explicit TrialTally(std::size_t strategies = 0) : wins(strategies, 0) {}

  void record_winner(std::size_t ordinal);

  /// Index into classes of the class with the most credited wins; ties go
  /// to the smallest representative.
  std::size_t leading_class() const;
  std::size_t leading() const { return representatives[leading_class()]; }
  /// Trials not credited to the leading class.
  std::int64_t leading_failures() const;

  /// Rebuilds classes, class_wins and representatives from wins and
  /// equivalent_sets.
  void recompute();
};

inline constexpr double kDefaultEquivalence = 0.99;

/// Adds the equivalent set implied by one trial's statistics and
/// recomputes classes. threshold in (0, 1].
TrialTally merge_equivalents(TrialTally tally, std::span<const SampleStats> stats,
                             double threshold);

struct Algorithm1Options {
  double equivalence_threshold = kDefaultEquivalence;
  InnerSolver inner = InnerSolver::kOcba;
  /// Stop after this many trials even if the gate has not passed.
  std::int64_t max_trials = 200;
  /// Strategies whose raw utilities from the final trial are reported.
  std::vector<Allocation> retain;
};

struct SolveResult {
  Allocation chosen;
  std::size_t chosen_ordinal = 0;
  std::int64_t trials = 0;
  bool gate_passed = false;
  std::vector<std::size_t> trial_winners;
  std::vector<SampleStats> final_stats;  // from the last trial
  double apcs = 1.0;
  std::vector<std::pair<double, double>> apcs_x;
  std::int64_t total_samples = 0;  // outer defender samples, all trials
  std::vector<double> first_iteration_means;  // first trial
  std::vector<std::vector<double>> retained;  // parallel to options.retain
  std::uint64_t seed = 0;
  GateMode gate_mode = GateMode::kPaperFaithful;
  double wall_seconds = 0.0;
};

/// Repeats trials until the Wilson gate passes for the leading class.
/// Trial t uses derive_key(seed, {kTrial, t}).
SolveResult run_algorithm1(const Model& model, const SolverBudget& budget,
                           const GateParams& gate, std::uint64_t seed,
                           const Algorithm1Options& options = {});

/// Stable text form of a result. Wall time is left out unless requested
/// so equal seeds give byte-identical output.
std::string serialize(const SolveResult& result, bool include_timing = false);

struct RankedStrategy {
  Allocation strategy;
  std::size_t ordinal = 0;
  double value = 0.0;
};

/// Trait draws shared by the exact solvers: r^i reads
/// derive_key(seed, {kTraits, i}), the same for every defender strategy.
std::vector<TraitSample> draw_trait_samples(const Model& model, std::int64_t n_r,
                                            std::uint64_t seed);

/// psi_D(d) = (1/N_R) sum_i psi_D(d, a^i(d)) with exact best responses and
/// closed-form expectations, for every d; sorted by value descending, ties
/// by ordinal.
std::vector<RankedStrategy> solve_exact_partial_analytic(const Model& model,
                                                         std::int64_t n_r,
                                                         std::uint64_t seed);

/// As above with every expectation replaced by n_s-cell quadrature and the
/// attacker maximized by enumerating quadrature values.
std::vector<RankedStrategy> solve_exact_fully_numeric(const Model& model,
                                                      std::int64_t n_r, int n_s,
                                                      std::uint64_t seed);

}  // namespace ara
