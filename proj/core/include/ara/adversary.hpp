#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ara/blotto_model.hpp"
#include "ara/ocba.hpp"
#include "ara/rng.hpp"
#include "ara/strategy_space.hpp"

namespace ara {

enum class ResponseMethod { kExact, kOcba };

/// The attacker's optimal reply to a defender allocation under one trait
/// realization.
struct BestResponse {
  Allocation strategy;
  std::size_t ordinal = 0;
  /// Exact: the closed-form expected utility at the optimum.
  /// OCBA: the sample mean of the selected strategy.
  double value = 0.0;
  ResponseMethod method = ResponseMethod::kExact;
};

/// Argmax over `space` of sum_i table[i * 11 + a_i]. Ties go to the
/// lexicographically smallest allocation. Used by every exact solver: the
/// table holds per-target objective contributions for a fixed defender
/// allocation.
struct SeparableOptimum {
  std::size_t ordinal = 0;
  double value = 0.0;
};
SeparableOptimum argmax_separable(const SpaceIndex& space,
                                  std::span<const double> table);

/// Full enumeration of the attacker's feasible set under the closed-form
/// expected utility. Same feasible set and objective as the quadratic
/// integer program A_1 + A_2 e^{-4.6 C_H} (c_D d + 1)^{-2} (c_A a + 1)^2,
/// so the optimum is the same.
BestResponse best_response_exact(const Model& model, const SpaceIndex& space,
                                 std::span<const int> d, const TraitSample& r);
BestResponse best_response_exact(const Model& model, const Allocation& d,
                                 const TraitSample& r);

/// Nested OCBA over the attacker's feasible set: `budget.initial` sampled
/// utilities per candidate, then OCBA rounds until 20 iterations or the
/// convergence rule. Consumes `rng` sequentially.
BestResponse best_response_ocba(const Model& model, const SpaceIndex& space,
                                std::span<const int> d, const TraitSample& r,
                                const NestedBudget& budget, Stream& rng);
BestResponse best_response_ocba(const Model& model, const Allocation& d,
                                const TraitSample& r, const NestedBudget& budget,
                                Stream& rng);

/// One sampled attacker utility U_A(d, a, s, r) with s ~ Uni(h, h + .1).
double sample_attacker_utility(const Model& model, std::span<const int> d,
                               std::span<const int> a, const TraitSample& r,
                               Stream& rng);

/// One sampled defender utility u_D(d, a, s) with s ~ Uni(h, h + .1).
double sample_defender_utility(const Model& model, std::span<const int> d,
                               std::span<const int> a, Stream& rng);

}  // namespace ara
