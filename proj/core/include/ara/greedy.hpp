#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ara/blotto_model.hpp"
#include "ara/ocba.hpp"
#include "ara/strategy_space.hpp"

namespace ara {

/// How the attacker's reply is found inside each defender sample.
/// kExact is a test hook that removes the inner search noise.
enum class GreedyInner { kGreedy, kExact };

struct GreedyConfig {
  std::int64_t samples_per_eval = 100;  // defender samples per estimate, >= 2
  double stop_threshold = 0.05;
  std::int64_t max_restarts = 200;
  std::int64_t nested_samples = 100;  // attacker samples per inner estimate
  std::int64_t inner_restarts = 3;
  GreedyInner inner = GreedyInner::kGreedy;

  void validate() const;

  friend bool operator==(const GreedyConfig&, const GreedyConfig&) = default;
};

struct GreedyResult {
  Allocation best;
  std::vector<Allocation> local_optima;  // distinct, in discovery order
  std::int64_t restarts = 0;
  std::int64_t new_optima = 0;  // restarts that found an unseen optimum
  std::map<Allocation, SampleStats> stats;  // every evaluated strategy
  double apcs = 1.0;
  std::vector<std::pair<double, double>> apcs_x;
  std::int64_t total_samples = 0;  // defender samples
};

/// (new + 1) / (restarts + 2) < threshold.
bool laplace_stop(std::int64_t new_optima, std::int64_t restarts, double threshold);

/// Hill climbing over F_D with random restarts. Each strategy is estimated
/// once with samples_per_eval samples, drawn from derive_key(seed,
/// {kGreedy, 1, ordinal}), and the estimate is reused on later visits.
/// Each restart starts at a uniformly drawn allocation (derive_key(seed,
/// {kGreedy, 0, k})) and scans neighbors(.) in order, moving to the first
/// neighbor whose estimate beats the incumbent's; ties do not move.
/// Restarts stop on laplace_stop, once every strategy is a known optimum,
/// or at max_restarts. The inner attacker search follows the same rules
/// over F_A with nested_samples per estimate.
GreedyResult greedy_search(const Model& model, const GreedyConfig& config,
                           std::uint64_t seed);

}  // namespace ara
