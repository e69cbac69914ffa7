#include <doctest.h>

#include "ara/errors.hpp"
#include "ara/experiment.hpp"
#include "ara/greedy.hpp"

using namespace ara;

namespace {

ModelParams one_target() {
  ModelParams p = builtin_params("original-n2");
  p.status_quo.resize(1);
  p.attack_difficulty.resize(1);
  p.defense_difficulty.resize(1);
  p.target_values.resize(1);
  p.traits.resize(1);
  return p;
}

}  // namespace

TEST_CASE("law of succession stop rule") {
  CHECK_FALSE(laplace_stop(1, 1, 0.05));    // 2/3
  CHECK_FALSE(laplace_stop(0, 17, 0.05));   // 1/19 > .05
  CHECK(laplace_stop(0, 19, 0.05));         // 1/21
  CHECK(laplace_stop(1, 39, 0.05));         // 2/41
  CHECK_FALSE(laplace_stop(1, 38, 0.05));   // 2/40 is not below .05
  CHECK_THROWS_AS(laplace_stop(3, 2, 0.05), InvalidArgument);
  CHECK_THROWS_AS(laplace_stop(-1, 2, 0.05), InvalidArgument);
}

TEST_CASE("single target has one strategy and one restart") {
  const Model m(one_target());
  GreedyConfig cfg;
  cfg.samples_per_eval = 10;
  const GreedyResult r = greedy_search(m, cfg, 1);
  CHECK(r.best == Allocation({10}));
  CHECK(r.restarts == 1);
  CHECK(r.local_optima.size() == 1);
  CHECK(r.total_samples == 10);
  CHECK(r.apcs == 1.0);
}

TEST_CASE("greedy results are local optima of the cached estimates") {
  const Model m(builtin_params("original-n3"));
  GreedyConfig cfg;
  cfg.samples_per_eval = 20;
  cfg.inner = GreedyInner::kExact;
  const GreedyResult r = greedy_search(m, cfg, 5);
  CHECK(r.restarts >= 1);
  CHECK(r.new_optima == static_cast<std::int64_t>(r.local_optima.size()));
  for (const auto& opt : r.local_optima) {
    const double value = r.stats.at(opt).mean();
    for (const auto& nb : neighbors(opt)) {
      CHECK(r.stats.count(nb) == 1);
      CHECK(r.stats.at(nb).mean() <= value);
    }
    CHECK(r.stats.at(r.best).mean() >= value);
  }
  CHECK(r.total_samples == 20 * static_cast<std::int64_t>(r.stats.size()));
  for (const auto& [a, s] : r.stats) CHECK(s.count() == 20);
  const bool stopped = r.restarts == cfg.max_restarts ||
                       laplace_stop(r.new_optima, r.restarts, cfg.stop_threshold) ||
                       r.local_optima.size() == count(3);
  CHECK(stopped);
}

TEST_CASE("greedy is reproducible and seed dependent") {
  const Model m(builtin_params("original-n2"));
  GreedyConfig cfg;
  cfg.samples_per_eval = 7;
  cfg.nested_samples = 5;
  const GreedyResult a = greedy_search(m, cfg, 11);
  const GreedyResult b = greedy_search(m, cfg, 11);
  CHECK(a.best == b.best);
  CHECK(a.stats == b.stats);
  CHECK(a.apcs == b.apcs);
  const GreedyResult c = greedy_search(m, cfg, 12);
  CHECK(c.stats != a.stats);
}

TEST_CASE("greedy config validation") {
  GreedyConfig cfg;
  cfg.samples_per_eval = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.stop_threshold = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.inner_restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
