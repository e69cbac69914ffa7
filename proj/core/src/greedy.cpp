#include "ara/greedy.hpp"

#include <algorithm>
#include <optional>

#include "ara/adversary.hpp"
#include "ara/errors.hpp"
#include "ara/rng.hpp"

namespace ara {
namespace {

class Search {
 public:
  Search(const Model& model, const GreedyConfig& config, std::uint64_t seed)
      : model_(model),
        config_(config),
        seed_(seed),
        space_(enumerate(model.dimension())),
        cache_(space_.size()) {}

  const SpaceIndex& space() const { return space_; }

  // One restart of the defender search. Returns the local optimum.
  Allocation climb(Stream& rng, GreedyResult& out) {
    std::size_t incumbent = rng.below(space_.size());
    double incumbent_value = estimate_defender(incumbent, out);
    for (bool moved = true; moved;) {
      moved = false;
      for (const Allocation& next : neighbors(space_[incumbent])) {
        const std::size_t j = space_.ordinal(next);
        const double value = estimate_defender(j, out);
        if (value > incumbent_value) {
          incumbent = j;
          incumbent_value = value;
          moved = true;
          break;
        }
      }
    }
    return space_[incumbent];
  }

 private:
  // Each strategy is estimated once, from its own stream, and reused.
  double estimate_defender(std::size_t j, GreedyResult& out) {
    if (cache_[j]) return *cache_[j];
    const Allocation& d = space_[j];
    Stream rng(derive_key(seed_, {tag(StreamTag::kGreedy), 1, j}));
    SampleStats& stats = out.stats[d];
    for (std::int64_t k = 0; k < config_.samples_per_eval; ++k) {
      const TraitSample r = sample_traits(model_, rng);
      const std::size_t reply = config_.inner == GreedyInner::kExact
                                    ? best_response_exact(model_, space_, d.tenths(), r).ordinal
                                    : attacker_reply(d, r, rng);
      stats.add(sample_defender_utility(model_, d.tenths(), space_.tenths(reply), rng));
    }
    out.total_samples += config_.samples_per_eval;
    cache_[j] = stats.mean();
    return stats.mean();
  }

  // Greedy search over F_A for one (d, r), with the same caching rule.
  std::size_t attacker_reply(const Allocation& d, const TraitSample& r, Stream& rng) {
    std::vector<std::optional<double>> seen(space_.size());
    auto estimate = [&](std::size_t a) {
      if (!seen[a]) {
        SampleStats s;
        for (std::int64_t k = 0; k < config_.nested_samples; ++k) {
          s.add(sample_attacker_utility(model_, d.tenths(), space_.tenths(a), r, rng));
        }
        seen[a] = s.mean();
      }
      return *seen[a];
    };
    std::size_t best = 0;
    std::optional<double> best_value;
    for (std::int64_t restart = 0; restart < config_.inner_restarts; ++restart) {
      std::size_t incumbent = rng.below(space_.size());
      double incumbent_value = estimate(incumbent);
      for (bool moved = true; moved;) {
        moved = false;
        for (const Allocation& next : neighbors(space_[incumbent])) {
          const std::size_t a = space_.ordinal(next);
          const double value = estimate(a);
          if (value > incumbent_value) {
            incumbent = a;
            incumbent_value = value;
            moved = true;
            break;
          }
        }
      }
      if (!best_value || incumbent_value > *best_value) {
        best = incumbent;
        best_value = incumbent_value;
      }
    }
    return best;
  }

  const Model& model_;
  const GreedyConfig& config_;
  std::uint64_t seed_;
  SpaceIndex space_;
  std::vector<std::optional<double>> cache_;
};

}  // namespace

void GreedyConfig::validate() const {
  if (samples_per_eval < 2) throw InvalidArgument("samples_per_eval must be at least 2");
  if (!(stop_threshold > 0.0 && stop_threshold < 1.0)) {
    throw InvalidArgument("stop_threshold must be in (0, 1)");
  }
  if (max_restarts < 1 || nested_samples < 1 || inner_restarts < 1) {
    throw InvalidArgument("greedy restart and sample counts must be positive");
  }
}

bool laplace_stop(std::int64_t new_optima, std::int64_t restarts, double threshold) {
  if (restarts < 0 || new_optima < 0 || new_optima > restarts) {
    throw InvalidArgument("laplace_stop needs 0 <= new_optima <= restarts");
  }
  return static_cast<double>(new_optima + 1) / static_cast<double>(restarts + 2) <
         threshold;
}

GreedyResult greedy_search(const Model& model, const GreedyConfig& config,
                           std::uint64_t seed) {
  config.validate();
  Search search(model, config, seed);
  GreedyResult out;
  while (out.restarts < config.max_restarts) {
    Stream rng(derive_key(seed, {tag(StreamTag::kGreedy), 0,
                                 static_cast<std::uint64_t>(out.restarts)}));
    const Allocation optimum = search.climb(rng, out);
    ++out.restarts;
    if (std::find(out.local_optima.begin(), out.local_optima.end(), optimum) ==
        out.local_optima.end()) {
      out.local_optima.push_back(optimum);
      ++out.new_optima;
    }
    if (out.local_optima.size() == search.space().size()) break;
    if (laplace_stop(out.new_optima, out.restarts, config.stop_threshold)) break;
  }

  out.best = out.local_optima.front();
  for (const auto& a : out.local_optima) {
    if (out.stats.at(a).mean() > out.stats.at(out.best).mean()) out.best = a;
  }
  std::vector<SampleStats> visited;
  for (const auto& [a, s] : out.stats) visited.push_back(s);
  out.apcs = apcs(visited);
  out.apcs_x = apcs_x_table(visited);
  return out;
}

}  // namespace ara
