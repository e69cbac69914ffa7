#include "ara/ara_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ara/errors.hpp"
#include "ara/parallel.hpp"
#include "ara/rng.hpp"

namespace ara {
namespace {

std::int64_t int_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_budget(const OcbaBudget& b, const char* which) {
  if (b.initial < 2 || b.per_iteration < 1 || b.max_iterations < 1) {
    throw InvalidArgument(fmt::format(
        "{} budget needs initial >= 2, per_iteration >= 1, max_iterations >= 1",
        which));
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Shared by both exact solvers: unit[i][d][a] tables, exact attacker
// replies per trait draw, averaged defender value per d.
template <typename UnitFn>
std::vector<RankedStrategy> solve_exact_with(const Model& model, std::int64_t n_r,
                                             std::uint64_t seed, UnitFn unit_fn) {
  if (n_r < 1) throw InvalidArgument("exact solver needs N_R >= 1");
  const int n = model.dimension();
  const SpaceIndex space = enumerate(n);
  const auto traits = draw_trait_samples(model, n_r, seed);
  const auto& v = model.params().target_values;

  std::vector<double> unit(static_cast<std::size_t>(n) * kGridPoints * kGridPoints);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < kGridPoints; ++d) {
      for (int a = 0; a < kGridPoints; ++a) {
        unit[(i * kGridPoints + d) * kGridPoints + a] = unit_fn(i, d, a);
      }
    }
  }

  std::vector<RankedStrategy> out(space.size());
  parallel_for(space.size(), [&](std::size_t j) {
    const auto d = space.tenths(j);
    std::vector<double> table(static_cast<std::size_t>(n) * kGridPoints);
    double total = 0.0;
    for (const auto& r : traits) {
      for (int i = 0; i < n; ++i) {
        const double* row = &unit[(i * kGridPoints + d[i]) * kGridPoints];
        for (int a = 0; a < kGridPoints; ++a) {
          table[i * kGridPoints + a] = r.values[i] * row[a];
        }
      }
      const auto reply = space.tenths(argmax_separable(space, table).ordinal);
      double psi = 0.0;
      for (int i = 0; i < n; ++i) {
        psi -= v[i] * unit[(i * kGridPoints + d[i]) * kGridPoints + reply[i]];
      }
      total += psi;
    }
    out[j] = {space[j], j, total / static_cast<double>(traits.size())};
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedStrategy& a, const RankedStrategy& b) {
                     return a.value > b.value;
                   });
  return out;
}

}  // namespace

SolverBudget SolverBudget::paper_defaults(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw InvalidArgument(fmt::format("dimension {} outside 1..{}", n, kMaxDimension));
  }
  SolverBudget b;
  b.outer = {int_pow(2, n), int_pow(5, n), 20};
  b.nested = b.outer;
  b.n_r = int_pow(10, n);
  b.n_s = 10;
  return b;
}

void SolverBudget::validate() const {
  check_budget(outer, "outer");
  check_budget(nested, "nested");
  if (n_r < 1) throw InvalidArgument("N_R must be at least 1");
  if (n_s < 1) throw InvalidArgument("N_S must be at least 1");
}

TrialOutcome run_trial(const Model& model, const SpaceIndex& space,
                       const SolverBudget& budget, std::uint64_t trial_key,
                       const TrialOptions& options) {
  budget.validate();
  if (space.dimension() != model.dimension()) {
    throw InvalidArgument("strategy space does not match the model");
  }
  std::vector<std::ptrdiff_t> retain_slot(space.size(), -1);
  for (std::size_t s = 0; s < options.retain.size(); ++s) {
    if (options.retain[s] >= space.size()) {
      throw InvalidArgument("retained ordinal outside the strategy space");
    }
    retain_slot[options.retain[s]] = static_cast<std::ptrdiff_t>(s);
  }
  TrialOutcome out;
  out.retained.resize(options.retain.size());

  auto sampler = [&](std::size_t j, std::int64_t count, int iteration,
                     SampleStats& stats) {
    const auto d = space.tenths(j);
    std::vector<double>* keep =
        retain_slot[j] >= 0 ? &out.retained[retain_slot[j]] : nullptr;
    for (std::int64_t k = 0; k < count; ++k) {
      Stream rng(derive_key(trial_key, {j, static_cast<std::uint64_t>(iteration),
                                        static_cast<std::uint64_t>(k)}));
      const TraitSample r = sample_traits(model, rng);
      const BestResponse reply =
          options.inner == InnerSolver::kExact
              ? best_response_exact(model, space, d, r)
              : best_response_ocba(model, space, d, r, budget.nested, rng);
      const double u = sample_defender_utility(model, d, space.tenths(reply.ordinal), rng);
      stats.add(u);
      if (keep) keep->push_back(u);
    }
  };

  OcbaOutcome result = run_ocba(space.size(), budget.outer, sampler, true);
  out.winner = result.best;
  out.stats = std::move(result.stats);
  out.iterations = result.iterations;
  out.converged = result.converged;
  out.total_samples = result.total_samples;
  out.first_iteration_means = std::move(result.first_iteration_means);
  return out;
}

void TrialTally::record_winner(std::size_t ordinal) {
  if (ordinal >= wins.size()) throw InvalidArgument("winner outside the strategy space");
  ++wins[ordinal];
  ++trials;
  recompute();
}

void TrialTally::recompute() {
  UnionFind uf(wins.size());
  for (const auto& set : equivalent_sets) {
    for (std::size_t k = 1; k < set.size(); ++k) uf.unite(set[0], set[k]);
  }
  classes.clear();
  class_wins.clear();
  representatives.clear();
  std::vector<std::ptrdiff_t> class_of_root(wins.size(), -1);
  for (std::size_t j = 0; j < wins.size(); ++j) {
    if (wins[j] == 0) continue;
    const std::size_t root = uf.find(j);
    if (class_of_root[root] < 0) {
      class_of_root[root] = static_cast<std::ptrdiff_t>(classes.size());
      classes.emplace_back();
      class_wins.push_back(0);
      representatives.push_back(j);
    }
    const auto c = static_cast<std::size_t>(class_of_root[root]);
    classes[c].push_back(j);
    class_wins[c] += wins[j];
    if (wins[j] > wins[representatives[c]]) representatives[c] = j;
  }
}

std::size_t TrialTally::leading_class() const {
  if (classes.empty()) throw InvalidArgument("no trials recorded");
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); ++c) {
    if (class_wins[c] > class_wins[best] ||
        (class_wins[c] == class_wins[best] &&
         representatives[c] < representatives[best])) {
      best = c;
    }
  }
  return best;
}

std::int64_t TrialTally::leading_failures() const {
  return trials - class_wins[leading_class()];
}

TrialTally merge_equivalents(TrialTally tally, std::span<const SampleStats> stats,
                             double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument(fmt::format("equivalence threshold {} outside (0, 1]", threshold));
  }
  if (stats.size() != tally.wins.size()) {
    throw InvalidArgument("statistics do not match the tally");
  }
  std::vector<double> means(stats.size());
  for (std::size_t j = 0; j < stats.size(); ++j) means[j] = stats[j].mean();
  const auto norm = normalized_means(means);
  std::vector<std::size_t> set;
  for (std::size_t j = 0; j < norm.size(); ++j) {
    if (norm[j] >= threshold) set.push_back(j);
  }
  if (set.size() > 1) tally.equivalent_sets.push_back(std::move(set));
  tally.recompute();
  return tally;
}

SolveResult run_algorithm1(const Model& model, const SolverBudget& budget,
                           const GateParams& gate, std::uint64_t seed,
                           const Algorithm1Options& options) {
  if (options.max_trials < 1) throw InvalidArgument("max_trials must be positive");
  const auto start = std::chrono::steady_clock::now();
  const SpaceIndex space = enumerate(model.dimension());

  TrialOptions trial_options;
  trial_options.inner = options.inner;
  for (const auto& a : options.retain) trial_options.retain.push_back(space.ordinal(a));

  SolveResult result;
  result.seed = seed;
  result.gate_mode = gate.mode;
  TrialTally tally(space.size());
  TrialOutcome last;
  for (std::int64_t t = 0; t < options.max_trials; ++t) {
    last = run_trial(model, space, budget,
                     derive_key(seed, {tag(StreamTag::kTrial), static_cast<std::uint64_t>(t)}),
                     trial_options);
    if (t == 0) result.first_iteration_means = last.first_iteration_means;
    result.total_samples += last.total_samples;
    result.trial_winners.push_back(last.winner);
    tally.record_winner(last.winner);
    tally = merge_equivalents(std::move(tally), last.stats,
                              options.equivalence_threshold);
    if (wilson_gate(tally.trials, tally.leading_failures(), gate)) {
      result.gate_passed = true;
      break;
    }
  }
  result.trials = tally.trials;
  result.chosen_ordinal = tally.leading();
  result.chosen = space[result.chosen_ordinal];
  result.final_stats = std::move(last.stats);
  result.apcs = apcs(result.final_stats);
  result.apcs_x = apcs_x_table(result.final_stats);
  result.retained = std::move(last.retained);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string serialize(const SolveResult& r, bool include_timing) {
  std::string out;
  auto line = [&out](const std::string& s) {
    out += s;
    out += '\n';
  };
  line(fmt::format("seed={}", r.seed));
  line(fmt::format("gate_mode={}", to_string(r.gate_mode)));
  line(fmt::format("chosen={}", r.chosen.to_string()));
  line(fmt::format("trials={}", r.trials));
  line(fmt::format("gate_passed={}", r.gate_passed));
  std::string winners;
  for (std::size_t k = 0; k < r.trial_winners.size(); ++k) {
    if (k) winners += ' ';
    winners += std::to_string(r.trial_winners[k]);
  }
  line("trial_winners=" + winners);
  line(fmt::format("apcs={:.17g}", r.apcs));
  for (const auto& [x, value] : r.apcs_x) {
    line(fmt::format("apcs_x[{:.2f}]={:.17g}", x, value));
  }
  line(fmt::format("total_samples={}", r.total_samples));
  for (std::size_t j = 0; j < r.final_stats.size(); ++j) {
    const auto& s = r.final_stats[j];
    line(fmt::format("stat[{}]={} {:.17g} {:.17g}", j, s.count(), s.mean(), s.stddev()));
  }
  if (include_timing) line(fmt::format("wall_seconds={:.6f}", r.wall_seconds));
  return out;
}

std::vector<TraitSample> draw_trait_samples(const Model& model, std::int64_t n_r,
                                            std::uint64_t seed) {
  std::vector<TraitSample> out;
  out.reserve(static_cast<std::size_t>(n_r));
  for (std::int64_t i = 0; i < n_r; ++i) {
    Stream rng(derive_key(seed, {tag(StreamTag::kTraits), static_cast<std::uint64_t>(i)}));
    out.push_back(sample_traits(model, rng));
  }
  return out;
}

std::vector<RankedStrategy> solve_exact_partial_analytic(const Model& model,
                                                         std::int64_t n_r,
                                                         std::uint64_t seed) {
  return solve_exact_with(model, n_r, seed, [&](int i, int d, int a) {
    return model.closed_unit(i, d, a);
  });
}

std::vector<RankedStrategy> solve_exact_fully_numeric(const Model& model,
                                                      std::int64_t n_r, int n_s,
                                                      std::uint64_t seed) {
  if (n_s < 1) throw InvalidArgument("N_S must be at least 1");
  return solve_exact_with(model, n_r, seed, [&](int i, int d, int a) {
    return quadrature_unit(model, i, d, a, n_s);
  });
}

}  // namespace ara
