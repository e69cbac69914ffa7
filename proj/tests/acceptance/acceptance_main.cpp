// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any selected criterion fails. `--only N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ara/adversary.hpp"
#include "ara/ara_solver.hpp"
#include "ara/blotto_model.hpp"
#include "ara/experiment.hpp"
#include "ara/greedy.hpp"
#include "ara/normal.hpp"
#include "ara/ocba.hpp"
#include "ara/parallel.hpp"
#include "ara/rng.hpp"
#include "ara/strategy_space.hpp"
#include "ara/trial_calculus.hpp"
#include "ara/wilson_gate.hpp"

using namespace ara;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Verdict()> run;
};

ModelParams truncated(int n) {
  ModelParams p = builtin_params("original-n5");
  p.status_quo.resize(n);
  p.attack_difficulty.resize(n);
  p.defense_difficulty.resize(n);
  p.target_values.resize(n);
  p.traits.resize(n);
  return p;
}

// Attacker objective in the quadratic-program form, from raw parameters.
double qip_objective(const ModelParams& p, const Allocation& d, const Allocation& a,
                     const TraitSample& r) {
  const double n = static_cast<double>(d.size());
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double c = p.status_quo[i];
    const double a1 = 1.0 / n;
    const double a2 = (10 / 4.6) * std::exp(4.6 * (c + 0.05)) * (std::exp(-0.46) - 1) / n;
    const double ratio = (p.attack_difficulty[i] * a.share(i) + 1) /
                         (p.defense_difficulty[i] * d.share(i) + 1);
    total += r.values[i] * (a1 + a2 * std::exp(-4.6 * c) * ratio * ratio);
  }
  return total;
}

Verdict strategy_counts() {
  const std::uint64_t expected[] = {11, 66, 286, 1001};
  bool ok = true;
  std::string got;
  for (int n = 2; n <= 5; ++n) {
    const std::uint64_t c = count(n);
    const std::size_t listed = enumerate(n).size();
    ok = ok && c == expected[n - 2] && listed == c;
    got += fmt::format("{}{}", n > 2 ? "," : "", c);
  }
  return {ok, "counts n=2..5: " + got};
}

Verdict closed_forms() {
  constexpr double kTol = 1e-4;
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 4; ++n) {
    const Model m(truncated(n));
    const SpaceIndex space = enumerate(n);
    Stream rng(derive_key(2, {static_cast<std::uint64_t>(n)}));
    for (int k = 0; k < 100; ++k) {
      const Allocation& d = space[rng.below(space.size())];
      const Allocation& a = space[rng.below(space.size())];
      const TraitSample r = sample_traits(m, rng);
      worst = std::max(worst, std::abs(expected_attacker_closed(m, d, a, r) -
                                       expected_numeric(m, d, a, Player::kAttacker, &r, 200)));
      worst = std::max(worst, std::abs(expected_defender_closed(m, d, a) -
                                       expected_numeric(m, d, a, Player::kDefender, nullptr, 200)));
      ++cases;
    }
  }
  return {worst <= kTol, fmt::format("{} instances, max |closed - numeric| = {:.3e} (tol {:.0e})",
                                     cases, worst, kTol)};
}

Verdict qip_equivalence() {
  int agree = 0;
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    const ModelParams p = truncated(n);
    const Model m(p);
    const SpaceIndex space = enumerate(n);
    Stream rng(derive_key(3, {static_cast<std::uint64_t>(n)}));
    for (int k = 0; k < 50; ++k) {
      const Allocation& d = space[rng.below(space.size())];
      const TraitSample r = sample_traits(m, rng);
      std::size_t arg = 0;
      double best = -HUGE_VAL;
      for (std::size_t j = 0; j < space.size(); ++j) {
        const double v = qip_objective(p, d, space[j], r);
        if (v > best) {
          best = v;
          arg = j;
        }
      }
      agree += best_response_exact(m, space, d.tenths(), r).ordinal == arg;
      ++cases;
    }
  }
  return {agree == cases, fmt::format("{}/{} (d, r) pairs agree, n = 1..3", agree, cases)};
}

Verdict gate_table() {
  const GateParams g = GateParams::make(0.05);
  const int expected[] = {3, 5, 7, 9, 11, 13, 15};
  bool ok = true;
  std::string got;
  for (int f = 0; f <= 6; ++f) {
    const int t = min_trials(f, g);
    ok = ok && t == expected[f];
    got += fmt::format("{}{}", f ? "," : "", t);
  }
  return {ok, "min_trials f=0..6: " + got};
}

Verdict lemma_bracket() {
  const GateParams g = GateParams::make(0.05);
  const ConditionReport c = condition_report(g);
  int mismatches = 0;
  for (int f = 0; f <= 200; ++f) mismatches += min_trials(f, g) != 2 * f + 3;
  const bool ok = sufficient_condition(g) && mismatches == 0;
  return {ok, fmt::format("condition {:.4f} < {:.4f}: {}; min_trials != 2f+3 for {} of 201",
                          c.lhs, c.rhs_quarter, c.holds_quarter, mismatches)};
}

Verdict expected_trial_counts() {
  const GateParams g = GateParams::make(0.05);
  struct Target {
    double p, value, tol;
  };
  const Target targets[] = {{0.6, 15.0, 0.5}, {0.7647, 5.7, 0.2}};
  bool ok = true;
  std::string detail;
  for (const auto& t : targets) {
    const double e = expected_trials(t.p, g);
    Stream rng(derive_key(6, {tag(StreamTag::kMonteCarlo)}));
    const auto [mean, se] = expected_trials_mc(t.p, g, 100000, rng);
    const bool analytic = std::abs(e - t.value) <= t.tol;
    const bool simulated = std::abs(mean - e) <= 3 * se;
    ok = ok && analytic && simulated;
    detail += fmt::format("p={}: recursion {:.4f} (target {}±{}), MC {:.4f}±{:.4f}; ", t.p, e,
                          t.value, t.tol, mean, se);
  }
  return {ok, detail};
}

Verdict apcs_example() {
  const std::vector<double> means{0.0660, 0.0630};
  const std::vector<double> ses{0.0036, 0.0049};
  const double term = 100.0 * (1.0 - apcs_moments(means, ses));
  return {std::abs(term - 31.12) <= 0.25, fmt::format("pairwise term {:.4f}% (31.12 ± 0.25)", term)};
}

// Number of rows meeting `accept`, and the chosen strategies.
template <typename Accept>
std::pair<int, std::string> score_runs(const RunReport& report, Accept accept) {
  int hits = 0;
  std::string chosen;
  for (const auto& row : report.rows) {
    hits += accept(row);
    chosen += fmt::format("[{}] ", row.chosen.to_string());
  }
  return {hits, chosen};
}

Verdict end_to_end_n2() {
  ExperimentConfig cfg = ExperimentConfig::for_builtin("original-n2", Profile::kPaper);
  cfg.repeats = 10;
  cfg.reference_n_r = 10000;
  const RunReport report = run_experiment(cfg);
  const Allocation optimum = report.reference.front().strategy;
  const auto [hits, chosen] =
      score_runs(report, [&](const RunRow& row) { return row.chosen == optimum; });
  return {hits >= 9, fmt::format("budget {}/{}/N_R {}; exact optimum [{}]; {}/10 match; chosen {}",
                                 cfg.budget.outer.initial, cfg.budget.outer.per_iteration,
                                 cfg.budget.n_r, optimum.to_string(), hits, chosen)};
}

Verdict end_to_end_n3() {
  ExperimentConfig cfg = ExperimentConfig::for_builtin("original-n3", Profile::kDesk);
  cfg.repeats = 10;
  cfg.reference_n_r = 10000;
  const RunReport report = run_experiment(cfg);
  const auto [hits, chosen] = score_runs(report, [](const RunRow& row) {
    return row.percent_optimum && *row.percent_optimum >= 95.0;
  });
  double worst = 100.0;
  for (const auto& row : report.rows) worst = std::min(worst, row.percent_optimum.value_or(0.0));
  const Allocation first = report.reference[0].strategy;
  const Allocation second = report.reference[1].strategy;
  const bool top_two = first == Allocation({7, 0, 3}) && second == Allocation({8, 0, 2});
  return {hits >= 9 && top_two,
          fmt::format("top two [{}] {:.5f}, [{}] {:.5f}; {}/10 runs >= 95% (worst {:.2f}%)",
                      first.to_string(), report.reference[0].value, second.to_string(),
                      report.reference[1].value, hits, worst)};
}

Verdict allocation_property() {
  Stream rng(derive_key(10, {}));
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t k = 2 + rng.below(40);
    std::vector<double> mu(k), sd(k);
    for (std::size_t i = 0; i < k; ++i) {
      mu[i] = 2.0 * rng.uniform() - 1.0;
      sd[i] = 1e-3 + rng.uniform();
    }
    const std::int64_t budget = 10 + static_cast<std::int64_t>(rng.below(10000));
    const AllocationPlan plan = allocate_moments(mu, sd, budget);
    const std::size_t b = plan.best;
    const std::size_t ref = b == 0 ? 1 : 0;
    const double g_ref = sd[ref] / (mu[b] - mu[ref]);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == b) continue;
      const double g = sd[i] / (mu[b] - mu[i]);
      const double want = (g * g) / (g_ref * g_ref);
      worst = std::max(worst, std::abs(plan.fractional[i] / plan.fractional[ref] - want) / want);
      sum_sq += plan.fractional[i] * plan.fractional[i] / (sd[i] * sd[i]);
    }
    const double nb = sd[b] * std::sqrt(sum_sq);
    worst = std::max(worst, std::abs(plan.fractional[b] - nb) / nb);
  }
  return {worst <= 1e-9, fmt::format("1000 cases, max relative residual {:.3e}", worst)};
}

Verdict greedy_comparison() {
  const Model m(builtin_params("original-n2"));
  const Allocation optimum =
      solve_exact_partial_analytic(m, 10000, derive_key(1, {tag(StreamTag::kReference)}))
          .front()
          .strategy;

  GreedyConfig generous;
  generous.samples_per_eval = 10000;
  generous.nested_samples = 300;
  const GreedyResult big = greedy_search(m, generous, 1);
  const bool finds = big.best == optimum;

  GreedyConfig lean;
  lean.samples_per_eval = 7;
  SolverBudget matched = SolverBudget::paper_defaults(2);
  matched.outer = {4, 7, 3};
  Algorithm1Options one_trial;
  one_trial.max_trials = 1;
  const GateParams gate = GateParams::make(0.05);

  double g_sum = 0.0, a_sum = 0.0;
  double g_first = 0.0, a_first = 0.0;
  std::int64_t g_samples = 0, a_samples = 0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const GreedyResult g = greedy_search(m, lean, s);
    const SolveResult a = run_algorithm1(m, matched, gate, s, one_trial);
    g_sum += g.apcs;
    a_sum += a.apcs;
    g_samples += g.total_samples;
    a_samples += a.total_samples;
    if (s == 1) {
      g_first = g.apcs;
      a_first = a.apcs;
    }
  }
  const double ratio = static_cast<double>(a_samples) / static_cast<double>(g_samples);
  const bool matched_ok = std::abs(ratio - 1.0) <= 0.10;
  const bool negative = g_first < 0.0 && g_sum / 10 < 0.0;
  const bool higher = a_first > g_first && a_sum > g_sum;
  return {finds && matched_ok && negative && higher,
          fmt::format("generous greedy [{}] vs exact [{}]; 7-sample greedy APCS seed1 {:.3f} "
                      "mean {:.3f}; algorithm 1 APCS seed1 {:.3f} mean {:.3f}; samples {} vs {}",
                      big.best.to_string(), optimum.to_string(), g_first, g_sum / 10, a_first,
                      a_sum / 10, g_samples / 10.0, a_samples / 10.0)};
}

Verdict determinism() {
  std::vector<ExperimentConfig> configs;
  {
    ExperimentConfig c = ExperimentConfig::for_builtin("original-n2");
    c.repeats = 3;
    c.reference_n_r = 1000;
    configs.push_back(c);
    c.solver = SolverKind::kExactPartial;
    configs.push_back(c);
    c.solver = SolverKind::kExactNumeric;
    configs.push_back(c);
    c.solver = SolverKind::kGreedy;
    c.greedy.samples_per_eval = 20;
    c.greedy.nested_samples = 20;
    configs.push_back(c);
  }
  {
    ExperimentConfig c = ExperimentConfig::for_builtin("original-n3");
    c.repeats = 2;
    c.reference_n_r = 1000;
    c.max_trials = 3;
    configs.push_back(c);
  }
  int identical = 0;
  for (const auto& cfg : configs) {
    std::vector<std::string> outputs;
    for (std::size_t threads : {1u, 1u, 4u, 4u}) {
      set_thread_count(threads);
      const RunReport r = run_experiment(cfg);
      outputs.push_back(report_csv(r) + landscape_csv(r));
    }
    set_thread_count(1);
    bool same = true;
    for (const auto& o : outputs) same = same && o == outputs[0];
    identical += same;
  }
  return {identical == static_cast<int>(configs.size()),
          fmt::format("{}/{} solver configurations byte-identical over 2 single- and 2 "
                      "four-thread executions",
                      identical, configs.size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1..12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "strategy-space counts", 1, strategy_counts},
      {2, "closed-form expectations", 10, closed_forms},
      {3, "QIP equivalence", 10, qip_equivalence},
      {4, "gate table", 1, gate_table},
      {5, "trial-count bracket and condition", 1, lemma_bracket},
      {6, "expected trials", 30, expected_trial_counts},
      {7, "APCS worked example", 1, apcs_example},
      {8, "end-to-end n=2", 300, end_to_end_n2},
      {9, "end-to-end n=3", 1800, end_to_end_n3},
      {10, "OCBA allocation equations", 1, allocation_property},
      {11, "greedy comparison", 300, greedy_comparison},
      {12, "determinism", 300, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = v.pass && in_time;
    failures += !pass;
    fmt::print("{} {:>2} {}: {} [{:.2f}s, limit {}s{}]\n", pass ? "PASS" : "FAIL", c.id, c.name,
               v.detail, secs, c.limit_seconds, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
