#include "ara/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ara/config_text.hpp"
#include "ara/errors.hpp"
#include "ara/normal.hpp"
#include "ara/parallel.hpp"
#include "ara/rng.hpp"

namespace ara {
namespace {

using config::format_number;
using config::format_numbers;
using config::quote;

ModelParams original(int n) {
  ModelParams p;
  p.status_quo = {0.4, 0.35, 0.4, 0.4, 0.3};
  p.attack_difficulty = {-0.4984, -0.4984, -0.5529, -0.6015, -0.6834};
  p.defense_difficulty = {-0.4984, -0.4373, -0.4373, -0.5529, -0.4626};
  p.target_values = {1.3, 0.8, 1.25, 0.7, 1.1};
  p.traits = {{0.8, 1.0, 1.5}, {0.5, 0.8, 2.5}, {1.0, 1.5, 3.5},
              {0.3, 0.7, 1.1}, {0.6, 1.1, 1.9}};
  p.status_quo.resize(n);
  p.attack_difficulty.resize(n);
  p.defense_difficulty.resize(n);
  p.target_values.resize(n);
  p.traits.resize(n);
  return p;
}

std::string opt_number(const std::optional<double>& x, const char* spec = "{:.6f}") {
  return x ? fmt::format(fmt::runtime(spec), *x) : std::string();
}

std::string file_label(const Allocation& a) {
  std::string s = a.to_string();
  std::replace(s.begin(), s.end(), ',', '_');
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model", "solver", "profile", "seed", "repeats", "output_dir",
      "retain_samples_for", "exact_reference", "reference_n_r",
      "equivalence_threshold", "max_trials",
      "model.status_quo", "model.attack_difficulty", "model.defense_difficulty",
      "model.target_values", "model.traits",
      "budget.initial", "budget.per_iteration", "budget.max_iterations",
      "budget.nested_initial", "budget.nested_per_iteration",
      "budget.nested_max_iterations", "budget.n_r", "budget.n_s",
      "gate.alpha", "gate.mode",
      "greedy.samples_per_eval", "greedy.stop_threshold", "greedy.max_restarts",
      "greedy.nested_samples", "greedy.inner_restarts", "greedy.inner",
  };
  return keys;
}

// Rethrows a domain error as a ConfigError tied to the key's line.
template <typename F>
auto with_context(const config::Document& doc, const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    const config::Value* v = doc.find(key);
    throw ConfigError(e.what(), v ? v->line : 0, key);
  }
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"original-n2", "original-n3", "original-n4", "original-n5",
          "set2-mirroring", "set3-low-incentive", "set4-randomized"};
}

ModelParams builtin_params(std::string_view name) {
  if (name.starts_with("original-n") && name.size() == 11) {
    const int n = name.back() - '0';
    if (n >= 2 && n <= 5) return original(n);
  }
  if (name == "set2-mirroring") {
    ModelParams p = original(4);
    p.defense_difficulty[0] = -0.4982;
    p.traits = {{1.0, 1.3, 1.6}, {0.5, 0.8, 1.1}, {0.95, 1.25, 1.55}, {0.4, 0.7, 1.0}};
    return p;
  }
  if (name == "set3-low-incentive") {
    ModelParams p = original(4);
    p.status_quo = {0.33, 0.33, 0.33, 0.4};
    p.attack_difficulty = {-0.5730, -0.5210, -0.6194, -0.6015};
    p.defense_difficulty = {-0.4108, -0.4108, -0.3390, -0.5529};
    return p;
  }
  if (name == "set4-randomized") {
    ModelParams p;
    p.status_quo = {0.39, 0.35, 0.37, 0.34};
    p.attack_difficulty = {-0.5827, -0.5210, -0.5529, -0.5730};
    p.defense_difficulty = {-0.5631, -0.3540, -0.4242, -0.4982};
    p.target_values = {2.3, 1.7, 3.4, 2.1};
    p.traits = {{2.8, 3.0, 3.1}, {2.5, 3.4, 3.5}, {0.8, 1.1, 1.9}, {2.9, 3.2, 3.5}};
    return p;
  }
  throw InvalidArgument(fmt::format("unknown built-in parameter set '{}'", name));
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kAlgorithm1: return "algorithm1";
    case SolverKind::kExactPartial: return "exact-partial";
    case SolverKind::kExactNumeric: return "exact-numeric";
    case SolverKind::kGreedy: return "greedy";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view text) {
  for (auto k : {SolverKind::kAlgorithm1, SolverKind::kExactPartial,
                 SolverKind::kExactNumeric, SolverKind::kGreedy}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument(fmt::format(
      "unknown solver '{}' (expected algorithm1, exact-partial, exact-numeric or greedy)",
      text));
}

std::string to_string(Profile profile) {
  return profile == Profile::kDesk ? "desk" : "paper";
}

Profile parse_profile(std::string_view text) {
  if (text == "desk") return Profile::kDesk;
  if (text == "paper") return Profile::kPaper;
  throw InvalidArgument(fmt::format("unknown profile '{}' (expected desk or paper)", text));
}

SolverBudget budget_for(Profile profile, int n) {
  SolverBudget b = SolverBudget::paper_defaults(n);
  if (profile == Profile::kDesk) {
    b.outer.per_iteration = std::min<std::int64_t>(b.outer.per_iteration, 125);
    b.nested.per_iteration = b.outer.per_iteration;
    b.n_r = std::min<std::int64_t>(b.n_r, 1000);
  }
  return b;
}

ExperimentConfig ExperimentConfig::for_builtin(std::string_view name, Profile profile) {
  ExperimentConfig cfg;
  cfg.model_name = std::string(name);
  cfg.model = builtin_params(name);
  cfg.profile = profile;
  cfg.budget = budget_for(profile, cfg.model.dimension());
  cfg.exact_reference = cfg.model.dimension() <= 3;
  return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
  const auto doc = config::Document::parse(text);
  doc.require_known(known_keys());

  ExperimentConfig cfg;
  if (doc.has("profile")) {
    cfg.profile = with_context(doc, "profile",
                               [&] { return parse_profile(doc.get_string("profile")); });
  }
  if (doc.has("model")) {
    cfg.model_name = doc.get_string("model");
    cfg.model = with_context(doc, "model", [&] { return builtin_params(cfg.model_name); });
  }
  const bool base = !cfg.model_name.empty();
  auto vec = [&](const char* key, std::vector<double>& dst) {
    const std::string k = std::string("model.") + key;
    if (doc.has(k) || !base) dst = doc.get_numbers(k);
  };
  vec("status_quo", cfg.model.status_quo);
  vec("attack_difficulty", cfg.model.attack_difficulty);
  vec("defense_difficulty", cfg.model.defense_difficulty);
  vec("target_values", cfg.model.target_values);
  if (doc.has("model.traits") || !base) {
    cfg.model.traits.clear();
    for (const auto& row : doc.get_number_rows("model.traits")) {
      if (row.size() != 3) {
        throw ConfigError("each trait needs [lower, mode, upper]",
                          doc.find("model.traits")->line, "model.traits");
      }
      cfg.model.traits.push_back({row[0], row[1], row[2]});
    }
  }
  with_context(doc, "model", [&] {
    cfg.model.validate();
    return 0;
  });
  const int n = cfg.model.dimension();

  cfg.budget = budget_for(cfg.profile, n);
  cfg.exact_reference = n <= 3;
  auto set_int = [&](const char* key, auto& dst) {
    if (doc.has(key)) dst = static_cast<std::remove_reference_t<decltype(dst)>>(doc.get_int(key));
  };
  set_int("budget.initial", cfg.budget.outer.initial);
  set_int("budget.per_iteration", cfg.budget.outer.per_iteration);
  set_int("budget.max_iterations", cfg.budget.outer.max_iterations);
  set_int("budget.nested_initial", cfg.budget.nested.initial);
  set_int("budget.nested_per_iteration", cfg.budget.nested.per_iteration);
  set_int("budget.nested_max_iterations", cfg.budget.nested.max_iterations);
  set_int("budget.n_r", cfg.budget.n_r);
  set_int("budget.n_s", cfg.budget.n_s);
  with_context(doc, "budget", [&] {
    cfg.budget.validate();
    return 0;
  });

  if (doc.has("solver")) {
    cfg.solver = with_context(doc, "solver",
                              [&] { return parse_solver_kind(doc.get_string("solver")); });
  }
  {
    const double alpha = doc.has("gate.alpha") ? doc.get_number("gate.alpha") : 0.05;
    const GateMode mode = doc.has("gate.mode")
                              ? with_context(doc, "gate.mode",
                                             [&] { return parse_gate_mode(doc.get_string("gate.mode")); })
                              : GateMode::kPaperFaithful;
    cfg.gate = with_context(doc, "gate.alpha", [&] { return GateParams::make(alpha, mode); });
  }
  set_int("greedy.samples_per_eval", cfg.greedy.samples_per_eval);
  if (doc.has("greedy.stop_threshold")) {
    cfg.greedy.stop_threshold = doc.get_number("greedy.stop_threshold");
  }
  set_int("greedy.max_restarts", cfg.greedy.max_restarts);
  set_int("greedy.nested_samples", cfg.greedy.nested_samples);
  set_int("greedy.inner_restarts", cfg.greedy.inner_restarts);
  if (doc.has("greedy.inner")) {
    const std::string inner = doc.get_string("greedy.inner");
    if (inner == "greedy") {
      cfg.greedy.inner = GreedyInner::kGreedy;
    } else if (inner == "exact") {
      cfg.greedy.inner = GreedyInner::kExact;
    } else {
      throw ConfigError("expected greedy or exact", doc.find("greedy.inner")->line,
                        "greedy.inner");
    }
  }
  with_context(doc, "greedy", [&] {
    cfg.greedy.validate();
    return 0;
  });

  if (doc.has("equivalence_threshold")) {
    cfg.equivalence_threshold = doc.get_number("equivalence_threshold");
    if (!(cfg.equivalence_threshold > 0.0 && cfg.equivalence_threshold <= 1.0)) {
      throw ConfigError("must be in (0, 1]", doc.find("equivalence_threshold")->line,
                        "equivalence_threshold");
    }
  }
  set_int("max_trials", cfg.max_trials);
  if (cfg.max_trials < 1) throw ConfigError("must be positive", 0, "max_trials");
  if (doc.has("seed")) cfg.seed = doc.get_u64("seed");
  set_int("repeats", cfg.repeats);
  if (cfg.repeats < 0) {
    throw ConfigError("must be non-negative", doc.find("repeats")->line, "repeats");
  }
  if (doc.has("output_dir")) cfg.output_dir = doc.get_string("output_dir");
  if (doc.has("retain_samples_for")) {
    for (const auto& s : doc.get_strings("retain_samples_for")) {
      Allocation a = with_context(doc, "retain_samples_for", [&] { return Allocation::parse(s); });
      if (static_cast<int>(a.size()) != n) {
        throw ConfigError("allocation dimension does not match the model",
                          doc.find("retain_samples_for")->line, "retain_samples_for");
      }
      cfg.retain_samples_for.push_back(std::move(a));
    }
  }
  if (doc.has("exact_reference")) cfg.exact_reference = doc.get_bool("exact_reference");
  set_int("reference_n_r", cfg.reference_n_r);
  if (cfg.reference_n_r < 1) throw ConfigError("must be positive", 0, "reference_n_r");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const ExperimentConfig& cfg) {
  std::string out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  if (!cfg.model_name.empty()) kv("model", quote(cfg.model_name));
  kv("solver", quote(to_string(cfg.solver)));
  kv("profile", quote(to_string(cfg.profile)));
  kv("seed", std::to_string(cfg.seed));
  kv("repeats", std::to_string(cfg.repeats));
  if (!cfg.output_dir.empty()) kv("output_dir", quote(cfg.output_dir));
  if (!cfg.retain_samples_for.empty()) {
    std::string list = "[";
    for (std::size_t i = 0; i < cfg.retain_samples_for.size(); ++i) {
      if (i) list += ", ";
      list += quote(cfg.retain_samples_for[i].to_string());
    }
    kv("retain_samples_for", list + "]");
  }
  kv("exact_reference", cfg.exact_reference ? "true" : "false");
  kv("reference_n_r", std::to_string(cfg.reference_n_r));
  kv("equivalence_threshold", format_number(cfg.equivalence_threshold));
  kv("max_trials", std::to_string(cfg.max_trials));

  out += "\n[model]\n";
  kv("status_quo", format_numbers(cfg.model.status_quo));
  kv("attack_difficulty", format_numbers(cfg.model.attack_difficulty));
  kv("defense_difficulty", format_numbers(cfg.model.defense_difficulty));
  kv("target_values", format_numbers(cfg.model.target_values));
  std::string traits = "[";
  for (std::size_t i = 0; i < cfg.model.traits.size(); ++i) {
    const auto& t = cfg.model.traits[i];
    if (i) traits += ", ";
    traits += format_numbers({t.lower, t.mode, t.upper});
  }
  kv("traits", traits + "]");

  out += "\n[budget]\n";
  kv("initial", std::to_string(cfg.budget.outer.initial));
  kv("per_iteration", std::to_string(cfg.budget.outer.per_iteration));
  kv("max_iterations", std::to_string(cfg.budget.outer.max_iterations));
  kv("nested_initial", std::to_string(cfg.budget.nested.initial));
  kv("nested_per_iteration", std::to_string(cfg.budget.nested.per_iteration));
  kv("nested_max_iterations", std::to_string(cfg.budget.nested.max_iterations));
  kv("n_r", std::to_string(cfg.budget.n_r));
  kv("n_s", std::to_string(cfg.budget.n_s));

  out += "\n[gate]\n";
  kv("alpha", format_number(cfg.gate.alpha));
  kv("mode", quote(to_string(cfg.gate.mode)));

  out += "\n[greedy]\n";
  kv("samples_per_eval", std::to_string(cfg.greedy.samples_per_eval));
  kv("stop_threshold", format_number(cfg.greedy.stop_threshold));
  kv("max_restarts", std::to_string(cfg.greedy.max_restarts));
  kv("nested_samples", std::to_string(cfg.greedy.nested_samples));
  kv("inner_restarts", std::to_string(cfg.greedy.inner_restarts));
  kv("inner", quote(cfg.greedy.inner == GreedyInner::kGreedy ? "greedy" : "exact"));
  return out;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  const Model model(cfg.model);
  const int n = model.dimension();
  const SpaceIndex space = enumerate(n);
  RunReport report;

  std::vector<double> exact_by_ordinal;
  double best_exact = 0.0;
  double worst_exact = 0.0;
  if (cfg.exact_reference) {
    report.reference = solve_exact_partial_analytic(
        model, cfg.reference_n_r, derive_key(cfg.seed, {tag(StreamTag::kReference)}));
    exact_by_ordinal.resize(space.size());
    for (const auto& r : report.reference) exact_by_ordinal[r.ordinal] = r.value;
    best_exact = report.reference.front().value;
    worst_exact = report.reference.back().value;
  }

  const auto runs = static_cast<std::size_t>(cfg.repeats);
  report.rows.resize(runs);
  std::vector<std::vector<SampleStats>> run0_stats(1);
  std::vector<double> run0_first;

  parallel_for(runs, [&](std::size_t r) {
    const std::uint64_t seed = derive_key(cfg.seed, {tag(StreamTag::kRun), r});
    RunRow& row = report.rows[r];
    row.solver = to_string(cfg.solver);
    row.n = n;
    row.run = static_cast<std::int64_t>(r);
    row.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (cfg.solver) {
        case SolverKind::kAlgorithm1: {
          Algorithm1Options opts;
          opts.equivalence_threshold = cfg.equivalence_threshold;
          opts.max_trials = cfg.max_trials;
          if (r == 0) opts.retain = cfg.retain_samples_for;
          SolveResult res = run_algorithm1(model, cfg.budget, cfg.gate, seed, opts);
          row.trials = res.trials;
          row.gate_passed = res.gate_passed;
          row.chosen = res.chosen;
          row.apcs = res.apcs;
          row.apcs_x = res.apcs_x;
          row.total_samples = res.total_samples;
          if (r == 0) {
            run0_stats[0] = std::move(res.final_stats);
            run0_first = std::move(res.first_iteration_means);
            for (std::size_t k = 0; k < cfg.retain_samples_for.size(); ++k) {
              report.retained.emplace_back(cfg.retain_samples_for[k],
                                           std::move(res.retained[k]));
            }
          }
          break;
        }
        case SolverKind::kExactPartial:
        case SolverKind::kExactNumeric: {
          const auto ranked =
              cfg.solver == SolverKind::kExactPartial
                  ? solve_exact_partial_analytic(model, cfg.budget.n_r, seed)
                  : solve_exact_fully_numeric(model, cfg.budget.n_r, cfg.budget.n_s, seed);
          row.chosen = ranked.front().strategy;
          row.total_samples = cfg.budget.n_r;
          break;
        }
        case SolverKind::kGreedy: {
          GreedyResult res = greedy_search(model, cfg.greedy, seed);
          row.trials = res.restarts;
          row.chosen = res.best;
          row.apcs = res.apcs;
          row.apcs_x = res.apcs_x;
          row.total_samples = res.total_samples;
          if (r == 0) {
            run0_stats[0].assign(space.size(), SampleStats{});
            for (const auto& [a, s] : res.stats) run0_stats[0][space.ordinal(a)] = s;
          }
          break;
        }
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("run {} (seed {}): {}", r, seed, e.what()));
    }
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.exact_reference) {
      const double value = exact_by_ordinal[space.ordinal(row.chosen)];
      row.exact_value = value;
      if (best_exact != 0.0) row.percent_optimum = 100.0 * value / best_exact;
      if (best_exact > worst_exact) {
        row.percent_optimum_span =
            100.0 * (value - worst_exact) / (best_exact - worst_exact);
      }
    }
  });

  for (std::size_t j = 0; j < space.size(); ++j) {
    LandscapeRow row;
    row.strategy = space[j];
    if (j < run0_first.size()) row.first_iteration = run0_first[j];
    if (j < run0_stats[0].size() && run0_stats[0][j].count() > 0) {
      row.estimate = run0_stats[0][j].mean();
      row.samples = run0_stats[0][j].count();
    }
    if (cfg.exact_reference) row.exact = exact_by_ordinal[j];
    report.landscape.push_back(std::move(row));
  }

  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    const std::filesystem::path dir(cfg.output_dir);
    write_atomic((dir / "report.csv").string(), report_csv(report));
    write_atomic((dir / "timings.csv").string(), timings_csv(report));
    write_atomic((dir / "landscape.csv").string(), landscape_csv(report));
    for (const auto& [a, samples] : report.retained) {
      if (samples.size() < 99) continue;
      write_atomic((dir / ("quantiles_" + file_label(a) + ".csv")).string(),
                   quantiles_csv(export_quantiles(samples)));
    }
  }
  return report;
}

std::string report_csv(const RunReport& report) {
  std::string out =
      "solver,n,run,seed,trials,gate_passed,chosen,exact_value,percent_optimum,"
      "percent_optimum_span,apcs";
  for (double x : kApcsLevels) out += fmt::format(",apcs_{:.0f}", x * 100);
  out += ",total_samples\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{},{},{},{},{},{},\"{}\",{},{},{},{}", r.solver, r.n, r.run, r.seed,
                       r.trials ? std::to_string(*r.trials) : "",
                       r.gate_passed ? (*r.gate_passed ? "true" : "false") : "",
                       r.chosen.to_string(), opt_number(r.exact_value, "{:.8f}"),
                       opt_number(r.percent_optimum, "{:.4f}"),
                       opt_number(r.percent_optimum_span, "{:.4f}"),
                       opt_number(r.apcs, "{:.6f}"));
    for (std::size_t k = 0; k < std::size(kApcsLevels); ++k) {
      out += ',';
      if (k < r.apcs_x.size()) out += fmt::format("{:.6f}", r.apcs_x[k].second);
    }
    out += fmt::format(",{}\n", r.total_samples);
  }
  return out;
}

std::string timings_csv(const RunReport& report) {
  std::string out = "run,seed,wall_seconds\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{},{},{:.3f}\n", r.run, r.seed, r.wall_seconds);
  }
  return out;
}

std::string landscape_csv(const RunReport& report) {
  std::string out = "strategy,first_iteration_mean,final_mean,samples,exact\n";
  for (const auto& r : report.landscape) {
    out += fmt::format("\"{}\",{},{},{},{}\n", r.strategy.to_string(),
                       opt_number(r.first_iteration, "{:.8f}"),
                       opt_number(r.estimate, "{:.8f}"),
                       r.samples ? std::to_string(*r.samples) : "",
                       opt_number(r.exact, "{:.8f}"));
  }
  return out;
}

std::vector<std::pair<double, double>> export_quantiles(std::vector<double> samples,
                                                        int count) {
  if (count < 1) throw InvalidArgument("quantile count must be positive");
  if (samples.size() < static_cast<std::size_t>(count)) {
    throw InvalidArgument(fmt::format("{} quantiles need at least {} samples, got {}",
                                      count, count, samples.size()));
  }
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> out;
  const double last = static_cast<double>(samples.size() - 1);
  for (int k = 1; k <= count; ++k) {
    const double p = static_cast<double>(k) / (count + 1);
    const double h = last * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    const double q = samples[lo] + (h - lo) * (samples[hi] - samples[lo]);
    out.emplace_back(normal_quantile(p), q);
  }
  return out;
}

std::string quantiles_csv(const std::vector<std::pair<double, double>>& points) {
  std::string out = "normal_quantile,sample_quantile\n";
  for (const auto& [t, s] : points) out += fmt::format("{:.6f},{:.8f}\n", t, s);
  return out;
}

std::vector<SizeRow> size_report(const std::vector<int>& ns) {
  std::vector<SizeRow> rows;
  for (int n : ns) {
    if (n < 1) throw InvalidArgument("dimension must be at least 1");
    SizeRow row;
    row.n = n;
    try {
      row.strategies = count(n);
    } catch (const OverflowError&) {
    }
    std::uint64_t n_r = 1;
    bool fits = true;
    for (int i = 0; i < n && fits; ++i) fits = !__builtin_mul_overflow(n_r, 10u, &n_r);
    if (fits) row.n_r = n_r;
    if (row.strategies && row.n_r) {
      try {
        row.computations = computation_size(n, *row.n_r, row.n_s);
      } catch (const OverflowError&) {
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string size_csv(const std::vector<SizeRow>& rows) {
  auto field = [](const std::optional<std::uint64_t>& x) {
    return x ? std::to_string(*x) : std::string("overflow");
  };
  std::string out = "n,strategies,n_r,n_s,computations\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", r.n, field(r.strategies), field(r.n_r), r.n_s,
                       field(r.computations));
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", tmp));
    out << content;
    out.flush();
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", tmp));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ara
