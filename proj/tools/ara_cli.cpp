// ara: command-line front end for the ARA solvers.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ara/errors.hpp"
#include "ara/experiment.hpp"
#include "ara/rng.hpp"
#include "ara/trial_calculus.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string model;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> repeats;
  std::string profile = "desk";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--model", o.model, "Built-in parameter set name");
  cmd->add_option("--n", o.n, "Use the original-n<N> built-in (2..5)");
  cmd->add_option("--seed", o.seed, "Root seed");
  cmd->add_option("--repeats", o.repeats, "Independent runs");
  cmd->add_option("--profile", o.profile, "Budget profile when no config is given")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--out", o.out, "Output directory for CSV files");
}

ara::ExperimentConfig resolve(const CommonOptions& o, ara::SolverKind solver) {
  ara::ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    cfg = ara::load_config(o.config_path);
  } else {
    std::string name = o.model;
    if (name.empty()) name = fmt::format("original-n{}", o.n.value_or(2));
    cfg = ara::ExperimentConfig::for_builtin(name, ara::parse_profile(o.profile));
  }
  cfg.solver = solver;
  if (o.seed) cfg.seed = *o.seed;
  if (o.repeats) cfg.repeats = *o.repeats;
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

int run_solver(const CommonOptions& o, ara::SolverKind solver) {
  const auto cfg = resolve(o, solver);
  const auto report = ara::run_experiment(cfg);
  std::cout << ara::report_csv(report);
  if (!cfg.output_dir.empty()) {
    std::cerr << fmt::format("wrote {}\n", cfg.output_dir);
  }
  return 0;
}

// Splits one CSV line; quoted fields may contain commas.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

int summarize(const std::string& dir) {
  const auto path = std::filesystem::path(dir) / "report.csv";
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  std::string line;
  std::getline(in, line);
  const auto header = split_csv(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("report.csv has no column " + name);
  };
  const auto c_trials = column("trials");
  const auto c_chosen = column("chosen");
  const auto c_pct = column("percent_optimum");

  std::int64_t runs = 0;
  std::int64_t trial_sum = 0;
  std::int64_t trial_runs = 0;
  std::optional<double> min_pct;
  std::map<std::string, std::int64_t> chosen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    ++runs;
    ++chosen[f[c_chosen]];
    if (!f[c_trials].empty()) {
      trial_sum += std::stoll(f[c_trials]);
      ++trial_runs;
    }
    if (!f[c_pct].empty()) {
      const double p = std::stod(f[c_pct]);
      min_pct = min_pct ? std::min(*min_pct, p) : p;
    }
  }
  fmt::print("runs {}\n", runs);
  if (trial_runs > 0) {
    fmt::print("mean trials {:.3f}\n", static_cast<double>(trial_sum) / trial_runs);
  }
  if (min_pct) fmt::print("min percent of optimum {:.4f}\n", *min_pct);
  for (const auto& [strategy, count] : chosen) {
    fmt::print("chosen [{}] {} times\n", strategy, count);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial risk analysis solvers for the modified Colonel Blotto game"};
  app.require_subcommand(1);

  CommonOptions solve_opts, exact_opts, greedy_opts;
  auto* solve = app.add_subcommand("solve", "Run the nested OCBA algorithm");
  add_common(solve, solve_opts);

  auto* exact = app.add_subcommand("exact", "Enumerate the defender's problem exactly");
  add_common(exact, exact_opts);
  std::string method = "partial";
  exact->add_option("--method", method, "partial (closed form) or numeric (quadrature)")
      ->check(CLI::IsMember({"partial", "numeric"}));

  auto* greedy = app.add_subcommand("greedy", "Greedy search with random restarts");
  add_common(greedy, greedy_opts);

  auto* plan = app.add_subcommand("plan-trials", "Minimum and expected trial counts");
  double alpha = 0.05;
  double p_b = 0.6;
  int f_max = 10;
  std::string gate_mode = "paper-faithful";
  std::int64_t mc_reps = 0;
  plan->add_option("--alpha", alpha, "One-sided risk");
  plan->add_option("--pb", p_b, "Per-trial win probability of the optimum");
  plan->add_option("--fmax", f_max, "Largest failure count in the table");
  plan->add_option("--gate-mode", gate_mode)
      ->check(CLI::IsMember({"paper-faithful", "standard-wilson"}));
  plan->add_option("--mc-reps", mc_reps, "Also simulate this many runs");

  auto* size = app.add_subcommand("size", "Problem size accounting");
  int n_min = 1;
  int n_max = 5;
  size->add_option("--n-min", n_min);
  size->add_option("--n-max", n_max);

  auto* report = app.add_subcommand("report", "Summarize report.csv in a directory");
  std::string report_dir;
  report->add_option("--out", report_dir, "Directory holding report.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solver(solve_opts, ara::SolverKind::kAlgorithm1);
    if (*exact) {
      return run_solver(exact_opts, method == "partial" ? ara::SolverKind::kExactPartial
                                                        : ara::SolverKind::kExactNumeric);
    }
    if (*greedy) return run_solver(greedy_opts, ara::SolverKind::kGreedy);
    if (*plan) {
      const auto gate = ara::GateParams::make(alpha, ara::parse_gate_mode(gate_mode));
      const auto cond = ara::condition_report(gate);
      fmt::print("alpha {}  z {:.6f}  n0 {}  gate {}\n", gate.alpha, gate.z, gate.n0,
                 ara::to_string(gate.mode));
      fmt::print("condition (z^2/4): {:.4f} < {:.4f} -> {}\n", cond.lhs, cond.rhs_quarter,
                 cond.holds_quarter);
      fmt::print("condition (z^2/2): {:.4f} < {:.4f} -> {}\n", cond.lhs, cond.rhs_half,
                 cond.holds_half);
      const auto tp = ara::plan_trials(p_b, gate, f_max);
      fmt::print("f,min_trials\n");
      for (const auto& [f, n] : tp.table) fmt::print("{},{}\n", f, n);
      if (!std::isnan(tp.expected_trials)) {
        fmt::print("expected trials at p_b = {}: {:.4f}\n", p_b, tp.expected_trials);
      }
      if (mc_reps > 0) {
        ara::Stream rng(ara::derive_key(1, {ara::tag(ara::StreamTag::kMonteCarlo)}));
        const auto [mean, se] = ara::expected_trials_mc(p_b, gate, mc_reps, rng);
        fmt::print("simulated: {:.4f} (se {:.4f})\n", mean, se);
      }
      return 0;
    }
    if (*size) {
      std::vector<int> ns;
      for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
      std::cout << ara::size_csv(ara::size_report(ns));
      return 0;
    }
    if (*report) return summarize(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
