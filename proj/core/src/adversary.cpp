#include "ara/adversary.hpp"

#include <cmath>

#include "ara/errors.hpp"

namespace ara {
namespace {

constexpr double kBandRate = kUtilityRate * kOutcomeWidth;

void check_inputs(const Model& model, std::span<const int> d, const TraitSample& r) {
  if (static_cast<int>(d.size()) != model.dimension() ||
      static_cast<int>(r.values.size()) != model.dimension()) {
    throw InvalidArgument("allocation or trait sample does not match the model");
  }
}

}  // namespace

SeparableOptimum argmax_separable(const SpaceIndex& space,
                                  std::span<const double> table) {
  const int n = space.dimension();
  SeparableOptimum best{0, -HUGE_VAL};
  for (std::size_t j = 0; j < space.size(); ++j) {
    const auto a = space.tenths(j);
    double value = 0.0;
    for (int i = 0; i < n; ++i) value += table[i * kGridPoints + a[i]];
    if (value > best.value) best = {j, value};
  }
  return best;
}

BestResponse best_response_exact(const Model& model, const SpaceIndex& space,
                                 std::span<const int> d, const TraitSample& r) {
  check_inputs(model, d, r);
  const int n = model.dimension();
  std::vector<double> table(static_cast<std::size_t>(n) * kGridPoints);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < kGridPoints; ++a) {
      table[i * kGridPoints + a] = r.values[i] * model.closed_unit(i, d[i], a);
    }
  }
  const auto best = argmax_separable(space, table);
  return {space[best.ordinal], best.ordinal, best.value, ResponseMethod::kExact};
}

BestResponse best_response_exact(const Model& model, const Allocation& d,
                                 const TraitSample& r) {
  const SpaceIndex space = enumerate(model.dimension());
  return best_response_exact(model, space, d.tenths(), r);
}

double sample_attacker_utility(const Model& model, std::span<const int> d,
                               std::span<const int> a, const TraitSample& r,
                               Stream& rng) {
  const int n = model.dimension();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    // exp(-4.6 (s - C_H - .05)) with s = h + .1 u
    const double decay = model.floor_factor(i, d[i], a[i]) *
                         std::exp(-kBandRate * rng.uniform());
    total += r.values[i] * (1.0 - decay);
  }
  return total / n;
}

double sample_defender_utility(const Model& model, std::span<const int> d,
                               std::span<const int> a, Stream& rng) {
  const int n = model.dimension();
  const auto& v = model.params().target_values;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double decay = model.floor_factor(i, d[i], a[i]) *
                         std::exp(-kBandRate * rng.uniform());
    total += v[i] * (decay - 1.0);
  }
  return total / n;
}

BestResponse best_response_ocba(const Model& model, const SpaceIndex& space,
                                std::span<const int> d, const TraitSample& r,
                                const NestedBudget& budget, Stream& rng) {
  check_inputs(model, d, r);
  if (space.size() == 1) {
    return {space[0], 0, 0.0, ResponseMethod::kOcba};
  }
  auto sampler = [&](std::size_t candidate, std::int64_t count, int,
                     SampleStats& stats) {
    const auto a = space.tenths(candidate);
    for (std::int64_t k = 0; k < count; ++k) {
      stats.add(sample_attacker_utility(model, d, a, r, rng));
    }
  };
  const OcbaOutcome outcome = run_ocba(space.size(), budget, sampler, false);
  return {space[outcome.best], outcome.best, outcome.stats[outcome.best].mean(),
          ResponseMethod::kOcba};
}

BestResponse best_response_ocba(const Model& model, const Allocation& d,
                                const TraitSample& r, const NestedBudget& budget,
                                Stream& rng) {
  const SpaceIndex space = enumerate(model.dimension());
  return best_response_ocba(model, space, d.tenths(), r, budget, rng);
}

}  // namespace ara
