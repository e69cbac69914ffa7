#include "ara/blotto_model.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ara/errors.hpp"

namespace ara {
namespace {

constexpr double kFloorMax = 0.9;
constexpr double kFloorSlack = 1e-12;
constexpr double kNeutralOffset = 0.05;

double floor_value(double status_quo, double attack, double defense, double a,
                   double d) {
  return -(2.0 / kUtilityRate) *
             (std::log(attack * a + 1.0) - std::log(defense * d + 1.0)) +
         status_quo;
}

// (10/4.6) e^{4.6(C + .05)} (e^{-.46} - 1); the closed-form attacker
// expectation per target is (1/n)(1 + K e^{-4.6 h}).
double closed_coefficient(double status_quo) {
  return (1.0 / (kUtilityRate * kOutcomeWidth)) *
         std::exp(kUtilityRate * (status_quo + kNeutralOffset)) *
         (std::exp(-kUtilityRate * kOutcomeWidth) - 1.0);
}

void check_dimension(const ModelParams& params, std::size_t size,
                     const char* what) {
  if (static_cast<int>(size) != params.dimension()) {
    throw InvalidArgument(fmt::format("{} has dimension {}, model has {}", what,
                                      size, params.dimension()));
  }
}

}  // namespace

void TriangularDist::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(mode) || !std::isfinite(upper) ||
      !(lower <= mode && mode <= upper)) {
    throw InvalidParameters(fmt::format(
        "triangular({}, {}, {}) requires lower <= mode <= upper", lower, mode,
        upper));
  }
}

double TriangularDist::quantile(double q) const {
  const double span = upper - lower;
  if (span <= 0.0) return lower;
  const double split = (mode - lower) / span;
  if (q <= split) return lower + std::sqrt(q * span * (mode - lower));
  return upper - std::sqrt((1.0 - q) * span * (upper - mode));
}

void ModelParams::validate() const {
  const std::size_t n = status_quo.size();
  if (n < 1 || n > static_cast<std::size_t>(kMaxDimension)) {
    throw InvalidParameters(fmt::format("target count {} outside 1..{}", n,
                                        kMaxDimension));
  }
  if (attack_difficulty.size() != n || defense_difficulty.size() != n ||
      target_values.size() != n || traits.size() != n) {
    throw InvalidParameters(
        "C_H, c_A, c_D, v and traits must all have one entry per target");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double ch = status_quo[i];
    const double ca = attack_difficulty[i];
    const double cd = defense_difficulty[i];
    if (!(ch >= 0.0 && ch <= kFloorMax)) {
      throw InvalidParameters(fmt::format("C_H[{}] = {} outside [0, .9]", i, ch));
    }
    if (!(ca > -1.0 && ca <= 0.0)) {
      throw InvalidParameters(fmt::format("c_A[{}] = {} outside (-1, 0]", i, ca));
    }
    if (!(cd > -1.0 && cd <= 0.0)) {
      throw InvalidParameters(fmt::format("c_D[{}] = {} outside (-1, 0]", i, cd));
    }
    if (!(target_values[i] > 0.0) || !std::isfinite(target_values[i])) {
      throw InvalidParameters(
          fmt::format("v[{}] = {} must be positive", i, target_values[i]));
    }
    traits[i].validate();
    // h is increasing in a and decreasing in d, so the extremes are
    // (d=1, a=0) and (d=0, a=1).
    const double low = floor_value(ch, ca, cd, 0.0, 1.0);
    const double high = floor_value(ch, ca, cd, 1.0, 0.0);
    if (!(low >= -kFloorSlack && high <= kFloorMax + kFloorSlack)) {
      throw InvalidParameters(fmt::format(
          "outcome floor on target {} spans [{}, {}], outside [0, .9]", i, low,
          high));
    }
  }
}

Model::Model(ModelParams params) : params_(std::move(params)) {
  params_.validate();
  n_ = params_.dimension();
  const std::size_t cells = static_cast<std::size_t>(n_) * kGridPoints * kGridPoints;
  floor_.resize(cells);
  closed_unit_.resize(cells);
  floor_factor_.resize(cells);
  for (int i = 0; i < n_; ++i) {
    const double ch = params_.status_quo[i];
    const double coefficient = closed_coefficient(ch);
    for (int d = 0; d < kGridPoints; ++d) {
      for (int a = 0; a < kGridPoints; ++a) {
        const double h =
            floor_value(ch, params_.attack_difficulty[i],
                        params_.defense_difficulty[i], a / 10.0, d / 10.0);
        if (!std::isfinite(h)) {
          throw InvalidParameters(fmt::format("non-finite outcome floor on target {}", i));
        }
        const std::size_t k = index(i, d, a);
        floor_[k] = h;
        closed_unit_[k] = (1.0 + coefficient * std::exp(-kUtilityRate * h)) / n_;
        floor_factor_[k] = std::exp(-kUtilityRate * (h - ch - kNeutralOffset));
      }
    }
  }
}

std::vector<double> outcome_floor(const ModelParams& params, const Allocation& d,
                                  const Allocation& a) {
  check_dimension(params, d.size(), "defender allocation");
  check_dimension(params, a.size(), "attacker allocation");
  std::vector<double> h(d.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    h[i] = floor_value(params.status_quo[i], params.attack_difficulty[i],
                       params.defense_difficulty[i], a.share(i), d.share(i));
    if (!std::isfinite(h[i])) {
      throw InvalidParameters(fmt::format("non-finite outcome floor on target {}", i));
    }
  }
  return h;
}

std::vector<double> outcome_floor(const Model& model, const Allocation& d,
                                  const Allocation& a) {
  return outcome_floor(model.params(), d, a);
}

SuccessVector sample_success(const Model& model, const Allocation& d,
                             const Allocation& a, Stream& rng) {
  check_dimension(model.params(), d.size(), "defender allocation");
  check_dimension(model.params(), a.size(), "attacker allocation");
  SuccessVector s{std::vector<double>(d.size())};
  for (std::size_t i = 0; i < d.size(); ++i) {
    s.levels[i] = model.floor(i, d[i], a[i]) + kOutcomeWidth * rng.uniform();
  }
  return s;
}

TraitSample sample_traits(const ModelParams& params, Stream& rng) {
  TraitSample r{std::vector<double>(params.traits.size())};
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    r.values[i] = params.traits[i].quantile(rng.uniform());
  }
  return r;
}

TraitSample sample_traits(const Model& model, Stream& rng) {
  return sample_traits(model.params(), rng);
}

double utility_defender(const ModelParams& params, const SuccessVector& s) {
  check_dimension(params, s.levels.size(), "success vector");
  double total = 0.0;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const double shift = s.levels[i] - params.status_quo[i] - kNeutralOffset;
    total += params.target_values[i] * (std::exp(-kUtilityRate * shift) - 1.0);
  }
  return total / static_cast<double>(s.levels.size());
}

double utility_attacker(const ModelParams& params, const SuccessVector& s,
                        const TraitSample& r) {
  check_dimension(params, s.levels.size(), "success vector");
  check_dimension(params, r.values.size(), "trait sample");
  double total = 0.0;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const double shift = s.levels[i] - params.status_quo[i] - kNeutralOffset;
    total += r.values[i] * (1.0 - std::exp(-kUtilityRate * shift));
  }
  return total / static_cast<double>(s.levels.size());
}

double expected_attacker_closed(const Model& model, std::span<const int> d,
                                std::span<const int> a, const TraitSample& r) {
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    total += r.values[i] * model.closed_unit(i, d[i], a[i]);
  }
  return total;
}

double expected_attacker_closed(const Model& model, const Allocation& d,
                                const Allocation& a, const TraitSample& r) {
  check_dimension(model.params(), d.size(), "defender allocation");
  check_dimension(model.params(), a.size(), "attacker allocation");
  check_dimension(model.params(), r.values.size(), "trait sample");
  return expected_attacker_closed(model, d.tenths(), a.tenths(), r);
}

double expected_defender_closed(const Model& model, std::span<const int> d,
                                std::span<const int> a) {
  const auto& v = model.params().target_values;
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    total -= v[i] * model.closed_unit(i, d[i], a[i]);
  }
  return total;
}

double expected_defender_closed(const Model& model, const Allocation& d,
                                const Allocation& a) {
  check_dimension(model.params(), d.size(), "defender allocation");
  check_dimension(model.params(), a.size(), "attacker allocation");
  return expected_defender_closed(model, d.tenths(), a.tenths());
}

double quadrature_unit(const Model& model, std::size_t target, int d, int a,
                       int n_s) {
  if (n_s < 1) throw InvalidArgument("N_S must be at least 1");
  const double h = model.floor(target, d, a);
  const double center = model.params().status_quo[target] + kNeutralOffset;
  const double cell = kOutcomeWidth / n_s;
  double sum = 0.0;
  for (int k = 0; k < n_s; ++k) {
    const double s = h + (k + 0.5) * cell;
    sum += 1.0 - std::exp(-kUtilityRate * (s - center));
  }
  return sum / n_s / model.dimension();
}

double expected_numeric(const Model& model, const Allocation& d,
                        const Allocation& a, Player who,
                        const TraitSample* traits, int n_s) {
  const auto& params = model.params();
  check_dimension(params, d.size(), "defender allocation");
  check_dimension(params, a.size(), "attacker allocation");
  if (n_s < 1) throw InvalidArgument("N_S must be at least 1");
  if (who == Player::kAttacker) {
    if (traits == nullptr) {
      throw InvalidArgument("attacker expectation requires a trait sample");
    }
    check_dimension(params, traits->values.size(), "trait sample");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double unit = quadrature_unit(model, i, d[i], a[i], n_s);
    total += who == Player::kAttacker ? traits->values[i] * unit
                                      : -params.target_values[i] * unit;
  }
  return total;
}

}  // namespace ara
