#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ara/rng.hpp"
#include "ara/strategy_space.hpp"

namespace ara {

/// Rate of the exponential utilities and width of the uniform success band.
/// Both are fixed model constants.
inline constexpr double kUtilityRate = 4.6;
inline constexpr double kOutcomeWidth = 0.1;

struct TriangularDist {
  double lower = 0.0;
  double mode = 0.0;
  double upper = 0.0;

  /// lower <= mode <= upper. lower == upper is accepted as a point mass.
  void validate() const;

  /// Inverse CDF at q in [0, 1].
  double quantile(double q) const;

  double mean() const { return (lower + mode + upper) / 3.0; }

  friend bool operator==(const TriangularDist&, const TriangularDist&) = default;
};

/// A modified Colonel Blotto instance over n targets.
struct ModelParams {
  std::vector<double> status_quo;          // C_H, outcome level with no effort
  std::vector<double> attack_difficulty;   // c_A in (-1, 0]
  std::vector<double> defense_difficulty;  // c_D in (-1, 0]
  std::vector<double> target_values;       // v, defender values (positive)
  std::vector<TriangularDist> traits;      // attacker value distributions

  int dimension() const { return static_cast<int>(status_quo.size()); }

  /// Throws InvalidParameters on length mismatch, out-of-range constants or
  /// an outcome floor leaving [0, .9] at any extreme allocation.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Attacker values r drawn from the trait distributions.
struct TraitSample {
  std::vector<double> values;
};

/// Realized success levels, one per target.
struct SuccessVector {
  std::vector<double> levels;
};

enum class Player { kDefender, kAttacker };

/// Validated, immutable model with per-target lookup tables over the
/// 11 x 11 grid of (defender tenths, attacker tenths).
class Model {
 public:
  explicit Model(ModelParams params);

  const ModelParams& params() const noexcept { return params_; }
  int dimension() const noexcept { return n_; }

  /// h_i(d_i, a_i) for tenths d, a.
  double floor(std::size_t target, int d, int a) const {
    return floor_[index(target, d, a)];
  }

  /// E[1 - exp(-4.6 (S_i - C_H,i - .05))] / n under the uniform success
  /// density, in closed form. Attacker expected utility is sum r_i * unit,
  /// defender expected utility is -sum v_i * unit.
  double closed_unit(std::size_t target, int d, int a) const {
    return closed_unit_[index(target, d, a)];
  }

  /// exp(-4.6 (h_i - C_H,i - .05)); the sampled utility term at s_i = h_i + w
  /// is this times exp(-4.6 w).
  double floor_factor(std::size_t target, int d, int a) const {
    return floor_factor_[index(target, d, a)];
  }

 private:
  static std::size_t index(std::size_t target, int d, int a) {
    return target * kGridPoints * kGridPoints +
           static_cast<std::size_t>(d) * kGridPoints + static_cast<std::size_t>(a);
  }

  ModelParams params_;
  int n_;
  std::vector<double> floor_;
  std::vector<double> closed_unit_;
  std::vector<double> floor_factor_;
};

/// h with h_i = -(2/4.6)(ln(c_A,i a_i + 1) - ln(c_D,i d_i + 1)) + C_H,i,
/// evaluated directly from the parameters.
std::vector<double> outcome_floor(const ModelParams& params, const Allocation& d,
                                  const Allocation& a);
std::vector<double> outcome_floor(const Model& model, const Allocation& d,
                                  const Allocation& a);

/// s_i ~ Uni(h_i, h_i + .1), independently per target. Consumes n uniforms.
SuccessVector sample_success(const Model& model, const Allocation& d,
                             const Allocation& a, Stream& rng);

/// r_i by inverse CDF of each trait distribution. Consumes n uniforms.
TraitSample sample_traits(const Model& model, Stream& rng);
TraitSample sample_traits(const ModelParams& params, Stream& rng);

/// (1/n) sum v_i (exp(-4.6 (s_i - C_H,i - .05)) - 1)
double utility_defender(const ModelParams& params, const SuccessVector& s);

/// (1/n) sum r_i (1 - exp(-4.6 (s_i - C_H,i - .05)))
double utility_attacker(const ModelParams& params, const SuccessVector& s,
                        const TraitSample& r);

/// Exact expectation of utility_attacker over the success density.
double expected_attacker_closed(const Model& model, const Allocation& d,
                                const Allocation& a, const TraitSample& r);
double expected_attacker_closed(const Model& model, std::span<const int> d,
                                std::span<const int> a, const TraitSample& r);

/// Exact expectation of utility_defender over the success density.
double expected_defender_closed(const Model& model, const Allocation& d,
                                const Allocation& a);
double expected_defender_closed(const Model& model, std::span<const int> d,
                                std::span<const int> a);

/// Midpoint-rule quadrature of the expected utility with n_s cells per
/// target. The integrand is separable, so cost is O(n * n_s). `traits` is
/// required for the attacker and ignored for the defender.
double expected_numeric(const Model& model, const Allocation& d,
                        const Allocation& a, Player who,
                        const TraitSample* traits, int n_s);

/// Per-target quadrature analogue of Model::closed_unit.
double quadrature_unit(const Model& model, std::size_t target, int d, int a,
                       int n_s);

}  // namespace ara
