#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ara {

/// Resource units per player. Allocations are integer tenths of the budget.
inline constexpr int kTotalTenths = 10;
inline constexpr int kGridPoints = kTotalTenths + 1;
inline constexpr int kMaxDimension = 8;

/// A feasible strategy: n non-negative tenths summing to 10.
class Allocation {
 public:
  Allocation() = default;

  /// Throws InvalidArgument unless every entry is in 0..10 and the entries
  /// sum to 10.
  explicit Allocation(std::vector<int> tenths);

  std::size_t size() const noexcept { return tenths_.size(); }
  int operator[](std::size_t i) const { return tenths_[i]; }
  std::span<const int> tenths() const noexcept { return tenths_; }

  /// Real-valued view, tenths/10.
  double share(std::size_t i) const { return tenths_[i] / 10.0; }
  std::vector<double> shares() const;

  /// "0.7,0.0,0.3"
  std::string to_string() const;

  /// Parses the to_string() format (also accepts "0.7,0,0.3"; each value
  /// must be a multiple of 0.1 within 1e-9).
  static Allocation parse(std::string_view text);

  friend auto operator<=>(const Allocation&, const Allocation&) = default;
  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<int> tenths_;
};

/// C(9+n, n-1), the number of feasible strategies in n dimensions.
/// Throws OverflowError if the count does not fit in 64 bits.
std::uint64_t count(int n);

/// |F_D| * |F_A| * (1 + N_R) * N_S^n, overflow-checked.
std::uint64_t computation_size(int n, std::uint64_t n_r, std::uint64_t n_s);

/// Immutable, lexicographically ordered enumeration of every feasible
/// allocation in n dimensions, with constant-time ordinal lookup.
class SpaceIndex {
 public:
  int dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return strategies_.size(); }

  const Allocation& operator[](std::size_t ordinal) const {
    return strategies_[ordinal];
  }
  const std::vector<Allocation>& strategies() const noexcept {
    return strategies_;
  }

  /// Tenths of strategy `ordinal` without touching the Allocation object.
  std::span<const int> tenths(std::size_t ordinal) const {
    return {flat_.data() + ordinal * static_cast<std::size_t>(n_),
            static_cast<std::size_t>(n_)};
  }

  /// Throws InvalidArgument for allocations of the wrong dimension.
  std::size_t ordinal(const Allocation& a) const;

  friend SpaceIndex enumerate(int n);

 private:
  int n_ = 0;
  std::vector<Allocation> strategies_;
  std::vector<int> flat_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

/// All compositions of 10 into n parts, 1 <= n <= 8.
SpaceIndex enumerate(int n);

/// Every allocation reachable by moving one tenth from a coordinate holding
/// at least one tenth to a different coordinate, in lexicographic order.
std::vector<Allocation> neighbors(const Allocation& a);

}  // namespace ara
