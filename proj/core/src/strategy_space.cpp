#include "ara/strategy_space.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "ara/errors.hpp"

namespace ara {
namespace {

std::uint64_t grid_code(std::span<const int> tenths) {
  std::uint64_t code = 0;
  for (int t : tenths) code = code * kGridPoints + static_cast<std::uint64_t>(t);
  return code;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError(fmt::format("{} * {} overflows 64 bits", a, b));
  }
  return out;
}

void compose(int n, int position, int remaining, std::vector<int>& current,
             std::vector<std::vector<int>>& out) {
  if (position == n - 1) {
    current[position] = remaining;
    out.push_back(current);
    return;
  }
  for (int t = 0; t <= remaining; ++t) {
    current[position] = t;
    compose(n, position + 1, remaining - t, current, out);
  }
}

}  // namespace

Allocation::Allocation(std::vector<int> tenths) : tenths_(std::move(tenths)) {
  if (tenths_.empty()) throw InvalidArgument("allocation must be non-empty");
  int sum = 0;
  for (int t : tenths_) {
    if (t < 0 || t > kTotalTenths) {
      throw InvalidArgument(fmt::format("allocation entry {} outside 0..10", t));
    }
    sum += t;
  }
  if (sum != kTotalTenths) {
    throw InvalidArgument(
        fmt::format("allocation tenths sum to {}, expected 10", sum));
  }
}

std::vector<double> Allocation::shares() const {
  std::vector<double> out(tenths_.size());
  for (std::size_t i = 0; i < tenths_.size(); ++i) out[i] = share(i);
  return out;
}

std::string Allocation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < tenths_.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt::format("{}.{}", tenths_[i] / 10, tenths_[i] % 10);
  }
  return out;
}

Allocation Allocation::parse(std::string_view text) {
  std::vector<int> tenths;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(start, end - start));
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw InvalidArgument(fmt::format("cannot parse allocation '{}'", text));
    }
    const double scaled = value * kTotalTenths;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 * kTotalTenths) {
      throw InvalidArgument(
          fmt::format("allocation value {} is not a multiple of 0.1", item));
    }
    tenths.push_back(static_cast<int>(rounded));
    start = end + 1;
  }
  return Allocation(std::move(tenths));
}

std::uint64_t count(int n) {
  if (n < 1) throw InvalidArgument("dimension must be at least 1");
  // C(9+n, n-1) == C(9+n, 10); multiplicative form stays exact because each
  // partial product is itself a binomial coefficient.
  const std::uint64_t top = static_cast<std::uint64_t>(9 + n);
  const std::uint64_t k = std::min<std::uint64_t>(n - 1, 10);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = top - k + i;
    const std::uint64_t g = std::gcd(result, i);
    result = checked_mul(result / g, factor / (i / g));
  }
  return result;
}

std::uint64_t computation_size(int n, std::uint64_t n_r, std::uint64_t n_s) {
  const std::uint64_t strategies = count(n);
  std::uint64_t total = checked_mul(strategies, strategies);
  if (n_r == ~std::uint64_t{0}) throw OverflowError("1 + N_R overflows");
  total = checked_mul(total, 1 + n_r);
  for (int i = 0; i < n; ++i) total = checked_mul(total, n_s);
  return total;
}

std::size_t SpaceIndex::ordinal(const Allocation& a) const {
  if (static_cast<int>(a.size()) != n_) {
    throw InvalidArgument(fmt::format("allocation has dimension {}, space has {}",
                                      a.size(), n_));
  }
  return lookup_.at(grid_code(a.tenths()));
}

SpaceIndex enumerate(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw InvalidArgument(fmt::format("dimension {} outside 1..{}", n, kMaxDimension));
  }
  std::vector<std::vector<int>> raw;
  std::vector<int> current(n, 0);
  compose(n, 0, kTotalTenths, current, raw);

  SpaceIndex space;
  space.n_ = n;
  space.strategies_.reserve(raw.size());
  space.flat_.reserve(raw.size() * n);
  space.lookup_.reserve(raw.size());
  for (auto& tenths : raw) {
    space.lookup_.emplace(grid_code(tenths), space.strategies_.size());
    space.flat_.insert(space.flat_.end(), tenths.begin(), tenths.end());
    space.strategies_.emplace_back(std::move(tenths));
  }
  return space;
}

std::vector<Allocation> neighbors(const Allocation& a) {
  std::vector<Allocation> out;
  const std::size_t n = a.size();
  std::vector<int> tenths(a.tenths().begin(), a.tenths().end());
  for (std::size_t from = 0; from < n; ++from) {
    if (tenths[from] == 0) continue;
    for (std::size_t to = 0; to < n; ++to) {
      if (to == from) continue;
      --tenths[from];
      ++tenths[to];
      out.emplace_back(tenths);
      ++tenths[from];
      --tenths[to];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ara
