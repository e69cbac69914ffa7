#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ara {

/// Derives a substream key from a root seed and a path of integer labels,
/// e.g. `derive_key(seed, {trial, strategy, iteration, draw})`.
///
/// Each label is folded in with the SplitMix64 finalizer, so keys are a pure
/// function of (seed, path) and independent of evaluation order. This is
/// what makes parallel sampling reproducible.
std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path);

/// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x);

/// A random stream over a 64-bit Mersenne Twister. Conversions to doubles
/// and bounded integers are done here rather than through <random>
/// distributions, whose output is implementation-defined.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : engine_(key) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Labels used as the first path element so unrelated consumers of one
/// seed never share substreams.
enum class StreamTag : std::uint64_t {
  kTrial = 0x7472,
  kRun = 0x7275,
  kTraits = 0x7472'6169,
  kGreedy = 0x6772,
  kMonteCarlo = 0x6d63,
  kReference = 0x7265,
};

inline std::uint64_t tag(StreamTag t) { return static_cast<std::uint64_t>(t); }

}  // namespace ara
