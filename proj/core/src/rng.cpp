#include "ara/rng.hpp"

#include "ara/errors.hpp"

namespace ara {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed);
  std::uint64_t position = 1;
  for (std::uint64_t label : path) {
    key = mix64(key ^ mix64(label + 0x632be59bd9b4e019ULL * position));
    ++position;
  }
  return key;
}

std::uint64_t Stream::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("bound must be positive");
  // Rejection on the top of the range keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

}  // namespace ara
