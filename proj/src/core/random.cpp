#include "magnitude/core/random.hpp"

#include <bit>

#include "magnitude/core/errors.hpp"

namespace mag {

namespace {
// splitmix64 finalizer; decorrelates neighbouring (seed, index) pairs.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : seed_(seed), index_(index), engine_(mix(mix(seed) ^ index)) {}

RandomStream RandomStream::fork(std::uint64_t tag) const {
  return RandomStream(mix(seed_ ^ mix(tag + 0x632be59bd9b4e019ULL)), 0);
}

int RandomStream::rademacher_sum(int n) {
  if (n < 1 || n > 64) throw InvalidArgument("rademacher_sum: n must be in [1, 64]");
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return n - 2 * std::popcount(engine_() & mask);
}

}  // namespace mag
