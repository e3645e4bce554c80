#pragma once

#include <cstdint>
#include <random>

namespace mag {

/// Deterministic random stream keyed by (seed, index). Monte Carlo sample i
/// draws from stream index i, so results do not depend on scheduling.
class RandomStream {
 public:
  static constexpr std::uint64_t kDefaultSeed = 20240801;

  explicit RandomStream(std::uint64_t seed = kDefaultSeed, std::uint64_t index = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }
  /// Stream with the same seed and a different index.
  RandomStream substream(std::uint64_t index) const { return RandomStream(seed_, index); }
  /// Independent stream family for a separate estimator, keyed by tag.
  RandomStream fork(std::uint64_t tag) const;

  std::uint64_t bits() { return engine_(); }
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Sum of n independent +-1 signs, n <= 64.
  int rademacher_sum(int n);

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

}  // namespace mag
