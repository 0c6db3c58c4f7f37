#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace fusegraph {

// Deterministic pseudo-randomness for the whole pipeline.
//
// std::mt19937_64 output is specified by the standard, and all derived draws
// below avoid std::uniform_*_distribution (whose algorithms are
// implementation-defined), so identical seeds give identical streams on every
// platform and at every optimization level.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Independent stream for one trial of a randomized search.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return Rng(splitmix64(splitmix64(master_seed) + trial_index));
  }

  std::uint64_t next() { return eng_(); }

  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x = eng_();
    while (x >= limit) x = eng_();
    return x % n;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  bool coin() { return below(2) == 1; }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fusegraph
