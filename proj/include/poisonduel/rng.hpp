#pragma once

// Reproducible, splittable random streams. The algorithm is fixed and
// recorded in every output so runs can be replayed by other
// implementations: SplitMix64 (Steele, Lea & Flood 2014) for both output
// and splitting, where a child stream is seeded with the parent's next
// output. Bounded integers use rejection sampling on the full 64-bit
// output, never std:: distributions (their algorithms are unspecified).

#include <poisonduel/rational.hpp>

#include <cstdint>
#include <limits>
#include <span>

namespace poisonduel {

inline constexpr const char* kRngAlgorithm = "splitmix64/split-by-next/v1";

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64(next()); }

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw InputError("uniform_below: zero bound");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    while (true) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Index drawn with probability proportional to exact rational weights.
  /// The weights' common denominator must fit in 64 bits.
  std::size_t sample(std::span<const Rational> weights) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Integer common = 1;
    for (const auto& w : weights) {
      if (w < 0) throw InputError("negative sampling weight");
      common = boost::multiprecision::lcm(common, denominator(w));
    }
    Integer total = 0;
    std::vector<Integer> scaled;
    scaled.reserve(weights.size());
    for (const auto& w : weights) {
      scaled.push_back(numerator(w) * (common / denominator(w)));
      total += scaled.back();
    }
    if (total == 0) throw InputError("sampling weights are all zero");
    if (total > Integer(std::numeric_limits<std::uint64_t>::max())) {
      throw InputError("sampling weights need more than 64 bits of resolution");
    }
    Integer r = uniform_below(static_cast<std::uint64_t>(total));
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      if (r < scaled[i]) return i;
      r -= scaled[i];
    }
    return scaled.size() - 1;  // unreachable
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace poisonduel
