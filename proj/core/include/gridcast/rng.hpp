#pragma once

#include <cstdint>

namespace gridcast {

// Counter-based generator: output i is a stateless hash of (seed, i), so a
// stream can be re-created or keyed hierarchically without storing state
// beyond the counter. Identical seed => bit-identical stream, forever.
namespace detail {
constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27; z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Stateless keyed hash: fold words into a seed one at a time. Used to give
// every (level, site, slot) its own reproducible random value.
constexpr std::uint64_t hash_key(std::uint64_t seed) { return detail::mix64(seed + detail::GOLDEN); }

template <typename... Rest>
constexpr std::uint64_t hash_key(std::uint64_t seed, std::uint64_t word, Rest... rest) {
  return hash_key(detail::mix64(seed ^ (word + detail::GOLDEN)), rest...);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return detail::mix64(seed_ + (++counter_) * detail::GOLDEN); }

  // Uniform in [0,1) with 53 random bits.
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_u01() < p; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace gridcast
