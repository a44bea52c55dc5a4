#pragma once

#include <cstdint>
#include <string_view>

namespace koszul {

// SplitMix64 stream with deterministic, label-addressed splitting. Every
// randomized routine takes an Rng (or a seed) and derives sub-streams by name
// or trial index, so results never depend on thread scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  Rng split(std::string_view label) const;
  Rng split(std::uint64_t index) const;

  std::uint64_t next();
  // Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // Uniform in [lo, hi] \ {0}.
  std::int64_t uniform_nonzero(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace koszul
