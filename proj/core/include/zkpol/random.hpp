#pragma once

#include <cstdint>
#include <span>

#include <gmpxx.h>

#include "zkpol/bytes.hpp"

namespace zkpol {

/// Deterministic byte stream: SHA-256 over (domain tag, seed, block counter).
/// Every randomized operation takes one of these so whole runs replay from a seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  /// Uniform in [0, bound) by rejection sampling; bound must be positive.
  mpz_class uniform_below(const mpz_class& bound);

  /// Independent child stream, for handing one seed to several actors.
  Rng fork(std::uint64_t label);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  Digest32 block_{};
  std::size_t used_ = block_.size();
};

}  // namespace zkpol
