#include "zkpol/random.hpp"

#include "zkpol/error.hpp"
#include "zkpol/hash.hpp"

namespace zkpol {

Rng::Rng(std::uint64_t seed) : seed_(seed) {}

void Rng::refill() {
  Bytes input(as_bytes("zkpol-rng-v1").begin(), as_bytes("zkpol-rng-v1").end());
  append_u64(input, seed_);
  append_u64(input, counter_++);
  block_ = hash_bytes(input);
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (used_ == block_.size()) refill();
    b = block_[used_++];
  }
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> buf{};
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = (v << 8) | b;
  return v;
}

mpz_class Rng::uniform_below(const mpz_class& bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidParameters, "uniform_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned top_mask = (bits % 8 == 0) ? 0xff : ((1u << (bits % 8)) - 1);
  Bytes buf(nbytes);
  mpz_class value;
  for (;;) {
    fill(buf);
    buf[0] &= static_cast<std::uint8_t>(top_mask);
    mpz_import(value.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    if (value < bound) return value;
  }
}

Rng Rng::fork(std::uint64_t label) {
  return Rng(next_u64() ^ (label * 0x9e3779b97f4a7c15ULL));
}

}  // namespace zkpol
