#include "zkpol/hash.hpp"

#include <openssl/sha.h>

#include "zkpol/error.hpp"

namespace zkpol {

Digest32 hash_bytes(ByteView data) {
  Digest32 out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

AlgebraicHashParams::AlgebraicHashParams(const PrimeField& field,
                                         std::vector<FieldElement> constants)
    : field_(&field), constants_(std::move(constants)) {
  if (constants_.size() < 2) {
    throw Error(ErrorCode::InvalidParameters, "algebraic hash needs at least 2 rounds");
  }
  mpz_class pm1 = field.modulus() - 1;
  if (mpz_fdiv_ui(pm1.get_mpz_t(), 3) == 0) {
    throw Error(ErrorCode::InvalidParameters, "cube map is not a permutation: 3 | p - 1");
  }
  for (const auto& c : constants_) {
    if (!c.is_bound() || !c.field().same_as(field)) {
      throw Error(ErrorCode::InvalidParameters, "round constant from another field");
    }
  }
}

AlgebraicHashParams AlgebraicHashParams::derive(const PrimeField& field, std::size_t rounds) {
  std::vector<FieldElement> constants;
  constants.reserve(rounds);
  for (std::size_t i = 0; i < rounds; ++i) {
    if (i == 0) {
      constants.push_back(field.zero());
      continue;
    }
    Bytes input(as_bytes("zkpol-mimc-v1").begin(), as_bytes("zkpol-mimc-v1").end());
    append_u64(input, i);
    Digest32 d = hash_bytes(input);
    constants.push_back(field.reduce(decode_unsigned(d)));
  }
  return AlgebraicHashParams(field, std::move(constants));
}

AlgebraicHashParams AlgebraicHashParams::from_constants(const PrimeField& field,
                                                        std::vector<FieldElement> constants) {
  return AlgebraicHashParams(field, std::move(constants));
}

FieldElement mimc_rounds(const AlgebraicHashParams& params, const FieldElement& x) {
  FieldElement state = x;
  for (const auto& c : params.round_constants()) {
    FieldElement a = state + c;
    state = a * a * a;
  }
  return state;
}

FieldElement mimc_compress(const AlgebraicHashParams& params, const FieldElement& x) {
  return mimc_rounds(params, x) + x;
}

FieldElement hash_field(const AlgebraicHashParams& params, std::span<const FieldElement> inputs) {
  if (inputs.empty()) throw Error(ErrorCode::EmptyInput, "hash_field of empty sequence");
  FieldElement state = params.field().zero();
  for (const auto& m : inputs) state = mimc_compress(params, state + m);
  return state;
}

std::size_t chunk_bytes(const PrimeField& field) {
  const std::size_t whole = field.bits() / 8;
  if (whole < 2) throw Error(ErrorCode::FieldTooSmall, "field too small for byte chunking");
  return whole - 1;
}

std::size_t chunk_count(const PrimeField& field, std::size_t byte_length) {
  const std::size_t width = chunk_bytes(field);
  return byte_length == 0 ? 0 : (byte_length + width - 1) / width;
}

std::vector<FieldElement> bytes_to_field_chunks(const PrimeField& field, ByteView data) {
  const std::size_t width = chunk_bytes(field);
  std::vector<FieldElement> out;
  for (std::size_t pos = 0; pos < data.size(); pos += width) {
    const std::size_t n = std::min(width, data.size() - pos);
    out.push_back(FieldElement::from_canonical(field, decode_unsigned(data.subspan(pos, n))));
  }
  return out;
}

}  // namespace zkpol
