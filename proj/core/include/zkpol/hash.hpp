#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "zkpol/bytes.hpp"
#include "zkpol/field.hpp"

namespace zkpol {

/// SHA-256.
Digest32 hash_bytes(ByteView data);

/// Cube-round permutation parameters. Round i maps x -> (x + c_i)^3; the
/// cube is a bijection because gcd(3, p - 1) = 1 is enforced on construction.
class AlgebraicHashParams {
 public:
  /// Constants c_i = SHA-256("zkpol-mimc-v1" || i as u64 BE) mod p, c_0 = 0.
  static AlgebraicHashParams derive(const PrimeField& field, std::size_t rounds);
  /// Explicit constants, mostly for tests; still validates the field.
  static AlgebraicHashParams from_constants(const PrimeField& field,
                                            std::vector<FieldElement> constants);

  const PrimeField& field() const noexcept { return *field_; }
  std::size_t rounds() const noexcept { return constants_.size(); }
  const std::vector<FieldElement>& round_constants() const noexcept { return constants_; }

 private:
  AlgebraicHashParams(const PrimeField& field, std::vector<FieldElement> constants);

  const PrimeField* field_;
  std::vector<FieldElement> constants_;
};

/// The raw R-round permutation without feedforward.
FieldElement mimc_rounds(const AlgebraicHashParams& params, const FieldElement& x);

/// Rounds followed by adding the input back in.
FieldElement mimc_compress(const AlgebraicHashParams& params, const FieldElement& x);

/// Sponge: state = 0; for each m: state = mimc_compress(state + m).
/// Throws EmptyInput on an empty sequence.
FieldElement hash_field(const AlgebraicHashParams& params, std::span<const FieldElement> inputs);

/// floor(bits(p) / 8) - 1; throws FieldTooSmall when that is not positive.
std::size_t chunk_bytes(const PrimeField& field);

/// Splits bytes into chunk_bytes(field)-sized pieces (last one shorter), each
/// read big-endian as a field element.
std::vector<FieldElement> bytes_to_field_chunks(const PrimeField& field, ByteView data);

std::size_t chunk_count(const PrimeField& field, std::size_t byte_length);

}  // namespace zkpol
