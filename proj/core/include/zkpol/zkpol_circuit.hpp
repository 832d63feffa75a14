#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "zkpol/circuit.hpp"
#include "zkpol/hash.hpp"

namespace zkpol {

/// Disclosure levels. Public parameters per level:
///   1: none
///   2: coordinate
///   3: coordinate, time
///   4: pk, coordinate, time
/// rand is private at every level; hr and dig are always public outputs.
enum class PrivacyLevel : std::uint8_t { Level1 = 1, Level2 = 2, Level3 = 3, Level4 = 4 };

inline constexpr PrivacyLevel kAllLevels[] = {PrivacyLevel::Level1, PrivacyLevel::Level2,
                                             PrivacyLevel::Level3, PrivacyLevel::Level4};

/// Throws InvalidLevel outside 1..4.
PrivacyLevel privacy_level_from_int(long level);
inline int to_int(PrivacyLevel level) { return static_cast<int>(level); }

struct Disclosure {
  bool pk = false;
  bool coordinate = false;
  bool time = false;
};
Disclosure disclosure_for(PrivacyLevel level);

/// Certificate contents in wire form: pk as its canonical point encoding,
/// coordinates in signed micro-degrees, rand as a scalar-field element.
struct CertificateFields {
  Bytes pk;
  std::int32_t longitude = 0;
  std::int32_t latitude = 0;
  FieldElement rand;
  std::uint64_t time = 0;
};

/// Parameters a service request reveals; which ones are present depends on the level.
struct DisclosedParameters {
  std::optional<Bytes> pk;
  std::optional<std::int32_t> longitude;
  std::optional<std::int32_t> latitude;
  std::optional<std::uint64_t> time;

  static DisclosedParameters from_certificate(const CertificateFields& cert, PrivacyLevel level);
};

Bytes encode_coordinate(std::int32_t micro_degrees);
Bytes encode_time(std::uint64_t unix_seconds);

/// Field inputs of the digest hash, in the fixed order pk, longitude,
/// latitude, rand, time. Byte-valued fields are chunked with
/// bytes_to_field_chunks; rand enters as-is.
std::vector<FieldElement> digest_preimage(const PrimeField& field, const CertificateFields& cert);

/// dig = hash_field(digest_preimage(cert)).
FieldElement certificate_digest(const AlgebraicHashParams& hash, const CertificateFields& cert);

/// hr = hash_field([rand]).
FieldElement serial_hash(const AlgebraicHashParams& hash, const FieldElement& rand);

/// The circuit proving knowledge of a certificate behind (hr, dig), with the
/// variable layout needed to feed it.
struct ZkpolCircuit {
  PrivacyLevel level;
  Circuit circuit;
  std::size_t pk_bytes;
  std::size_t permutation_calls;

  std::vector<VariableIndex> pk;
  VariableIndex longitude;
  VariableIndex latitude;
  VariableIndex rand;
  std::vector<VariableIndex> time;
  VariableIndex hr;
  VariableIndex dig;

  /// Input assignment for compute_witness.
  Assignment inputs_for(const CertificateFields& cert) const;

  /// v_1..v_m in variable order. Throws ArityMismatch when the disclosed set
  /// differs from what the level publishes.
  std::vector<FieldElement> public_inputs(const DisclosedParameters& disclosed,
                                          const FieldElement& hr_value,
                                          const FieldElement& dig_value) const;
};

/// Throws InvalidLevel / FieldTooSmall. `pk_bytes` is the length of the
/// public-key encoding (it fixes how many chunks pk occupies).
ZkpolCircuit build_zkpol_circuit(PrivacyLevel level, const AlgebraicHashParams& hash,
                                 std::size_t pk_bytes);

/// Emits the sponge as constraints: two multiplications (square, then cube)
/// per round. Returns the output as a linear combination; the feedforward
/// and absorption additions are folded into operands.
LinearCombination hash_gadget(Circuit& circuit, const AlgebraicHashParams& hash,
                              const std::vector<LinearCombination>& inputs,
                              std::string_view label);

}  // namespace zkpol
