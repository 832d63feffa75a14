#pragma once

#include <string_view>

#include "zkpol/curve.hpp"
#include "zkpol/field.hpp"
#include "zkpol/random.hpp"

namespace zkpol {

class PairingEngine;

struct KeyPair {
  FieldElement sk;
  GroupElement pk;
};

struct Signature {
  FieldElement challenge;
  FieldElement response;
};

/// Schnorr signatures and ephemeral-DH sealed envelopes on the prime-order
/// subgroup of a curve, with a generator separate from the pairing one.
class IdentityScheme {
 public:
  /// Envelope wire format: version || ephemeral pk || ciphertext || 32-byte tag.
  static constexpr std::uint8_t kEnvelopeVersion = 1;

  explicit IdentityScheme(const PairingEngine& engine);

  const Curve& curve() const noexcept { return *curve_; }
  const PrimeField& scalar_field() const noexcept { return *scalars_; }
  const GroupElement& generator() const noexcept { return generator_; }

  KeyPair keygen(Rng& rng) const;
  KeyPair from_secret(const FieldElement& sk) const;

  /// Signs hash_bytes(message). The nonce is derived from sk and the message,
  /// so signing is deterministic.
  Signature sign(const FieldElement& sk, ByteView message) const;
  bool verify_sig(const GroupElement& pk, ByteView message, const Signature& sig) const;

  Bytes encode_signature(const Signature& sig) const;
  /// Throws InvalidEncoding.
  Signature decode_signature(ByteView bytes) const;
  std::size_t signature_bytes() const noexcept { return 2 * scalars_->byte_width(); }

  Bytes seal(const GroupElement& recipient, ByteView payload, Rng& rng) const;
  /// Throws OpenFailed for a wrong key, a bad tag or a malformed envelope.
  Bytes open(const FieldElement& sk, ByteView envelope) const;

  /// Key files: 32-byte header ("ZKPOLKEY", version, kind, zero padding)
  /// followed by the hex key encoding and a newline.
  Bytes export_secret_key(const KeyPair& keys) const;
  Bytes export_public_key(const GroupElement& pk) const;
  /// Throw InvalidEncoding.
  KeyPair import_secret_key(ByteView file) const;
  GroupElement import_public_key(ByteView file) const;

 private:
  FieldElement challenge(const GroupElement& commitment, const GroupElement& pk,
                         const Digest32& message_hash) const;

  const Curve* curve_;
  const PrimeField* scalars_;
  GroupElement generator_;
};

}  // namespace zkpol
