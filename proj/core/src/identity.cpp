#include "zkpol/identity.hpp"

#include <algorithm>
#include <string>

#include "zkpol/error.hpp"
#include "zkpol/hash.hpp"
#include "zkpol/pairing.hpp"

namespace zkpol {

namespace {

constexpr std::string_view kKeyMagic = "ZKPOLKEY";
constexpr std::uint8_t kKeyVersion = 1;
constexpr std::uint8_t kSecretKind = 1;
constexpr std::uint8_t kPublicKind = 2;
constexpr std::size_t kKeyHeader = 32;

Bytes key_file(std::uint8_t kind, ByteView body) {
  Bytes out;
  append(out, as_bytes(kKeyMagic));
  append_u8(out, kKeyVersion);
  append_u8(out, kind);
  out.resize(kKeyHeader, 0);
  append(out, as_bytes(to_hex(body)));
  out.push_back('\n');
  return out;
}

Bytes key_body(ByteView file, std::uint8_t kind) {
  if (file.size() < kKeyHeader || !std::equal(kKeyMagic.begin(), kKeyMagic.end(), file.begin()) ||
      file[8] != kKeyVersion || file[9] != kind) {
    throw Error(ErrorCode::InvalidEncoding, "not a key file of the expected kind");
  }
  std::string hex(file.begin() + kKeyHeader, file.end());
  while (!hex.empty() && (hex.back() == '\n' || hex.back() == '\r')) hex.pop_back();
  return from_hex(hex);
}

// SHA-256 counter-mode keystream over the shared point.
void apply_keystream(ByteView shared, Bytes& data) {
  for (std::size_t block = 0; block * 32 < data.size(); ++block) {
    Bytes input(shared.begin(), shared.end());
    append_u64(input, block);
    const Digest32 ks = hash_bytes(input);
    for (std::size_t i = 0; i < 32 && block * 32 + i < data.size(); ++i) data[block * 32 + i] ^= ks[i];
  }
}

Digest32 envelope_tag(ByteView shared, ByteView ciphertext) {
  Bytes input(shared.begin(), shared.end());
  append(input, ciphertext);
  return hash_bytes(input);
}

}  // namespace

IdentityScheme::IdentityScheme(const PairingEngine& engine)
    : curve_(&engine.curve()),
      scalars_(&engine.scalar_field()),
      generator_(engine.curve().hash_to_subgroup("zkpol-sig-v1")) {}

KeyPair IdentityScheme::keygen(Rng& rng) const { return from_secret(scalars_->random_nonzero(rng)); }

KeyPair IdentityScheme::from_secret(const FieldElement& sk) const {
  if (sk.is_zero()) throw Error(ErrorCode::InvalidParameters, "secret key must be nonzero");
  return {sk, curve_->mul(generator_, sk.value())};
}

FieldElement IdentityScheme::challenge(const GroupElement& commitment, const GroupElement& pk,
                                       const Digest32& message_hash) const {
  Bytes input = curve_->encode(commitment);
  append(input, curve_->encode(pk));
  append(input, message_hash);
  const Digest32 h = hash_bytes(input);
  return scalars_->reduce(decode_unsigned(h));
}

Signature IdentityScheme::sign(const FieldElement& sk, ByteView message) const {
  const Digest32 mh = hash_bytes(message);
  Bytes nonce_input = sk.encode();
  append(nonce_input, mh);
  FieldElement k = scalars_->reduce(decode_unsigned(hash_bytes(nonce_input)));
  if (k.is_zero()) k = scalars_->one();
  const GroupElement commitment = curve_->mul(generator_, k.value());
  const GroupElement pk = curve_->mul(generator_, sk.value());
  const FieldElement e = challenge(commitment, pk, mh);
  return {e, k + e * sk};
}

bool IdentityScheme::verify_sig(const GroupElement& pk, ByteView message,
                                const Signature& sig) const {
  if (!pk.is_bound() || pk.is_identity() || !curve_->in_subgroup(pk)) return false;
  if (!sig.challenge.is_bound() || !sig.response.is_bound()) return false;
  const GroupElement commitment =
      curve_->mul(generator_, sig.response.value()) - curve_->mul(pk, sig.challenge.value());
  return challenge(commitment, pk, hash_bytes(message)) == sig.challenge;
}

Bytes IdentityScheme::encode_signature(const Signature& sig) const {
  Bytes out = sig.challenge.encode();
  append(out, sig.response.encode());
  return out;
}

Signature IdentityScheme::decode_signature(ByteView bytes) const {
  const std::size_t w = scalars_->byte_width();
  if (bytes.size() != 2 * w) throw Error(ErrorCode::InvalidEncoding, "signature has the wrong size");
  return {scalars_->decode(bytes.first(w)), scalars_->decode(bytes.subspan(w))};
}

Bytes IdentityScheme::seal(const GroupElement& recipient, ByteView payload, Rng& rng) const {
  const FieldElement eph = scalars_->random_nonzero(rng);
  const Bytes shared = curve_->encode(curve_->mul(recipient, eph.value()));
  Bytes ciphertext(payload.begin(), payload.end());
  apply_keystream(shared, ciphertext);

  Bytes out;
  append_u8(out, kEnvelopeVersion);
  append(out, curve_->encode(curve_->mul(generator_, eph.value())));
  append(out, ciphertext);
  append(out, envelope_tag(shared, ciphertext));
  return out;
}

Bytes IdentityScheme::open(const FieldElement& sk, ByteView envelope) const {
  const std::size_t pw = curve_->point_bytes();
  if (envelope.size() < 1 + pw + 32 || envelope[0] != kEnvelopeVersion) {
    throw Error(ErrorCode::OpenFailed, "malformed envelope");
  }
  GroupElement epk;
  try {
    epk = curve_->decode(envelope.subspan(1, pw));
  } catch (const Error&) {
    throw Error(ErrorCode::OpenFailed, "envelope carries an invalid ephemeral key");
  }
  if (epk.is_identity() || !curve_->in_subgroup(epk)) {
    throw Error(ErrorCode::OpenFailed, "envelope carries an invalid ephemeral key");
  }
  const ByteView ciphertext = envelope.subspan(1 + pw, envelope.size() - 1 - pw - 32);
  const ByteView tag = envelope.last(32);
  const Bytes shared = curve_->encode(curve_->mul(epk, sk.value()));
  const Digest32 expected = envelope_tag(shared, ciphertext);
  if (!std::equal(expected.begin(), expected.end(), tag.begin())) {
    throw Error(ErrorCode::OpenFailed, "envelope authentication failed");
  }
  Bytes plain(ciphertext.begin(), ciphertext.end());
  apply_keystream(shared, plain);
  return plain;
}

Bytes IdentityScheme::export_secret_key(const KeyPair& keys) const {
  return key_file(kSecretKind, keys.sk.encode());
}

Bytes IdentityScheme::export_public_key(const GroupElement& pk) const {
  return key_file(kPublicKind, curve_->encode(pk));
}

KeyPair IdentityScheme::import_secret_key(ByteView file) const {
  const Bytes body = key_body(file, kSecretKind);
  const FieldElement sk = scalars_->decode(body);
  if (sk.is_zero()) throw Error(ErrorCode::InvalidEncoding, "zero secret key");
  return from_secret(sk);
}

GroupElement IdentityScheme::import_public_key(ByteView file) const {
  const GroupElement pk = curve_->decode(key_body(file, kPublicKind));
  if (pk.is_identity() || !curve_->in_subgroup(pk)) {
    throw Error(ErrorCode::InvalidEncoding, "public key outside the prime-order subgroup");
  }
  return pk;
}

}  // namespace zkpol
