#include "zkpol/zkpol_circuit.hpp"

#include <string>

#include "zkpol/error.hpp"

namespace zkpol {

PrivacyLevel privacy_level_from_int(long level) {
  if (level < 1 || level > 4) {
    throw Error(ErrorCode::InvalidLevel, "privacy level must be 1..4, got " + std::to_string(level));
  }
  return static_cast<PrivacyLevel>(level);
}

Disclosure disclosure_for(PrivacyLevel level) {
  switch (level) {
    case PrivacyLevel::Level1: return {false, false, false};
    case PrivacyLevel::Level2: return {false, true, false};
    case PrivacyLevel::Level3: return {false, true, true};
    case PrivacyLevel::Level4: return {true, true, true};
  }
  throw Error(ErrorCode::InvalidLevel, "privacy level must be 1..4");
}

DisclosedParameters DisclosedParameters::from_certificate(const CertificateFields& cert,
                                                          PrivacyLevel level) {
  const Disclosure d = disclosure_for(level);
  DisclosedParameters out;
  if (d.pk) out.pk = cert.pk;
  if (d.coordinate) {
    out.longitude = cert.longitude;
    out.latitude = cert.latitude;
  }
  if (d.time) out.time = cert.time;
  return out;
}

Bytes encode_coordinate(std::int32_t micro_degrees) {
  Bytes out;
  append_i32(out, micro_degrees);
  return out;
}

Bytes encode_time(std::uint64_t unix_seconds) {
  Bytes out;
  append_u64(out, unix_seconds);
  return out;
}

std::vector<FieldElement> digest_preimage(const PrimeField& field, const CertificateFields& cert) {
  std::vector<FieldElement> out = bytes_to_field_chunks(field, cert.pk);
  for (const auto& c : bytes_to_field_chunks(field, encode_coordinate(cert.longitude))) out.push_back(c);
  for (const auto& c : bytes_to_field_chunks(field, encode_coordinate(cert.latitude))) out.push_back(c);
  out.push_back(cert.rand);
  for (const auto& c : bytes_to_field_chunks(field, encode_time(cert.time))) out.push_back(c);
  return out;
}

FieldElement certificate_digest(const AlgebraicHashParams& hash, const CertificateFields& cert) {
  const auto preimage = digest_preimage(hash.field(), cert);
  return hash_field(hash, preimage);
}

FieldElement serial_hash(const AlgebraicHashParams& hash, const FieldElement& rand) {
  const FieldElement input[] = {rand};
  return hash_field(hash, input);
}

LinearCombination hash_gadget(Circuit& circuit, const AlgebraicHashParams& hash,
                              const std::vector<LinearCombination>& inputs,
                              std::string_view label) {
  if (inputs.empty()) throw Error(ErrorCode::EmptyInput, "hash_gadget of empty sequence");
  const auto& constants = hash.round_constants();
  LinearCombination state;  // zero
  for (std::size_t call = 0; call < inputs.size(); ++call) {
    const LinearCombination absorbed = state + inputs[call];
    LinearCombination x = absorbed;
    for (std::size_t round = 0; round < constants.size(); ++round) {
      const LinearCombination a = x + circuit.constant(constants[round]);
      const std::string prefix =
          std::string(label) + "." + std::to_string(call) + "." + std::to_string(round);
      const VariableIndex sq = circuit.multiply(a, a, prefix + ".sq");
      const VariableIndex cube = circuit.multiply(circuit.var(sq), a, prefix + ".cube");
      x = circuit.var(cube);
    }
    state = x + absorbed;
  }
  return state;
}

ZkpolCircuit build_zkpol_circuit(PrivacyLevel level, const AlgebraicHashParams& hash,
                                 std::size_t pk_bytes) {
  const Disclosure disclosed = disclosure_for(level);
  const PrimeField& field = hash.field();
  const std::size_t pk_chunks = chunk_count(field, pk_bytes);
  const std::size_t coord_chunks = chunk_count(field, 4);
  const std::size_t time_chunks = chunk_count(field, 8);
  if (coord_chunks != 1) throw Error(ErrorCode::FieldTooSmall, "coordinate must fit one chunk");

  ZkpolCircuit z{level, Circuit(field), pk_bytes, 0, {}, 0, 0, 0, {}, 0, 0};
  Circuit& c = z.circuit;
  z.pk.resize(pk_chunks);
  z.time.resize(time_chunks);

  // Public prefix: disclosed parameters in the order pk, coordinate, time; then hr, dig.
  if (disclosed.pk) {
    for (std::size_t i = 0; i < pk_chunks; ++i) z.pk[i] = c.add_public_input("pk[" + std::to_string(i) + "]");
  }
  if (disclosed.coordinate) {
    z.longitude = c.add_public_input("longitude");
    z.latitude = c.add_public_input("latitude");
  }
  if (disclosed.time) {
    for (std::size_t i = 0; i < time_chunks; ++i) z.time[i] = c.add_public_input("time[" + std::to_string(i) + "]");
  }
  z.hr = c.add_public_output("hr");
  z.dig = c.add_public_output("dig");

  if (!disclosed.pk) {
    for (std::size_t i = 0; i < pk_chunks; ++i) z.pk[i] = c.add_private_input("pk[" + std::to_string(i) + "]");
  }
  if (!disclosed.coordinate) {
    z.longitude = c.add_private_input("longitude");
    z.latitude = c.add_private_input("latitude");
  }
  z.rand = c.add_private_input("rand");
  if (!disclosed.time) {
    for (std::size_t i = 0; i < time_chunks; ++i) z.time[i] = c.add_private_input("time[" + std::to_string(i) + "]");
  }

  const LinearCombination hr_out = hash_gadget(c, hash, {c.var(z.rand)}, "hr");
  std::vector<LinearCombination> preimage;
  for (VariableIndex v : z.pk) preimage.push_back(c.var(v));
  preimage.push_back(c.var(z.longitude));
  preimage.push_back(c.var(z.latitude));
  preimage.push_back(c.var(z.rand));
  for (VariableIndex v : z.time) preimage.push_back(c.var(v));
  const LinearCombination dig_out = hash_gadget(c, hash, preimage, "dig");

  // Bind the hash outputs to the public variables: out * one = hr / dig.
  c.add_constraint(hr_out, c.one(), z.hr);
  c.add_constraint(dig_out, c.one(), z.dig);

  z.permutation_calls = 1 + preimage.size();
  c.validate();
  return z;
}

Assignment ZkpolCircuit::inputs_for(const CertificateFields& cert) const {
  const PrimeField& field = circuit.field();
  if (cert.pk.size() != pk_bytes) {
    throw Error(ErrorCode::InvalidParameters, "public key encoding has the wrong length");
  }
  Assignment a;
  const auto pk_values = bytes_to_field_chunks(field, cert.pk);
  for (std::size_t i = 0; i < pk.size(); ++i) a[pk[i]] = pk_values[i];
  a[longitude] = bytes_to_field_chunks(field, encode_coordinate(cert.longitude))[0];
  a[latitude] = bytes_to_field_chunks(field, encode_coordinate(cert.latitude))[0];
  a[rand] = cert.rand;
  const auto time_values = bytes_to_field_chunks(field, encode_time(cert.time));
  for (std::size_t i = 0; i < time.size(); ++i) a[time[i]] = time_values[i];
  return a;
}

std::vector<FieldElement> ZkpolCircuit::public_inputs(const DisclosedParameters& disclosed,
                                                      const FieldElement& hr_value,
                                                      const FieldElement& dig_value) const {
  const Disclosure expected = disclosure_for(level);
  const bool has_coordinate = disclosed.longitude.has_value() && disclosed.latitude.has_value();
  if (disclosed.longitude.has_value() != disclosed.latitude.has_value() ||
      disclosed.pk.has_value() != expected.pk || has_coordinate != expected.coordinate ||
      disclosed.time.has_value() != expected.time) {
    throw Error(ErrorCode::ArityMismatch, "disclosed parameters do not match level " +
                                              std::to_string(to_int(level)));
  }
  const PrimeField& field = circuit.field();
  std::vector<FieldElement> out;
  if (disclosed.pk) {
    if (disclosed.pk->size() != pk_bytes) {
      throw Error(ErrorCode::ArityMismatch, "disclosed public key has the wrong length");
    }
    for (const auto& v : bytes_to_field_chunks(field, *disclosed.pk)) out.push_back(v);
  }
  if (has_coordinate) {
    out.push_back(bytes_to_field_chunks(field, encode_coordinate(*disclosed.longitude))[0]);
    out.push_back(bytes_to_field_chunks(field, encode_coordinate(*disclosed.latitude))[0]);
  }
  if (disclosed.time) {
    for (const auto& v : bytes_to_field_chunks(field, encode_time(*disclosed.time))) out.push_back(v);
  }
  out.push_back(hr_value);
  out.push_back(dig_value);
  if (out.size() != circuit.num_public()) {
    throw Error(ErrorCode::ArityMismatch, "public input count does not match the circuit");
  }
  return out;
}

}  // namespace zkpol
