#include "zkpol/protocol.hpp"

#include <cmath>
#include <numbers>

#include "zkpol/error.hpp"

namespace zkpol {

namespace {

constexpr double kMetersPerDegreeLon = 111320.0;
constexpr double kMetersPerDegreeLat = 110540.0;

Bytes request_body(const Bytes& pk, const GeoCoordinate& c) {
  Bytes out;
  append_u16(out, static_cast<std::uint16_t>(pk.size()));
  append(out, pk);
  append_i32(out, c.longitude);
  append_i32(out, c.latitude);
  return out;
}

Bytes response_signed_part(const FieldElement& rand, std::uint64_t time, ByteView body) {
  Bytes out = rand.encode();
  append_u64(out, time);
  append(out, body);
  return out;
}

}  // namespace

bool GeoCoordinate::valid() const noexcept {
  return std::abs(static_cast<std::int64_t>(latitude)) <= 90'000'000 &&
         std::abs(static_cast<std::int64_t>(longitude)) <= 180'000'000;
}

double distance_m(const GeoCoordinate& ap, const GeoCoordinate& claim) {
  const double lat_rad = ap.latitude * 1e-6 * std::numbers::pi / 180.0;
  const double dlon = (static_cast<double>(claim.longitude) - ap.longitude) * 1e-6;
  const double dlat = (static_cast<double>(claim.latitude) - ap.latitude) * 1e-6;
  const double dx = dlon * std::cos(lat_rad) * kMetersPerDegreeLon;
  const double dy = dlat * kMetersPerDegreeLat;
  return std::sqrt(dx * dx + dy * dy);
}

bool within_range(const GeoCoordinate& ap, const GeoCoordinate& claim, double range_m) {
  return distance_m(ap, claim) <= range_m;
}

ZkpolCircuit LevelCrs::build_circuit(const Profile& profile, PrivacyLevel level) {
  return build_zkpol_circuit(level, profile.hash(), profile.curve().point_bytes());
}

LevelCrs LevelCrs::generate(const Profile& profile, PrivacyLevel level, Rng& rng) {
  ZkpolCircuit circuit = build_circuit(profile, level);
  QapInstance qap = circuit_to_qap(circuit.circuit);
  CrsPair crs = setup(qap, profile.engine(), rng);
  return LevelCrs{std::move(circuit), std::move(qap), std::move(crs.proving),
                  std::move(crs.verification)};
}

LevelCrs LevelCrs::from_keys(const Profile& profile, PrivacyLevel level, ProvingKey pk,
                             VerificationKey vk) {
  ZkpolCircuit circuit = build_circuit(profile, level);
  QapInstance qap = circuit_to_qap(circuit.circuit);
  if (pk.circuit_id != qap.circuit_id() || vk.circuit_id != qap.circuit_id()) {
    throw Error(ErrorCode::KeyMismatch,
                "keys do not belong to the level " + std::to_string(to_int(level)) + " circuit");
  }
  if (vk.num_public() != qap.num_public()) {
    throw Error(ErrorCode::KeyMismatch, "verification key has the wrong public arity");
  }
  return LevelCrs{std::move(circuit), std::move(qap), std::move(pk), std::move(vk)};
}

void CrsBundle::set(std::shared_ptr<const LevelCrs> crs) {
  levels_[to_int(crs->level()) - 1] = std::move(crs);
}

bool CrsBundle::has(PrivacyLevel level) const noexcept {
  return levels_[to_int(level) - 1] != nullptr;
}

const LevelCrs& CrsBundle::at(PrivacyLevel level) const {
  if (!has(level)) {
    throw Error(ErrorCode::InvalidLevel, "no CRS loaded for level " + std::to_string(to_int(level)));
  }
  return *levels_[to_int(level) - 1];
}

Bytes build_certificate_request(const ProtocolContext& ctx, const KeyPair& user,
                                const GeoCoordinate& claim) {
  Bytes body = request_body(ctx.identity.curve().encode(user.pk), claim);
  const Signature sig = ctx.identity.sign(user.sk, body);
  append(body, ctx.identity.encode_signature(sig));
  return body;
}

IssueResult ap_issue(const ProtocolContext& ctx, const AccessPoint& ap, ByteView sealed_request,
                     std::uint64_t now, Ledger& ledger, Rng& rng, const ResponseTamper& tamper) {
  const IdentityScheme& id = ctx.identity;
  const Bytes payload = id.open(ap.keys.sk, sealed_request);

  Bytes pk_bytes;
  GeoCoordinate claim;
  GroupElement user_pk;
  Signature sig;
  std::size_t body_len = 0;
  try {
    ByteReader in(payload);
    pk_bytes = in.take_length_prefixed();
    claim.longitude = in.i32();
    claim.latitude = in.i32();
    body_len = in.position();
    sig = id.decode_signature(in.take(id.signature_bytes()));
    in.expect_end();
    user_pk = id.curve().decode(pk_bytes);
  } catch (const Error& e) {
    throw Error(ErrorCode::TamperedRequest, std::string("unreadable request: ") + e.what());
  }
  const ByteView body = ByteView(payload).first(body_len);
  if (!id.verify_sig(user_pk, body, sig)) {
    throw Error(ErrorCode::TamperedRequest, "request signature does not verify");
  }
  if (!claim.valid() || !within_range(ap.position, claim, ap.range_m)) {
    throw Error(ErrorCode::OutOfRange, "claimed position is " +
                                           std::to_string(distance_m(ap.position, claim)) +
                                           " m from " + ap.name);
  }

  const Profile& profile = *ctx.profile;
  LocationCertificate cert{pk_bytes, claim.longitude, claim.latitude,
                           profile.scalar_field().random(rng), now};
  const FieldElement dig = certificate_digest(profile.hash(), cert);
  ledger.submit_entry(make_digest_entry(dig));

  Bytes response = cert.rand.encode();
  append_u64(response, now);
  const Signature ap_sig = id.sign(ap.keys.sk, response_signed_part(cert.rand, now, body));
  append(response, id.encode_signature(ap_sig));

  GroupElement recipient = user_pk;
  if (tamper) tamper(response, recipient);
  // The AP keeps nothing about the request beyond the pooled digest.
  return {id.seal(recipient, response, rng), dig};
}

LocationCertificate user_assemble_certificate(const ProtocolContext& ctx, const KeyPair& user,
                                              const GeoCoordinate& claim, const GroupElement& ap_pk,
                                              ByteView sealed_response) {
  const IdentityScheme& id = ctx.identity;
  const Bytes payload = id.open(user.sk, sealed_response);
  const Bytes pk_bytes = id.curve().encode(user.pk);
  FieldElement rand;
  std::uint64_t time = 0;
  Signature sig;
  try {
    ByteReader in(payload);
    rand = ctx.profile->scalar_field().decode(in.take(ctx.profile->scalar_field().byte_width()));
    time = in.u64();
    sig = id.decode_signature(in.take(id.signature_bytes()));
    in.expect_end();
  } catch (const Error& e) {
    throw Error(ErrorCode::TamperedResponse, std::string("unreadable response: ") + e.what());
  }
  if (!id.verify_sig(ap_pk, response_signed_part(rand, time, request_body(pk_bytes, claim)), sig)) {
    throw Error(ErrorCode::TamperedResponse, "response signature does not verify");
  }
  return LocationCertificate{pk_bytes, claim.longitude, claim.latitude, rand, time};
}

Bytes ServiceRequest::serialize() const {
  Bytes out;
  append_u8(out, static_cast<std::uint8_t>(to_int(level)));
  append_u64(out, ind);
  append(out, hr.encode());
  append(out, dig.encode());
  append(out, encode_proof_elements(proof));
  if (disclosed.pk) {
    append_u16(out, static_cast<std::uint16_t>(disclosed.pk->size()));
    append(out, *disclosed.pk);
  }
  if (disclosed.longitude && disclosed.latitude) {
    append_i32(out, *disclosed.longitude);
    append_i32(out, *disclosed.latitude);
  }
  if (disclosed.time) append_u64(out, *disclosed.time);
  return out;
}

ServiceRequest ServiceRequest::deserialize(const Profile& profile, ByteView bytes) {
  ByteReader in(bytes);
  ServiceRequest r;
  r.level = privacy_level_from_int(in.u8());
  r.ind = in.u64();
  const PrimeField& fr = profile.scalar_field();
  r.hr = fr.decode(in.take(fr.byte_width()));
  r.dig = fr.decode(in.take(fr.byte_width()));
  r.proof = decode_proof_elements(in.take(Proof::kElements * profile.curve().point_bytes()),
                                  profile.curve());
  const Disclosure d = disclosure_for(r.level);
  if (d.pk) r.disclosed.pk = in.take_length_prefixed();
  if (d.coordinate) {
    r.disclosed.longitude = in.i32();
    r.disclosed.latitude = in.i32();
  }
  if (d.time) r.disclosed.time = in.u64();
  in.expect_end();
  return r;
}

ServiceRequest user_request_service(const ProtocolContext& ctx, const LocationCertificate& cert,
                                    PrivacyLevel level, std::uint64_t ind, const CrsBundle& crs) {
  const LevelCrs& lc = crs.at(level);
  const Witness w = compute_witness(lc.circuit.circuit, lc.circuit.inputs_for(cert));
  ServiceRequest r;
  r.level = level;
  r.ind = ind;
  r.proof = prove(lc.proving, lc.qap, w, ctx.profile->engine());
  r.hr = w[lc.circuit.hr];
  r.dig = w[lc.circuit.dig];
  r.disclosed = DisclosedParameters::from_certificate(cert, level);
  return r;
}

ServiceGrant server_handle(const ProtocolContext& ctx, const Participant& server,
                           const ServiceRequest& request, const CrsBundle& crs, Ledger& ledger) {
  const Bytes server_pk = ctx.identity.curve().encode(server.keys.pk);
  if (ledger.contains_record(server_pk, request.ind, request.hr)) {
    throw Error(ErrorCode::AlreadyServed, "service " + std::to_string(request.ind) +
                                              " already granted for this serial hash");
  }
  if (!ledger.contains_digest(request.dig)) {
    throw Error(ErrorCode::UnknownDigest, "certificate digest is not on the ledger");
  }
  const LevelCrs& lc = crs.at(request.level);
  const auto inputs = lc.circuit.public_inputs(request.disclosed, request.hr, request.dig);
  VerifyResult result;
  try {
    result = verify(lc.verification, inputs, request.proof, ctx.profile->engine());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MalformedProof) throw;
    throw Error(ErrorCode::InvalidProof, e.what());
  }
  if (!result) {
    throw Error(ErrorCode::InvalidProof,
                "proof rejected by the " + std::string(to_string(result.failed)) + " check");
  }
  try {
    ledger.submit_entry(make_service_record(server_pk, request.ind, request.hr));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DuplicateRecord) throw;
    throw Error(ErrorCode::AlreadyServed, "service record already pending");
  }
  return {server_pk, request.ind, request.hr};
}

}  // namespace zkpol
