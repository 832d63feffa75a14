#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "zkpol/identity.hpp"
#include "zkpol/ledger.hpp"
#include "zkpol/profile.hpp"
#include "zkpol/qap.hpp"
#include "zkpol/snark.hpp"
#include "zkpol/zkpol_circuit.hpp"

namespace zkpol {

/// Signed micro-degrees.
struct GeoCoordinate {
  std::int32_t longitude = 0;
  std::int32_t latitude = 0;

  bool valid() const noexcept;
  bool operator==(const GeoCoordinate&) const = default;
};

/// Equirectangular approximation around the AP's latitude, in meters.
double distance_m(const GeoCoordinate& ap, const GeoCoordinate& claim);
/// Boundary inclusive.
bool within_range(const GeoCoordinate& ap, const GeoCoordinate& claim, double range_m);

struct AccessPoint {
  std::string name;
  KeyPair keys;
  GeoCoordinate position;
  double range_m = 0;
};

struct Participant {
  std::string name;
  KeyPair keys;
};

using LocationCertificate = CertificateFields;

/// Circuit, QAP and CRS for one privacy level.
struct LevelCrs {
  ZkpolCircuit circuit;
  QapInstance qap;
  ProvingKey proving;
  VerificationKey verification;

  PrivacyLevel level() const noexcept { return circuit.level; }

  static ZkpolCircuit build_circuit(const Profile& profile, PrivacyLevel level);
  static LevelCrs generate(const Profile& profile, PrivacyLevel level, Rng& rng);
  /// Throws KeyMismatch when either key belongs to another circuit.
  static LevelCrs from_keys(const Profile& profile, PrivacyLevel level, ProvingKey pk,
                            VerificationKey vk);
};

/// One CRS per privacy level, shared read-only by every actor.
class CrsBundle {
 public:
  void set(std::shared_ptr<const LevelCrs> crs);
  bool has(PrivacyLevel level) const noexcept;
  /// Throws InvalidLevel when the level was never set up.
  const LevelCrs& at(PrivacyLevel level) const;

 private:
  std::array<std::shared_ptr<const LevelCrs>, 4> levels_;
};

/// The shared parameter set every actor works under.
struct ProtocolContext {
  std::shared_ptr<const Profile> profile;
  IdentityScheme identity;

  explicit ProtocolContext(std::shared_ptr<const Profile> p)
      : profile(std::move(p)), identity(profile->engine()) {}
};

// Certificate issuance.

/// Signed request body: pk (u16 len) | longitude i32 | latitude i32 | signature.
Bytes build_certificate_request(const ProtocolContext& ctx, const KeyPair& user,
                                const GeoCoordinate& claim);

struct IssueResult {
  Bytes sealed_response;
  FieldElement dig;
};

/// Lets attack harnesses touch the signed response (and its addressee)
/// before it is sealed.
using ResponseTamper = std::function<void(Bytes& payload, GroupElement& recipient)>;

/// Opens, checks signature and distance, issues rand and time, submits the
/// digest to the ledger pool. Throws OpenFailed, TamperedRequest, OutOfRange.
IssueResult ap_issue(const ProtocolContext& ctx, const AccessPoint& ap, ByteView sealed_request,
                     std::uint64_t now, Ledger& ledger, Rng& rng,
                     const ResponseTamper& tamper = nullptr);

/// Throws OpenFailed or TamperedResponse.
LocationCertificate user_assemble_certificate(const ProtocolContext& ctx, const KeyPair& user,
                                              const GeoCoordinate& claim, const GroupElement& ap_pk,
                                              ByteView sealed_response);

// Service.

struct ServiceRequest {
  PrivacyLevel level = PrivacyLevel::Level1;
  std::uint64_t ind = 0;
  FieldElement hr;
  FieldElement dig;
  Proof proof;
  DisclosedParameters disclosed;

  /// level u8 | ind u64 | hr | dig | 8 proof elements | disclosed parameters
  /// in native form (pk u16-len bytes, longitude/latitude i32, time u64),
  /// present only where the level publishes them.
  Bytes serialize() const;
  /// Throws InvalidEncoding / MalformedProof / InvalidLevel.
  static ServiceRequest deserialize(const Profile& profile, ByteView bytes);
};

/// Throws UnsatisfiedWitness / KeyMismatch.
ServiceRequest user_request_service(const ProtocolContext& ctx, const LocationCertificate& cert,
                                    PrivacyLevel level, std::uint64_t ind, const CrsBundle& crs);

struct ServiceGrant {
  Bytes server_pk;
  std::uint64_t ind = 0;
  FieldElement hr;
};

/// Replay check, ledger digest lookup, proof verification, then the service
/// record goes to the ledger pool. Throws AlreadyServed, UnknownDigest,
/// InvalidProof, ArityMismatch.
ServiceGrant server_handle(const ProtocolContext& ctx, const Participant& server,
                           const ServiceRequest& request, const CrsBundle& crs, Ledger& ledger);

}  // namespace zkpol
