#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "zkpol/pairing.hpp"
#include "zkpol/qap.hpp"
#include "zkpol/random.hpp"

namespace zkpol {

/// Secret setup randomness. Anyone holding it can forge proofs; setup wipes
/// it before returning.
struct ToxicWaste {
  FieldElement s;
  FieldElement rho_l;
  FieldElement rho_r;
  FieldElement alpha_l;
  FieldElement alpha_r;
  FieldElement alpha_o;
  FieldElement beta;
  FieldElement gamma;

  void wipe();
};

/// Prover half of the CRS. With g_l = g^rho_l, g_r = g^rho_r, g_o = g^(rho_l rho_r)
/// and j ranging over the private variables m+1..n:
struct ProvingKey {
  Digest32 circuit_id{};
  GroupElement g;
  std::vector<GroupElement> powers;        // g^(s^i), i = 1..d
  std::vector<GroupElement> left;          // g_l^(l_j(s))
  std::vector<GroupElement> right;         // g_r^(r_j(s))
  std::vector<GroupElement> output;        // g_o^(o_j(s))
  std::vector<GroupElement> left_alpha;    // g_l^(alpha_l l_j(s))
  std::vector<GroupElement> right_alpha;   // g_r^(alpha_r r_j(s))
  std::vector<GroupElement> output_alpha;  // g_o^(alpha_o o_j(s))
  std::vector<GroupElement> beta;          // g_l^(beta l_j(s)) g_r^(beta r_j(s)) g_o^(beta o_j(s))
};

/// Verifier half; i ranges over 0..m (the constant and all public variables).
struct VerificationKey {
  Digest32 circuit_id{};
  GroupElement g;
  GroupElement output_target;  // g_o^(t(s))
  std::vector<GroupElement> left;
  std::vector<GroupElement> right;
  std::vector<GroupElement> output;
  GroupElement alpha_l;     // g^alpha_l
  GroupElement alpha_r;     // g^alpha_r
  GroupElement alpha_o;     // g^alpha_o
  GroupElement gamma;       // g^gamma
  GroupElement beta_gamma;  // g^(beta gamma)

  std::size_t num_public() const { return left.empty() ? 0 : left.size() - 1; }
};

struct CrsPair {
  ProvingKey proving;
  VerificationKey verification;
};

struct Proof {
  static constexpr std::size_t kElements = 8;

  GroupElement left;          // g_l^(L_p(s))
  GroupElement left_alpha;    // g_l^(L'_p(s))
  GroupElement right;         // g_r^(R_p(s))
  GroupElement right_alpha;   // g_r^(R'_p(s))
  GroupElement output;        // g_o^(O_p(s))
  GroupElement output_alpha;  // g_o^(O'_p(s))
  GroupElement consistency;   // g^(Z(s))
  GroupElement quotient;      // g^(h(s))

  std::array<GroupElement*, kElements> elements() {
    return {&left, &left_alpha, &right, &right_alpha, &output, &output_alpha, &consistency, &quotient};
  }
  std::array<const GroupElement*, kElements> elements() const {
    return {&left, &left_alpha, &right, &right_alpha, &output, &output_alpha, &consistency, &quotient};
  }
};

/// Generates the CRS for `qap`. Deterministic in the rng state; draws of s
/// that hit an evaluation point are resampled.
CrsPair setup(const QapInstance& qap, const PairingEngine& engine, Rng& rng);

/// Same, but hands the toxic waste out. Tests use it to recompute exponents;
/// nothing else should.
CrsPair setup_exposing_toxic_waste(const QapInstance& qap, const PairingEngine& engine, Rng& rng,
                                   ToxicWaste& waste);

/// Throws KeyMismatch if pk was generated for another circuit and
/// UnsatisfiedWitness (via assemble) if the witness fails the QAP.
Proof prove(const ProvingKey& pk, const QapInstance& qap, const Witness& witness,
            const PairingEngine& engine);

enum class CheckFamily { None, AlphaRestriction, Consistency, Divisibility };
std::string_view to_string(CheckFamily family) noexcept;

struct VerifyResult {
  bool accepted = false;
  CheckFamily failed = CheckFamily::None;

  explicit operator bool() const noexcept { return accepted; }
};

/// `public_inputs` are v_1..v_m (for zk-PoL circuits: the level's disclosed
/// parameters followed by hr and dig). Throws ArityMismatch on a count
/// mismatch and MalformedProof when an element is off-curve or outside the
/// prime-order subgroup. Check families run in order: alpha restriction,
/// consistency, divisibility; the first failure is reported.
VerifyResult verify(const VerificationKey& vk, std::span<const FieldElement> public_inputs,
                    const Proof& proof, const PairingEngine& engine);

// Framed binary files: 8-byte magic, version byte, 32-byte circuit id, then
// element sequences each prefixed by a u32 count.
inline constexpr std::uint8_t kFormatVersion = 1;

Bytes serialize(const ProvingKey& pk, const Curve& curve);
Bytes serialize(const VerificationKey& vk, const Curve& curve);
Bytes serialize(const Proof& proof, const Digest32& circuit_id, const Curve& curve);

/// Throws InvalidEncoding on malformed input.
ProvingKey deserialize_proving_key(ByteView bytes, const Curve& curve);
VerificationKey deserialize_verification_key(ByteView bytes, const Curve& curve);
/// Throws MalformedProof on malformed input; returns the bound circuit id too.
Proof deserialize_proof(ByteView bytes, const Curve& curve, Digest32* circuit_id = nullptr);

/// Proof body without framing: the 8 canonical point encodings.
Bytes encode_proof_elements(const Proof& proof);
Proof decode_proof_elements(ByteView bytes, const Curve& curve);

/// Readable dump of a framed key or proof file.
std::string hex_dump(ByteView framed, const Curve& curve);

}  // namespace zkpol
