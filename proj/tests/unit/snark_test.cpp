#include <gtest/gtest.h>

#include "test_support.hpp"
#include "zkpol/error.hpp"
#include "zkpol/protocol.hpp"
#include "zkpol/snark.hpp"
#include "zkpol/zkpol_circuit.hpp"

namespace zkpol {
namespace {

using testing::CubicCircuit;
using testing::Side;
using testing::mod;
using testing::target_at;
using testing::variable_poly_at;

class SnarkTest : public ::testing::Test {
 protected:
  const Profile& profile = *Profile::oracle();
  const PairingEngine& engine = profile.engine();
  const PrimeField& fr = profile.scalar_field();
  CubicCircuit cubic{fr};
  QapInstance qap = circuit_to_qap(cubic.circuit);

  GroupElement g_pow(const mpz_class& e) const {
    return engine.curve().mul(engine.generator(), mod(e, fr.modulus()));
  }
};

TEST_F(SnarkTest, HonestProofVerifies) {
  Rng rng(7);
  const CrsPair crs = setup(qap, engine, rng);
  const Witness w = cubic.witness_for(3);
  EXPECT_EQ(w[cubic.out], fr.from_u64(35));
  const Proof proof = prove(crs.proving, qap, w, engine);
  const VerifyResult result = verify(crs.verification, w.public_values(), proof, engine);
  EXPECT_TRUE(result.accepted);
  EXPECT_EQ(result.failed, CheckFamily::None);
}

TEST_F(SnarkTest, CrsMatchesExponentsFromToxicWaste) {
  Rng rng(11);
  ToxicWaste tw;
  const CrsPair crs = setup_exposing_toxic_waste(qap, engine, rng, tw);
  const mpz_class p = fr.modulus();
  const mpz_class s = tw.s.value(), rl = tw.rho_l.value(), rr = tw.rho_r.value();
  const mpz_class ro = mod(rl * rr, p);
  const std::size_t d = qap.num_constraints();

  ASSERT_EQ(crs.proving.powers.size(), d);
  mpz_class power = 1;
  for (std::size_t i = 0; i < d; ++i) {
    power = mod(power * s, p);
    EXPECT_EQ(crs.proving.powers[i], g_pow(power));
  }
  EXPECT_EQ(crs.verification.output_target, g_pow(ro * target_at(d, s, p)));
  EXPECT_EQ(crs.verification.beta_gamma, g_pow(tw.beta.value() * tw.gamma.value()));

  const std::size_t m = qap.num_public();
  for (VariableIndex i = 0; i <= m; ++i) {
    EXPECT_EQ(crs.verification.left[i], g_pow(rl * variable_poly_at(cubic.circuit, i, Side::Left, s)));
    EXPECT_EQ(crs.verification.output[i],
              g_pow(ro * variable_poly_at(cubic.circuit, i, Side::Output, s)));
  }
  for (std::size_t k = 0; k < crs.proving.left.size(); ++k) {
    const VariableIndex j = static_cast<VariableIndex>(m + 1 + k);
    const mpz_class l = rl * variable_poly_at(cubic.circuit, j, Side::Left, s);
    const mpz_class r = rr * variable_poly_at(cubic.circuit, j, Side::Right, s);
    const mpz_class o = ro * variable_poly_at(cubic.circuit, j, Side::Output, s);
    EXPECT_EQ(crs.proving.left[k], g_pow(l));
    EXPECT_EQ(crs.proving.right_alpha[k], g_pow(tw.alpha_r.value() * r));
    EXPECT_EQ(crs.proving.beta[k], g_pow(tw.beta.value() * (l + r + o)));
  }
}

TEST_F(SnarkTest, ProofElementsMatchExponentOracle) {
  Rng rng(13);
  ToxicWaste tw;
  const CrsPair crs = setup_exposing_toxic_waste(qap, engine, rng, tw);
  const Witness w = cubic.witness_for(4);
  const Proof proof = prove(crs.proving, qap, w, engine);

  const mpz_class p = fr.modulus();
  const mpz_class s = tw.s.value();
  mpz_class lp = 0, rp = 0, op = 0, L = 0, R = 0, O = 0;
  for (VariableIndex i = 0; i < qap.num_variables(); ++i) {
    const mpz_class v = w[i].value();
    const mpz_class l = v * variable_poly_at(cubic.circuit, i, Side::Left, s);
    const mpz_class r = v * variable_poly_at(cubic.circuit, i, Side::Right, s);
    const mpz_class o = v * variable_poly_at(cubic.circuit, i, Side::Output, s);
    L += l, R += r, O += o;
    if (i > qap.num_public()) lp += l, rp += r, op += o;
  }
  const mpz_class rl = tw.rho_l.value(), rr = tw.rho_r.value(), ro = rl * rr;
  EXPECT_EQ(proof.left, g_pow(rl * lp));
  EXPECT_EQ(proof.right, g_pow(rr * rp));
  EXPECT_EQ(proof.output, g_pow(ro * op));
  EXPECT_EQ(proof.left_alpha, g_pow(tw.alpha_l.value() * rl * lp));
  EXPECT_EQ(proof.output_alpha, g_pow(tw.alpha_o.value() * ro * op));
  EXPECT_EQ(proof.consistency, g_pow(tw.beta.value() * (rl * lp + rr * rp + ro * op)));
  // h(s) = (L R - O) / t at s.
  const mpz_class h = mod(mod(L * R - O, p) * testing::inv_mod(target_at(qap.num_constraints(), s, p), p), p);
  EXPECT_EQ(proof.quotient, g_pow(h));
}

TEST_F(SnarkTest, EachMutatedElementIsCaughtByItsFamily) {
  Rng rng(17);
  const CrsPair crs = setup(qap, engine, rng);
  const Witness w = cubic.witness_for(3);
  const Proof honest = prove(crs.proving, qap, w, engine);
  const CheckFamily expected[Proof::kElements] = {
      CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction,
      CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction,
      CheckFamily::Consistency,      CheckFamily::Divisibility};
  for (std::size_t i = 0; i < Proof::kElements; ++i) {
    Proof bad = honest;
    *bad.elements()[i] = *bad.elements()[i] + engine.generator();
    const VerifyResult r = verify(crs.verification, w.public_values(), bad, engine);
    EXPECT_FALSE(r.accepted) << "element " << i;
    EXPECT_EQ(r.failed, expected[i]) << "element " << i;
  }
}

TEST_F(SnarkTest, WrongPublicInputFailsDivisibility) {
  Rng rng(19);
  const CrsPair crs = setup(qap, engine, rng);
  const Witness w = cubic.witness_for(3);
  const Proof proof = prove(crs.proving, qap, w, engine);
  const std::vector<FieldElement> wrong{fr.from_u64(36)};
  const VerifyResult r = verify(crs.verification, wrong, proof, engine);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failed, CheckFamily::Divisibility);
}

TEST_F(SnarkTest, ArityMismatchThrows) {
  Rng rng(23);
  const CrsPair crs = setup(qap, engine, rng);
  const Witness w = cubic.witness_for(3);
  const Proof proof = prove(crs.proving, qap, w, engine);
  const std::vector<FieldElement> two{fr.from_u64(35), fr.from_u64(1)};
  try {
    verify(crs.verification, two, proof, engine);
    FAIL() << "expected ArityMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST_F(SnarkTest, ElementOutsideSubgroupIsMalformed) {
  Rng rng(29);
  const CrsPair crs = setup(qap, engine, rng);
  const Witness w = cubic.witness_for(3);
  Proof proof = prove(crs.proving, qap, w, engine);
  // (0, 0) has order 2.
  proof.quotient = engine.curve().point(0, 0);
  try {
    verify(crs.verification, w.public_values(), proof, engine);
    FAIL() << "expected MalformedProof";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedProof);
  }
}

TEST_F(SnarkTest, UnsatisfyingWitnessIsRejectedByProver) {
  Rng rng(31);
  const CrsPair crs = setup(qap, engine, rng);
  Witness w = cubic.witness_for(3);
  w[cubic.out] = fr.from_u64(36);
  try {
    prove(crs.proving, qap, w, engine);
    FAIL() << "expected UnsatisfiedWitness";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsatisfiedWitness);
  }
}

TEST_F(SnarkTest, KeyForAnotherCircuitIsRejected) {
  Rng rng(37);
  const ZkpolCircuit other = build_zkpol_circuit(PrivacyLevel::Level1, profile.hash(),
                                                 profile.curve().point_bytes());
  const QapInstance other_qap = circuit_to_qap(other.circuit);
  const CrsPair crs = setup(other_qap, engine, rng);
  try {
    prove(crs.proving, qap, cubic.witness_for(3), engine);
    FAIL() << "expected KeyMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KeyMismatch);
  }
}

TEST_F(SnarkTest, SetupIsDeterministicInSeed) {
  Rng a(41), b(41), c(42);
  const CrsPair x = setup(qap, engine, a);
  const CrsPair y = setup(qap, engine, b);
  const CrsPair z = setup(qap, engine, c);
  EXPECT_EQ(serialize(x.proving, engine.curve()), serialize(y.proving, engine.curve()));
  EXPECT_NE(serialize(x.verification, engine.curve()), serialize(z.verification, engine.curve()));
}

TEST_F(SnarkTest, SerializationRoundTrips) {
  Rng rng(43);
  const Curve& curve = engine.curve();
  const CrsPair crs = setup(qap, engine, rng);
  const Witness w = cubic.witness_for(5);
  const Proof proof = prove(crs.proving, qap, w, engine);

  const ProvingKey pk = deserialize_proving_key(serialize(crs.proving, curve), curve);
  const VerificationKey vk = deserialize_verification_key(serialize(crs.verification, curve), curve);
  EXPECT_EQ(serialize(pk, curve), serialize(crs.proving, curve));
  EXPECT_EQ(serialize(vk, curve), serialize(crs.verification, curve));

  Digest32 id{};
  const Proof back = deserialize_proof(serialize(proof, qap.circuit_id(), curve), curve, &id);
  EXPECT_EQ(id, qap.circuit_id());
  EXPECT_TRUE(verify(vk, w.public_values(), back, engine).accepted);

  const Proof raw = decode_proof_elements(encode_proof_elements(proof), curve);
  EXPECT_EQ(encode_proof_elements(raw), encode_proof_elements(proof));

  const std::string dump = hex_dump(serialize(proof, qap.circuit_id(), curve), curve);
  EXPECT_NE(dump.find("ZKPOLPRF"), std::string::npos);
  EXPECT_NE(dump.find("count 8"), std::string::npos);
}

TEST_F(SnarkTest, TruncatedOrCorruptProofIsMalformed) {
  Rng rng(47);
  const Curve& curve = engine.curve();
  const CrsPair crs = setup(qap, engine, rng);
  const Proof proof = prove(crs.proving, qap, cubic.witness_for(2), engine);
  Bytes bytes = serialize(proof, qap.circuit_id(), curve);
  Bytes truncated(bytes.begin(), bytes.end() - 1);
  EXPECT_THROW(deserialize_proof(truncated, curve), Error);
  Bytes body = encode_proof_elements(proof);
  body[2] ^= 0x01;  // knocks x off the curve
  try {
    decode_proof_elements(body, curve);
    FAIL() << "expected MalformedProof";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedProof);
  }
  try {
    deserialize_verification_key(bytes, curve);
    FAIL() << "expected InvalidEncoding";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidEncoding);
  }
}

TEST_F(SnarkTest, ProofsForDifferentWitnessesVerifyUnderOneCrs) {
  Rng rng(53);
  const CrsPair crs = setup(qap, engine, rng);
  for (std::uint64_t x = 0; x < 6; ++x) {
    const Witness w = cubic.witness_for(x);
    const Proof proof = prove(crs.proving, qap, w, engine);
    EXPECT_TRUE(verify(crs.verification, w.public_values(), proof, engine).accepted) << x;
  }
}

TEST_F(SnarkTest, SingleConstraintTargetIsShiftedPower) {
  Circuit one_op(fr);
  const VariableIndex c = one_op.add_public_output("c");
  const VariableIndex a = one_op.add_private_input("a");
  const VariableIndex b = one_op.add_private_input("b");
  one_op.add_constraint(one_op.var(a), one_op.var(b), c);
  const QapInstance q = circuit_to_qap(one_op);
  ASSERT_EQ(q.num_constraints(), 1u);

  Rng rng(42);
  ToxicWaste tw;
  const CrsPair crs = setup_exposing_toxic_waste(q, engine, rng, tw);
  // t(x) = x - 1, so g_o^(t(s)) = g_o^(s - 1).
  const mpz_class ro = tw.rho_l.value() * tw.rho_r.value();
  EXPECT_EQ(crs.verification.output_target, g_pow(ro * (tw.s.value() - 1)));
  EXPECT_NE(tw.s.value(), 1);

  const Witness w = compute_witness(one_op, {{a, fr.from_u64(6)}, {b, fr.from_u64(7)}});
  EXPECT_EQ(w[c], fr.from_u64(42));
  const Proof proof = prove(crs.proving, q, w, engine);
  EXPECT_TRUE(verify(crs.verification, w.public_values(), proof, engine).accepted);
}

class ZkpolSnarkTest : public SnarkTest {
 protected:
  struct Instance {
    ZkpolCircuit circuit;
    QapInstance qap;
    CrsPair crs;
  };

  Instance instance(PrivacyLevel level, std::uint64_t seed) const {
    ZkpolCircuit c = build_zkpol_circuit(level, profile.hash(), profile.curve().point_bytes());
    QapInstance q = circuit_to_qap(c.circuit);
    Rng rng(seed);
    CrsPair crs = setup(q, engine, rng);
    return {std::move(c), std::move(q), std::move(crs)};
  }

  Witness witness(const Instance& in, std::uint64_t cert_seed) const {
    return compute_witness(in.circuit.circuit,
                           in.circuit.inputs_for(testing::certificate_fixture(profile, cert_seed)));
  }
};

TEST_F(ZkpolSnarkTest, CompletenessAtEveryLevel) {
  for (PrivacyLevel level : kAllLevels) {
    const Instance in = instance(level, 100 + to_int(level));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Witness w = witness(in, seed);
      const Proof proof = prove(in.crs.proving, in.qap, w, engine);
      EXPECT_TRUE(verify(in.crs.verification, w.public_values(), proof, engine).accepted)
          << to_int(level) << "/" << seed;
    }
  }
}

TEST_F(ZkpolSnarkTest, MutationMatrixAtEveryLevel) {
  const CheckFamily expected[Proof::kElements] = {
      CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction,
      CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction, CheckFamily::AlphaRestriction,
      CheckFamily::Consistency,      CheckFamily::Divisibility};
  Rng rng(200);
  for (PrivacyLevel level : kAllLevels) {
    const Instance in = instance(level, 200 + to_int(level));
    const Witness w = witness(in, 1);
    const Proof honest = prove(in.crs.proving, in.qap, w, engine);
    const Proof other = prove(in.crs.proving, in.qap, witness(in, 2), engine);
    for (std::size_t i = 0; i < Proof::kElements; ++i) {
      const GroupElement replacements[] = {
          engine.curve().identity(),
          *honest.elements()[i] + engine.generator(),
          engine.group_exp(fr.random_nonzero(rng)),
          *other.elements()[i],
      };
      for (std::size_t k = 0; k < 4; ++k) {
        ASSERT_NE(replacements[k], *honest.elements()[i]);
        Proof bad = honest;
        *bad.elements()[i] = replacements[k];
        const VerifyResult r = verify(in.crs.verification, w.public_values(), bad, engine);
        EXPECT_FALSE(r.accepted) << to_int(level) << " element " << i << " kind " << k;
        EXPECT_EQ(r.failed, expected[i]) << to_int(level) << " element " << i << " kind " << k;
      }
    }
  }
}

TEST_F(ZkpolSnarkTest, ProofIsBoundToItsCrs) {
  const Instance a = instance(PrivacyLevel::Level2, 300);
  const Instance b = instance(PrivacyLevel::Level2, 301);
  ASSERT_EQ(a.crs.verification.circuit_id, b.crs.verification.circuit_id);
  const Witness w = witness(a, 3);
  const Proof proof = prove(a.crs.proving, a.qap, w, engine);
  EXPECT_TRUE(verify(a.crs.verification, w.public_values(), proof, engine).accepted);
  EXPECT_FALSE(verify(b.crs.verification, w.public_values(), proof, engine).accepted);
}

TEST_F(ZkpolSnarkTest, ProofDoesNotCarryPrivateValues) {
  for (PrivacyLevel level : kAllLevels) {
    const Instance in = instance(level, 400 + to_int(level));
    const CertificateFields cert = testing::certificate_fixture(profile, 4);
    const Witness w = compute_witness(in.circuit.circuit, in.circuit.inputs_for(cert));
    const Bytes body = encode_proof_elements(prove(in.crs.proving, in.qap, w, engine));
    EXPECT_FALSE(contains_subsequence(body, cert.rand.encode())) << to_int(level);
    EXPECT_FALSE(contains_subsequence(body, cert.pk)) << to_int(level);
    for (VariableIndex v : in.circuit.pk) {
      EXPECT_FALSE(contains_subsequence(body, w[v].encode())) << to_int(level);
    }
  }
}

}  // namespace
}  // namespace zkpol
