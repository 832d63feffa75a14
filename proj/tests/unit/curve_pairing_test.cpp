#include <gtest/gtest.h>

#include "zkpol/error.hpp"
#include "zkpol/pairing.hpp"
#include "zkpol/profile.hpp"
#include "zkpol/random.hpp"

namespace zkpol {
namespace {

class CurvePairing : public ::testing::Test {
 protected:
  const PairingEngine& engine = Profile::oracle()->engine();
  const Curve& curve = engine.curve();
  const PrimeField& fr = engine.scalar_field();
  const GroupElement& g = engine.generator();
};

TEST_F(CurvePairing, OracleParameters) {
  EXPECT_EQ(curve.p(), mpz_class("9223372036854774451"));
  EXPECT_EQ(curve.order(), mpz_class("2305843009213693613"));
  EXPECT_EQ(curve.p() % 4, 3);
  EXPECT_EQ((curve.p() + 1) % curve.order(), 0);
  const PairingEngine& real = Profile::realistic()->engine();
  EXPECT_EQ(real.order(), (mpz_class(1) << 160) - 47);
  EXPECT_GE(mpz_sizeinbase(real.curve().p().get_mpz_t(), 2), 190u);
}

TEST_F(CurvePairing, GroupExpExamples) {
  EXPECT_TRUE(engine.group_exp(fr.zero()).is_identity());
  EXPECT_TRUE(curve.mul(g, curve.order()).is_identity());
  EXPECT_EQ(engine.group_exp(fr.from_u64(2)), g + g);
  EXPECT_TRUE(curve.in_subgroup(g));
  EXPECT_FALSE(g.is_identity());
}

TEST_F(CurvePairing, GroupExpIsHomomorphic) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const FieldElement a = fr.random(rng), b = fr.random(rng);
    EXPECT_EQ(engine.group_exp(a + b), engine.group_exp(a) + engine.group_exp(b));
    EXPECT_EQ(engine.group_exp(-a), -engine.group_exp(a));
    EXPECT_TRUE(curve.is_on_curve(engine.group_exp(a).x(), engine.group_exp(a).y()) ||
                engine.group_exp(a).is_identity());
  }
}

TEST_F(CurvePairing, PairingExamples) {
  const GtElement e = engine.pairing(g, g);
  EXPECT_FALSE(e.is_one());
  EXPECT_TRUE(e.pow(curve.order()).is_one());
  EXPECT_EQ(engine.pairing(engine.group_exp(fr.from_u64(2)), engine.group_exp(fr.from_u64(3))),
            e.pow(6));
  Rng rng(4);
  const FieldElement a = fr.random(rng), b = fr.random(rng);
  EXPECT_EQ(engine.pairing(engine.group_exp(a), g) * engine.pairing(engine.group_exp(b), g),
            engine.pairing(engine.group_exp(a + b), g));
  EXPECT_TRUE(engine.pairing(curve.identity(), g).is_one());
  EXPECT_TRUE(engine.pairing(g, curve.identity()).is_one());
  EXPECT_EQ(engine.pairing(engine.group_exp(a), engine.group_exp(b)),
            engine.pairing(engine.group_exp(b), engine.group_exp(a)));
}

TEST_F(CurvePairing, BilinearityAgainstExponentArithmetic) {
  const GtElement base = engine.pairing(g, g);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const FieldElement a = fr.random(rng), b = fr.random(rng);
    const mpz_class ab = (a.value() * b.value()) % curve.order();
    EXPECT_EQ(engine.pairing(engine.group_exp(a), engine.group_exp(b)), base.pow(ab)) << i;
  }
}

TEST_F(CurvePairing, RealisticPairingIsBilinear) {
  const PairingEngine& real = Profile::realistic()->engine();
  const GtElement base = real.pairing(real.generator(), real.generator());
  EXPECT_FALSE(base.is_one());
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    const FieldElement a = real.scalar_field().random(rng), b = real.scalar_field().random(rng);
    EXPECT_EQ(real.pairing(real.group_exp(a), real.group_exp(b)), base.pow((a * b).value()));
  }
}

TEST_F(CurvePairing, EncodingRoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const GroupElement a = engine.group_exp(fr.random(rng));
    const Bytes enc = curve.encode(a);
    EXPECT_EQ(enc.size(), curve.point_bytes());
    EXPECT_EQ(enc[0], 0x04);
    EXPECT_EQ(curve.decode(enc), a);
  }
  const Bytes id = curve.encode(curve.identity());
  EXPECT_EQ(id[0], 0x00);
  EXPECT_TRUE(curve.decode(id).is_identity());
  Bytes bad = curve.encode(g);
  bad.back() ^= 1;
  EXPECT_THROW(curve.decode(bad), Error);
  bad = curve.encode(g);
  bad[0] = 0x02;
  EXPECT_THROW(curve.decode(bad), Error);
}

TEST_F(CurvePairing, SubgroupMembership) {
  // (0, 0) lies on y^2 = x^3 + x and has order 2.
  const GroupElement two = curve.point(0, 0);
  EXPECT_FALSE(curve.in_subgroup(two));
  EXPECT_TRUE((two + two).is_identity());
  EXPECT_THROW(curve.point(1, 1), Error);
}

TEST_F(CurvePairing, MultiExpMatchesNaive) {
  Rng rng(8);
  for (std::size_t n : {0u, 1u, 2u, 7u, 64u, 300u}) {
    std::vector<GroupElement> bases;
    std::vector<FieldElement> scalars;
    GroupElement expected = curve.identity();
    for (std::size_t i = 0; i < n; ++i) {
      bases.push_back(engine.group_exp(fr.random(rng)));
      scalars.push_back(i % 5 == 0 ? fr.zero() : fr.random(rng));
      expected = expected + engine.group_exp(bases.back(), scalars.back());
    }
    EXPECT_EQ(engine.multi_exp(bases, scalars), expected) << n;
  }
}

TEST_F(CurvePairing, HashToSubgroupIsDeterministicAndSeparated) {
  const GroupElement a = curve.hash_to_subgroup("tag-a");
  EXPECT_EQ(a, curve.hash_to_subgroup("tag-a"));
  EXPECT_NE(a, curve.hash_to_subgroup("tag-b"));
  EXPECT_TRUE(curve.in_subgroup(a));
}

}  // namespace
}  // namespace zkpol
