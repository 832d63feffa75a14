#include <gtest/gtest.h>

#include <vector>

#include "zkpol/circuit.hpp"
#include "zkpol/error.hpp"
#include "zkpol/hash.hpp"
#include "zkpol/profile.hpp"
#include "zkpol/random.hpp"
#include "zkpol/zkpol_circuit.hpp"

namespace zkpol {
namespace {

TEST(HashBytes, StandardVectors) {
  EXPECT_EQ(to_hex(hash_bytes({})),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(to_hex(hash_bytes(as_bytes("a"))),
            "ca978112ca1bbdcafac231b39a23dc4da786eff8147c4e72b9807785afee48bb");
  EXPECT_EQ(to_hex(hash_bytes(as_bytes("abc"))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(HashBytes, DistinctFixturesDistinctDigests) {
  const std::vector<std::string> fixtures{"", "a", "b", "ab", "ba", "zkpol", "zkpol ", std::string(1, '\0')};
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    for (std::size_t j = i + 1; j < fixtures.size(); ++j) {
      EXPECT_NE(hash_bytes(as_bytes(fixtures[i])), hash_bytes(as_bytes(fixtures[j])));
    }
  }
}

TEST(AlgebraicHash, SmallFieldRawPermutation) {
  const PrimeField f(101);
  const auto params = AlgebraicHashParams::from_constants(f, {f.zero(), f.from_u64(7)});
  // 3 -> 3^3 = 27 -> (27 + 7)^3 = 39304 = 15 (mod 101)
  EXPECT_EQ(mimc_rounds(params, f.from_u64(3)), f.from_u64(15));
  EXPECT_EQ(mimc_compress(params, f.from_u64(3)), f.from_u64(18));
  const FieldElement one_input[] = {f.from_u64(3)};
  EXPECT_EQ(hash_field(params, one_input), f.from_u64(18));
}

TEST(AlgebraicHash, SpongeAbsorbsSequentially) {
  const PrimeField f(101);
  const auto params = AlgebraicHashParams::from_constants(f, {f.zero(), f.from_u64(7)});
  const FieldElement in[] = {f.from_u64(3), f.from_u64(50)};
  const FieldElement s1 = mimc_compress(params, f.from_u64(3));
  EXPECT_EQ(hash_field(params, in), mimc_compress(params, s1 + f.from_u64(50)));
}

TEST(AlgebraicHash, ParameterValidation) {
  const PrimeField f(101);
  EXPECT_THROW(AlgebraicHashParams::from_constants(f, {f.zero()}), Error);
  // 3 divides 103 - 1, so cubing is not a permutation.
  const PrimeField g(103);
  EXPECT_THROW(AlgebraicHashParams::derive(g, 4), Error);
  const auto params = AlgebraicHashParams::derive(f, 4);
  try {
    hash_field(params, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(AlgebraicHash, RoundConstantsDerivation) {
  const auto& params = Profile::oracle()->hash();
  const PrimeField& f = params.field();
  ASSERT_EQ(params.rounds(), 4u);
  EXPECT_TRUE(params.round_constants()[0].is_zero());
  for (std::uint64_t i = 1; i < params.rounds(); ++i) {
    Bytes seed(as_bytes("zkpol-mimc-v1").begin(), as_bytes("zkpol-mimc-v1").end());
    append_u64(seed, i);
    const Digest32 h = hash_bytes(seed);
    mpz_class v;
    mpz_import(v.get_mpz_t(), h.size(), 1, 1, 1, 0, h.data());
    EXPECT_EQ(params.round_constants()[i].value(), v % f.modulus());
  }
  EXPECT_EQ(Profile::realistic()->hash().rounds(), 91u);
}

TEST(AlgebraicHash, PermutationIsInjectiveOnSmallField) {
  const PrimeField f(65519);
  const auto params = AlgebraicHashParams::derive(f, 4);
  std::vector<bool> seen(65519, false);
  for (unsigned long x = 0; x < 65519; ++x) {
    const unsigned long y = mimc_rounds(params, f.from_u64(x)).value().get_ui();
    ASSERT_FALSE(seen[y]) << "collision at " << x;
    seen[y] = true;
  }
}

TEST(AlgebraicHash, Avalanche) {
  const auto& params = Profile::oracle()->hash();
  const PrimeField& f = params.field();
  Rng rng(9);
  int changed = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<FieldElement> in{f.random(rng), f.random(rng), f.random(rng)};
    const FieldElement before = hash_field(params, in);
    const std::size_t k = rng.next_u64() % in.size();
    FieldElement other = f.random(rng);
    while (other == in[k]) other = f.random(rng);
    in[k] = other;
    if (hash_field(params, in) != before) ++changed;
  }
  EXPECT_GE(changed, 990);
}

TEST(AlgebraicHash, CircuitMatchesNative) {
  const auto& params = Profile::oracle()->hash();
  const PrimeField& f = params.field();
  Rng rng(10);
  for (std::size_t len : {1u, 2u, 5u}) {
    Circuit c(f);
    const VariableIndex out = c.add_public_output("out");
    std::vector<VariableIndex> ins;
    std::vector<LinearCombination> lcs;
    for (std::size_t i = 0; i < len; ++i) {
      ins.push_back(c.add_private_input("in" + std::to_string(i)));
      lcs.push_back(c.var(ins.back()));
    }
    const LinearCombination h = hash_gadget(c, params, lcs, "h");
    c.add_constraint(h, c.one(), out);
    // Two multiplications per round, plus the output binding.
    EXPECT_EQ(c.num_constraints(), 2 * params.rounds() * len + 1);
    for (int trial = 0; trial < 167; ++trial) {
      Assignment a;
      std::vector<FieldElement> values;
      for (VariableIndex v : ins) {
        values.push_back(f.random(rng));
        a[v] = values.back();
      }
      const Witness w = compute_witness(c, a);
      ASSERT_EQ(w[out], hash_field(params, values));
    }
  }
}

TEST(Chunking, SplitsBigEndian) {
  const PrimeField& f = Profile::oracle()->scalar_field();  // 61 bits -> 6-byte chunks
  EXPECT_EQ(chunk_bytes(f), 6u);
  Bytes data(13);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(i + 1);
  const auto chunks = bytes_to_field_chunks(f, data);
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks[0].value(), mpz_class("0x010203040506"));
  EXPECT_EQ(chunks[1].value(), mpz_class("0x0708090a0b0c"));
  EXPECT_EQ(chunks[2].value(), 13);
  EXPECT_EQ(chunk_count(f, 13), 3u);
  EXPECT_EQ(chunk_bytes(Profile::realistic()->scalar_field()), 19u);
  const PrimeField tiny(101);
  try {
    chunk_bytes(tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldTooSmall);
  }
}

TEST(Chunking, DistinctCoordinatesMapToDistinctElements) {
  const PrimeField& f = Profile::oracle()->scalar_field();
  const auto a = bytes_to_field_chunks(f, encode_coordinate(-1));
  const auto b = bytes_to_field_chunks(f, encode_coordinate(1));
  const auto c = bytes_to_field_chunks(f, encode_coordinate(0));
  EXPECT_NE(a, b);
  EXPECT_NE(b, c);
  EXPECT_EQ(a[0].value(), mpz_class("0xffffffff"));
}

}  // namespace
}  // namespace zkpol
