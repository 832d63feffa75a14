#include <gtest/gtest.h>

#include "zkpol/bytes.hpp"
#include "zkpol/error.hpp"
#include "zkpol/random.hpp"

namespace zkpol {
namespace {

TEST(Bytes, HexRoundTrip) {
  const Bytes b{0x00, 0x01, 0xab, 0xff};
  EXPECT_EQ(to_hex(b), "0001abff");
  EXPECT_EQ(from_hex("0001ABff"), b);
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

TEST(Bytes, BigEndianAppendAndRead) {
  Bytes b;
  append_u8(b, 0x12);
  append_u16(b, 0x3456);
  append_u32(b, 0x789abcde);
  append_u64(b, 0x0102030405060708ULL);
  append_i32(b, -2);
  EXPECT_EQ(to_hex(b), "123456789abcde0102030405060708fffffffe");
  ByteReader in(b);
  EXPECT_EQ(in.u8(), 0x12);
  EXPECT_EQ(in.u16(), 0x3456);
  EXPECT_EQ(in.u32(), 0x789abcdeU);
  EXPECT_EQ(in.u64(), 0x0102030405060708ULL);
  EXPECT_EQ(in.i32(), -2);
  EXPECT_NO_THROW(in.expect_end());
  EXPECT_THROW(in.u8(), Error);
}

TEST(Bytes, LengthPrefixedAndOverrun) {
  Bytes b;
  append_u16(b, 3);
  append(b, Bytes{1, 2, 3});
  ByteReader in(b);
  EXPECT_EQ(in.take_length_prefixed(), (Bytes{1, 2, 3}));
  Bytes short_b{0x00, 0x05, 0x01};
  ByteReader bad(short_b);
  try {
    bad.take_length_prefixed();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidEncoding);
  }
}

TEST(Bytes, Subsequence) {
  const Bytes hay{1, 2, 3, 4, 5};
  EXPECT_TRUE(contains_subsequence(hay, Bytes{3, 4}));
  EXPECT_FALSE(contains_subsequence(hay, Bytes{4, 3}));
  EXPECT_TRUE(contains_subsequence(hay, Bytes{}));
}

TEST(Rng, DeterministicAndForked) {
  Rng a(5), b(5), c(6);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  Rng f1 = Rng(5).fork(1), f2 = Rng(5).fork(2);
  EXPECT_NE(f1.next_u64(), f2.next_u64());
  Rng u(9);
  const mpz_class bound = 10;
  for (int i = 0; i < 200; ++i) {
    const mpz_class v = u.uniform_below(bound);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, bound);
  }
}

}  // namespace
}  // namespace zkpol
