#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "zkpol/bytes.hpp"

namespace zkpol {

class FieldElement;
class Rng;

/// Prime field F_p. Elements keep a pointer back to their field, so a field
/// must outlive every element drawn from it; fields are neither copied nor moved.
class PrimeField {
 public:
  /// Throws InvalidParameters unless `modulus` passes a probabilistic primality
  /// test with error below 2^-80.
  explicit PrimeField(mpz_class modulus);

  PrimeField(const PrimeField&) = delete;
  PrimeField& operator=(const PrimeField&) = delete;

  const mpz_class& modulus() const noexcept { return modulus_; }
  std::size_t bits() const noexcept { return bits_; }
  /// ceil(bits / 8): width of the canonical big-endian encoding.
  std::size_t byte_width() const noexcept { return (bits_ + 7) / 8; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_u64(std::uint64_t v) const;
  FieldElement from_i64(std::int64_t v) const;
  /// Reduces any integer into the field.
  FieldElement reduce(const mpz_class& v) const;
  FieldElement random(Rng& rng) const;
  FieldElement random_nonzero(Rng& rng) const;

  /// Strict canonical decoding: exactly byte_width() bytes, value < p.
  FieldElement decode(ByteView bytes) const;

  bool same_as(const PrimeField& other) const noexcept {
    return this == &other || modulus_ == other.modulus_;
  }

 private:
  mpz_class modulus_;
  std::size_t bits_;
};

class FieldElement {
 public:
  FieldElement() = default;

  const PrimeField& field() const;
  const mpz_class& value() const noexcept { return value_; }
  bool is_bound() const noexcept { return field_ != nullptr; }
  bool is_zero() const noexcept { return value_ == 0; }
  bool is_one() const noexcept { return value_ == 1; }

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  /// Throws DivisionByZero when rhs is zero.
  FieldElement operator/(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);

  /// Throws DivisionByZero on zero.
  FieldElement inverse() const;
  FieldElement pow(const mpz_class& exponent) const;

  bool operator==(const FieldElement& rhs) const noexcept {
    return value_ == rhs.value_ && (field_ == rhs.field_ || field_ == nullptr ||
                                    rhs.field_ == nullptr || field_->same_as(*rhs.field_));
  }
  bool operator!=(const FieldElement& rhs) const noexcept { return !(*this == rhs); }

  Bytes encode() const;
  std::string to_string() const { return value_.get_str(); }

  /// For callers that have already reduced `value` into [0, p).
  static FieldElement from_canonical(const PrimeField& field, mpz_class value) {
    return FieldElement(&field, std::move(value));
  }

 private:
  friend class PrimeField;
  FieldElement(const PrimeField* field, mpz_class value) : field_(field), value_(std::move(value)) {}

  void check_compatible(const FieldElement& rhs) const;

  const PrimeField* field_ = nullptr;
  mpz_class value_;
};

/// Big-endian fixed-width encoding of a non-negative integer; throws
/// InvalidEncoding if it does not fit.
Bytes encode_fixed(const mpz_class& v, std::size_t width);
mpz_class decode_unsigned(ByteView bytes);

}  // namespace zkpol
