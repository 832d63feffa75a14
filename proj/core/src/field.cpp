#include "zkpol/field.hpp"

#include "zkpol/error.hpp"
#include "zkpol/random.hpp"

namespace zkpol {

Bytes encode_fixed(const mpz_class& v, std::size_t width) {
  if (v < 0) throw Error(ErrorCode::InvalidEncoding, "negative integer");
  std::size_t needed = (v == 0) ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (needed > width) throw Error(ErrorCode::InvalidEncoding, "integer wider than field");
  Bytes out(width, 0);
  if (needed > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (width - needed), &written, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

mpz_class decode_unsigned(ByteView bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

PrimeField::PrimeField(mpz_class modulus) : modulus_(std::move(modulus)) {
  // 40 Miller-Rabin rounds: error < 4^-40 = 2^-80.
  if (modulus_ < 2 || mpz_probab_prime_p(modulus_.get_mpz_t(), 40) == 0) {
    throw Error(ErrorCode::InvalidParameters, "field modulus is not prime: " + modulus_.get_str());
  }
  bits_ = mpz_sizeinbase(modulus_.get_mpz_t(), 2);
}

FieldElement PrimeField::zero() const { return FieldElement(this, 0); }
FieldElement PrimeField::one() const { return FieldElement(this, 1); }

FieldElement PrimeField::from_u64(std::uint64_t v) const {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return reduce(z);
}

FieldElement PrimeField::from_i64(std::int64_t v) const {
  if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
  // Avoid overflow on INT64_MIN.
  std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return -from_u64(mag);
}

FieldElement PrimeField::reduce(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
  return FieldElement(this, std::move(r));
}

FieldElement PrimeField::random(Rng& rng) const {
  return FieldElement(this, rng.uniform_below(modulus_));
}

FieldElement PrimeField::random_nonzero(Rng& rng) const {
  for (;;) {
    FieldElement e = random(rng);
    if (!e.is_zero()) return e;
  }
}

FieldElement PrimeField::decode(ByteView bytes) const {
  if (bytes.size() != byte_width()) throw Error(ErrorCode::InvalidEncoding, "field element width");
  mpz_class v = decode_unsigned(bytes);
  if (v >= modulus_) throw Error(ErrorCode::InvalidEncoding, "field element not canonical");
  return FieldElement(this, std::move(v));
}

const PrimeField& FieldElement::field() const {
  if (field_ == nullptr) throw Error(ErrorCode::InvalidParameters, "unbound field element");
  return *field_;
}

void FieldElement::check_compatible(const FieldElement& rhs) const {
  if (field_ == nullptr || rhs.field_ == nullptr || !field_->same_as(*rhs.field_)) {
    throw Error(ErrorCode::InvalidParameters, "field mismatch");
  }
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  check_compatible(rhs);
  mpz_class r = value_ + rhs.value_;
  if (r >= field_->modulus()) r -= field_->modulus();
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  check_compatible(rhs);
  mpz_class r = value_ - rhs.value_;
  if (r < 0) r += field_->modulus();
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  check_compatible(rhs);
  mpz_class r = value_ * rhs.value_;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), field_->modulus().get_mpz_t());
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
  return *this * rhs.inverse();
}

FieldElement FieldElement::operator-() const {
  if (value_ == 0) return *this;
  return FieldElement(field_, field().modulus() - value_);
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) { return *this = *this + rhs; }
FieldElement& FieldElement::operator-=(const FieldElement& rhs) { return *this = *this - rhs; }
FieldElement& FieldElement::operator*=(const FieldElement& rhs) { return *this = *this * rhs; }

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), field().modulus().get_mpz_t());
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::pow(const mpz_class& exponent) const {
  mpz_class r;
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), exponent.get_mpz_t(), field().modulus().get_mpz_t());
  return FieldElement(field_, std::move(r));
}

Bytes FieldElement::encode() const { return encode_fixed(value_, field().byte_width()); }

}  // namespace zkpol
