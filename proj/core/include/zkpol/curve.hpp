#pragma once

#include <memory>
#include <span>
#include <string_view>

#include <gmpxx.h>

#include "zkpol/bytes.hpp"
#include "zkpol/field.hpp"

namespace zkpol {

class Curve;

/// Affine point on a Curve, or the point at infinity.
class GroupElement {
 public:
  GroupElement() = default;

  const Curve& curve() const;
  bool is_bound() const noexcept { return curve_ != nullptr; }
  bool is_identity() const noexcept { return infinity_; }
  const mpz_class& x() const noexcept { return x_; }
  const mpz_class& y() const noexcept { return y_; }

  GroupElement operator+(const GroupElement& rhs) const;
  GroupElement operator-(const GroupElement& rhs) const;
  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& rhs) { return *this = *this + rhs; }

  bool operator==(const GroupElement& rhs) const noexcept {
    if (infinity_ || rhs.infinity_) return infinity_ == rhs.infinity_;
    return x_ == rhs.x_ && y_ == rhs.y_;
  }
  bool operator!=(const GroupElement& rhs) const noexcept { return !(*this == rhs); }

  /// Tag byte (0x00 identity, 0x04 affine) followed by x || y, fixed width.
  Bytes encode() const;

 private:
  friend class Curve;
  GroupElement(const Curve* curve, mpz_class x, mpz_class y, bool infinity)
      : curve_(curve), x_(std::move(x)), y_(std::move(y)), infinity_(infinity) {}

  const Curve* curve_ = nullptr;
  mpz_class x_;
  mpz_class y_;
  bool infinity_ = true;
};

/// y^2 = x^3 + x over F_p with p = 3 (mod 4). The curve is supersingular with
/// p + 1 points; we work in the subgroup of prime order r | p + 1.
class Curve {
 public:
  Curve(mpz_class p, mpz_class order);

  Curve(const Curve&) = delete;
  Curve& operator=(const Curve&) = delete;

  const PrimeField& base_field() const noexcept { return base_field_; }
  const mpz_class& p() const noexcept { return base_field_.modulus(); }
  const mpz_class& order() const noexcept { return order_; }
  const mpz_class& cofactor() const noexcept { return cofactor_; }
  std::size_t coordinate_bytes() const noexcept { return base_field_.byte_width(); }
  std::size_t point_bytes() const noexcept { return 1 + 2 * coordinate_bytes(); }

  GroupElement identity() const { return GroupElement(this, 0, 0, true); }
  /// Throws InvalidEncoding when (x, y) is not on the curve.
  GroupElement point(mpz_class x, mpz_class y) const;
  bool is_on_curve(const mpz_class& x, const mpz_class& y) const;
  bool in_subgroup(const GroupElement& a) const;

  /// Deterministic try-and-increment map from a tag to a non-identity
  /// element of the order-r subgroup.
  GroupElement hash_to_subgroup(std::string_view tag) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  /// k-fold sum; k may be any integer (reduced modulo nothing: callers pass
  /// scalars already in [0, r) or deliberately larger values).
  GroupElement mul(const GroupElement& base, const mpz_class& k) const;
  /// sum_i scalars[i] * bases[i], bucket method.
  GroupElement multi_exp(std::span<const GroupElement> bases,
                         std::span<const mpz_class> scalars) const;

  Bytes encode(const GroupElement& a) const;
  /// Checks tag, width and curve equation; subgroup membership is separate.
  GroupElement decode(ByteView bytes) const;

 private:
  PrimeField base_field_;
  mpz_class order_;
  mpz_class cofactor_;
};

}  // namespace zkpol
