#pragma once

#include <memory>
#include <span>
#include <string>

#include <gmpxx.h>

#include "zkpol/curve.hpp"
#include "zkpol/field.hpp"

namespace zkpol {

/// Element of F_{p^2} = F_p[i] / (i^2 + 1); pairing values live in its
/// order-r subgroup.
class GtElement {
 public:
  GtElement() = default;
  GtElement(const Curve* curve, mpz_class re, mpz_class im)
      : curve_(curve), re_(std::move(re)), im_(std::move(im)) {}

  const mpz_class& re() const noexcept { return re_; }
  const mpz_class& im() const noexcept { return im_; }
  bool is_one() const noexcept { return re_ == 1 && im_ == 0; }

  GtElement operator*(const GtElement& rhs) const;
  GtElement& operator*=(const GtElement& rhs) { return *this = *this * rhs; }
  GtElement square() const;
  GtElement conjugate() const;
  GtElement inverse() const;
  GtElement pow(const mpz_class& exponent) const;

  bool operator==(const GtElement& rhs) const noexcept { return re_ == rhs.re_ && im_ == rhs.im_; }
  bool operator!=(const GtElement& rhs) const noexcept { return !(*this == rhs); }

  Bytes encode() const;

 private:
  const mpz_class& p() const;

  const Curve* curve_ = nullptr;
  mpz_class re_{1};
  mpz_class im_{0};
};

/// Symmetric pairing e(P, Q) = TatePairing(P, psi(Q)) on the supersingular
/// curve, where psi(x, y) = (-x, i*y) is the distortion map. Built once per
/// parameter set and shared; elements hold raw pointers into it.
class PairingEngine {
 public:
  static std::shared_ptr<const PairingEngine> create(const mpz_class& p, const mpz_class& order);

  PairingEngine(const PairingEngine&) = delete;
  PairingEngine& operator=(const PairingEngine&) = delete;

  const Curve& curve() const noexcept { return curve_; }
  const PrimeField& scalar_field() const noexcept { return scalar_field_; }
  const mpz_class& order() const noexcept { return curve_.order(); }
  const GroupElement& generator() const noexcept { return generator_; }

  GroupElement group_exp(const GroupElement& base, const FieldElement& k) const;
  GroupElement group_exp(const FieldElement& k) const { return group_exp(generator_, k); }
  GroupElement multi_exp(std::span<const GroupElement> bases,
                         std::span<const FieldElement> scalars) const;

  GtElement pairing(const GroupElement& a, const GroupElement& b) const;
  GtElement gt_one() const { return GtElement(&curve_, 1, 0); }

 private:
  PairingEngine(const mpz_class& p, const mpz_class& order);

  GtElement miller_loop(const GroupElement& a, const GroupElement& b) const;
  GtElement final_exponentiation(const GtElement& f) const;

  Curve curve_;
  PrimeField scalar_field_;
  GroupElement generator_;
  mpz_class final_exponent_;  // (p + 1) / r
};

}  // namespace zkpol
