#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "zkpol/hash.hpp"
#include "zkpol/pairing.hpp"

namespace zkpol {

enum class ProfileKind { Oracle, Realistic, Custom };

/// A curve parameter set together with the in-circuit hash over its scalar field.
///
/// oracle:    p = 9223372036854774451 (63 bits), r = (p + 1) / 4 (61 bits), 4 hash rounds.
///            Small enough that every pairing identity can be re-derived by
///            exponent arithmetic in tests.
/// realistic: p of 256 bits, r = 2^160 - 47, 91 hash rounds. Used for timing.
class Profile {
 public:
  static std::shared_ptr<const Profile> oracle();
  static std::shared_ptr<const Profile> realistic();
  /// Throws InvalidParameters for names other than "oracle" / "realistic".
  static std::shared_ptr<const Profile> by_name(std::string_view name);
  static std::shared_ptr<const Profile> custom(std::string name, const mpz_class& p,
                                               const mpz_class& order, std::size_t hash_rounds);

  const std::string& name() const noexcept { return name_; }
  ProfileKind kind() const noexcept { return kind_; }
  const PairingEngine& engine() const noexcept { return *engine_; }
  const Curve& curve() const noexcept { return engine_->curve(); }
  const PrimeField& scalar_field() const noexcept { return engine_->scalar_field(); }
  const AlgebraicHashParams& hash() const noexcept { return hash_; }

  Profile(std::string name, ProfileKind kind, std::shared_ptr<const PairingEngine> engine,
          std::size_t hash_rounds);

 private:
  std::string name_;
  ProfileKind kind_;
  std::shared_ptr<const PairingEngine> engine_;
  AlgebraicHashParams hash_;
};

}  // namespace zkpol
