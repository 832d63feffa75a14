#include "zkpol/profile.hpp"

#include "zkpol/error.hpp"

namespace zkpol {

namespace {

constexpr const char* kOracleP = "9223372036854774451";
constexpr const char* kOracleR = "2305843009213693613";
constexpr const char* kRealisticP =
    "86844066927987146567678240194633542023560960008863505693787861447200045222743";
constexpr const char* kRealisticR = "1461501637330902918203684832716283019655932542929";

constexpr std::size_t kOracleRounds = 4;
constexpr std::size_t kRealisticRounds = 91;

}  // namespace

Profile::Profile(std::string name, ProfileKind kind, std::shared_ptr<const PairingEngine> engine,
                 std::size_t hash_rounds)
    : name_(std::move(name)),
      kind_(kind),
      engine_(std::move(engine)),
      hash_(AlgebraicHashParams::derive(engine_->scalar_field(), hash_rounds)) {}

std::shared_ptr<const Profile> Profile::oracle() {
  static const auto instance = std::make_shared<const Profile>(
      "oracle", ProfileKind::Oracle,
      PairingEngine::create(mpz_class(kOracleP), mpz_class(kOracleR)), kOracleRounds);
  return instance;
}

std::shared_ptr<const Profile> Profile::realistic() {
  static const auto instance = std::make_shared<const Profile>(
      "realistic", ProfileKind::Realistic,
      PairingEngine::create(mpz_class(kRealisticP), mpz_class(kRealisticR)), kRealisticRounds);
  return instance;
}

std::shared_ptr<const Profile> Profile::by_name(std::string_view name) {
  if (name == "oracle") return oracle();
  if (name == "realistic") return realistic();
  throw Error(ErrorCode::InvalidParameters, "unknown profile '" + std::string(name) + "'");
}

std::shared_ptr<const Profile> Profile::custom(std::string name, const mpz_class& p,
                                               const mpz_class& order, std::size_t hash_rounds) {
  return std::make_shared<const Profile>(std::move(name), ProfileKind::Custom,
                                         PairingEngine::create(p, order), hash_rounds);
}

}  // namespace zkpol
