#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zkpol/bytes.hpp"
#include "zkpol/field.hpp"
#include "zkpol/random.hpp"

namespace zkpol {

/// A certificate digest, stored as its canonical field encoding.
struct DigestEntry {
  Bytes dig;

  bool operator==(const DigestEntry&) const = default;
};

/// Consumed-service record (server pk, service index, hr).
struct ServiceRecord {
  Bytes server_pk;
  std::uint64_t ind = 0;
  Bytes hr;

  bool operator==(const ServiceRecord&) const = default;
};

using LedgerEntry = std::variant<DigestEntry, ServiceRecord>;

DigestEntry make_digest_entry(const FieldElement& dig);
ServiceRecord make_service_record(ByteView server_pk, std::uint64_t ind, const FieldElement& hr);

struct Block {
  std::uint64_t index = 0;
  Digest32 prev{};
  std::uint64_t timestamp = 0;
  std::uint64_t nonce = 0;
  std::string miner;
  std::vector<LedgerEntry> entries;
  Digest32 hash{};

  /// Everything except `hash`:
  /// index u64 | prev | timestamp u64 | nonce u64 | miner (u16 len) | u32 count | entries,
  /// each entry tagged 0x01 (digest: u16 len, bytes) or
  /// 0x02 (record: u16 len pk, u64 ind, u16 len hr).
  Bytes serialize() const;
  Digest32 compute_hash() const;
  static Block deserialize(ByteView bytes);
};

bool meets_difficulty(const Digest32& hash, unsigned difficulty_bits);

/// Nonce search starting from a random 64-bit value; fills in nonce and hash.
void mine_nonce(Block& block, unsigned difficulty_bits, Rng& rng);

struct ChainViolation {
  std::size_t index;
  std::string reason;
};

/// Single-writer chain with a pending pool. Only mined entries count as
/// being in the ledger.
class Ledger {
 public:
  static constexpr unsigned kDefaultDifficulty = 12;

  explicit Ledger(unsigned difficulty_bits = kDefaultDifficulty);

  unsigned difficulty() const noexcept { return difficulty_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const std::vector<LedgerEntry>& pending() const noexcept { return pending_; }

  /// Throws DuplicateRecord when a service record is already mined or pending.
  void submit_entry(LedgerEntry entry);

  /// Packs the whole pending pool into a new block. The first block mined is
  /// the genesis block (prev = 32 zero bytes). Throws NothingToMine.
  const Block& mine_block(std::string_view miner, std::uint64_t now, Rng& rng);

  bool contains_record(ByteView server_pk, std::uint64_t ind, const FieldElement& hr) const;
  bool contains_record(const ServiceRecord& record) const;
  bool contains_digest(const FieldElement& dig) const;

  /// Re-checks hash, difficulty, index and linkage of every block.
  std::optional<ChainViolation> validate_chain() const;

  /// Concatenated persisted form of every block (see save()).
  Bytes serialize_chain() const;

  /// Append-only file: per block, u32 length | serialization | 32-byte hash.
  /// Blocks already in the file are left untouched.
  void save(const std::filesystem::path& path) const;
  /// Throws Io / InvalidEncoding.
  static Ledger load(const std::filesystem::path& path, unsigned difficulty_bits = kDefaultDifficulty);
  static std::vector<Block> parse_chain(ByteView bytes);

  /// Direct access for tamper tests.
  std::vector<Block>& mutable_blocks_for_testing() noexcept { return blocks_; }

 private:
  bool record_known(const ServiceRecord& record) const;

  unsigned difficulty_;
  std::vector<Block> blocks_;
  std::vector<LedgerEntry> pending_;
};

}  // namespace zkpol
