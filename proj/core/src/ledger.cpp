#include "zkpol/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "zkpol/error.hpp"
#include "zkpol/hash.hpp"

namespace zkpol {

namespace {

constexpr std::uint8_t kDigestTag = 0x01;
constexpr std::uint8_t kRecordTag = 0x02;

void append_prefixed(Bytes& out, ByteView data) {
  if (data.size() > 0xffff) throw Error(ErrorCode::InvalidParameters, "ledger field too long");
  append_u16(out, static_cast<std::uint16_t>(data.size()));
  append(out, data);
}

void append_record(Bytes& out, const Block& block) {
  const Bytes body = block.serialize();
  append_u32(out, static_cast<std::uint32_t>(body.size()));
  append(out, body);
  append(out, block.hash);
}

}  // namespace

DigestEntry make_digest_entry(const FieldElement& dig) { return {dig.encode()}; }

ServiceRecord make_service_record(ByteView server_pk, std::uint64_t ind, const FieldElement& hr) {
  return {Bytes(server_pk.begin(), server_pk.end()), ind, hr.encode()};
}

Bytes Block::serialize() const {
  Bytes out;
  append_u64(out, index);
  append(out, prev);
  append_u64(out, timestamp);
  append_u64(out, nonce);
  append_prefixed(out, as_bytes(miner));
  append_u32(out, static_cast<std::uint32_t>(entries.size()));
  for (const auto& entry : entries) {
    if (const auto* d = std::get_if<DigestEntry>(&entry)) {
      append_u8(out, kDigestTag);
      append_prefixed(out, d->dig);
    } else {
      const auto& r = std::get<ServiceRecord>(entry);
      append_u8(out, kRecordTag);
      append_prefixed(out, r.server_pk);
      append_u64(out, r.ind);
      append_prefixed(out, r.hr);
    }
  }
  return out;
}

Digest32 Block::compute_hash() const { return hash_bytes(serialize()); }

Block Block::deserialize(ByteView bytes) {
  ByteReader in(bytes);
  Block b;
  b.index = in.u64();
  const ByteView prev = in.take(32);
  std::copy(prev.begin(), prev.end(), b.prev.begin());
  b.timestamp = in.u64();
  b.nonce = in.u64();
  const Bytes miner = in.take_length_prefixed();
  b.miner.assign(miner.begin(), miner.end());
  const std::uint32_t count = in.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint8_t tag = in.u8();
    if (tag == kDigestTag) {
      b.entries.emplace_back(DigestEntry{in.take_length_prefixed()});
    } else if (tag == kRecordTag) {
      ServiceRecord r;
      r.server_pk = in.take_length_prefixed();
      r.ind = in.u64();
      r.hr = in.take_length_prefixed();
      b.entries.emplace_back(std::move(r));
    } else {
      throw Error(ErrorCode::InvalidEncoding, "unknown ledger entry tag");
    }
  }
  in.expect_end();
  b.hash = b.compute_hash();
  return b;
}

bool meets_difficulty(const Digest32& hash, unsigned difficulty_bits) {
  unsigned zeros = 0;
  for (std::uint8_t byte : hash) {
    if (byte == 0) {
      zeros += 8;
      if (zeros >= difficulty_bits) return true;
      continue;
    }
    for (int bit = 7; bit >= 0 && !(byte >> bit & 1); --bit) ++zeros;
    break;
  }
  return zeros >= difficulty_bits;
}

void mine_nonce(Block& block, unsigned difficulty_bits, Rng& rng) {
  block.nonce = rng.next_u64();
  // The nonce sits at a fixed offset, so patch it in place instead of
  // re-serializing every attempt.
  Bytes body = block.serialize();
  constexpr std::size_t kNonceOffset = 8 + 32 + 8;
  for (;;) {
    for (int i = 0; i < 8; ++i) body[kNonceOffset + i] = static_cast<std::uint8_t>(block.nonce >> (56 - 8 * i));
    const Digest32 h = hash_bytes(body);
    if (meets_difficulty(h, difficulty_bits)) {
      block.hash = h;
      return;
    }
    ++block.nonce;
  }
}

Ledger::Ledger(unsigned difficulty_bits) : difficulty_(difficulty_bits) {
  if (difficulty_bits > 64) throw Error(ErrorCode::InvalidParameters, "difficulty above 64 bits");
}

bool Ledger::record_known(const ServiceRecord& record) const {
  if (contains_record(record)) return true;
  return std::any_of(pending_.begin(), pending_.end(), [&](const LedgerEntry& e) {
    const auto* r = std::get_if<ServiceRecord>(&e);
    return r != nullptr && *r == record;
  });
}

void Ledger::submit_entry(LedgerEntry entry) {
  if (const auto* r = std::get_if<ServiceRecord>(&entry); r != nullptr && record_known(*r)) {
    throw Error(ErrorCode::DuplicateRecord, "service record already submitted");
  }
  pending_.push_back(std::move(entry));
}

const Block& Ledger::mine_block(std::string_view miner, std::uint64_t now, Rng& rng) {
  if (pending_.empty()) throw Error(ErrorCode::NothingToMine, "pending pool is empty");
  Block b;
  b.index = blocks_.size();
  if (!blocks_.empty()) b.prev = blocks_.back().hash;
  b.timestamp = now;
  b.miner = std::string(miner);
  b.entries = std::move(pending_);
  pending_.clear();
  mine_nonce(b, difficulty_, rng);
  blocks_.push_back(std::move(b));
  return blocks_.back();
}

bool Ledger::contains_record(const ServiceRecord& record) const {
  for (const Block& b : blocks_) {
    for (const auto& e : b.entries) {
      const auto* r = std::get_if<ServiceRecord>(&e);
      if (r != nullptr && *r == record) return true;
    }
  }
  return false;
}

bool Ledger::contains_record(ByteView server_pk, std::uint64_t ind, const FieldElement& hr) const {
  return contains_record(make_service_record(server_pk, ind, hr));
}

bool Ledger::contains_digest(const FieldElement& dig) const {
  const DigestEntry wanted = make_digest_entry(dig);
  for (const Block& b : blocks_) {
    for (const auto& e : b.entries) {
      const auto* d = std::get_if<DigestEntry>(&e);
      if (d != nullptr && *d == wanted) return true;
    }
  }
  return false;
}

std::optional<ChainViolation> Ledger::validate_chain() const {
  Digest32 expected_prev{};
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    if (b.index != i) return ChainViolation{i, "index out of sequence"};
    if (b.prev != expected_prev) return ChainViolation{i, "previous-hash link broken"};
    if (b.compute_hash() != b.hash) return ChainViolation{i, "block hash does not match contents"};
    if (!meets_difficulty(b.hash, difficulty_)) return ChainViolation{i, "hash misses difficulty"};
    expected_prev = b.hash;
  }
  return std::nullopt;
}

Bytes Ledger::serialize_chain() const {
  Bytes out;
  for (const Block& b : blocks_) append_record(out, b);
  return out;
}

std::vector<Block> Ledger::parse_chain(ByteView bytes) {
  ByteReader in(bytes);
  std::vector<Block> out;
  while (in.remaining() > 0) {
    const std::uint32_t len = in.u32();
    Block b = Block::deserialize(in.take(len));
    // Keep the stored hash so validate_chain can compare it with the contents.
    const ByteView stored = in.take(32);
    std::copy(stored.begin(), stored.end(), b.hash.begin());
    out.push_back(std::move(b));
  }
  return out;
}

void Ledger::save(const std::filesystem::path& path) const {
  std::size_t existing = 0;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    const Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    existing = parse_chain(bytes).size();
    if (existing > blocks_.size()) throw Error(ErrorCode::Io, "ledger file is ahead of memory");
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  Bytes tail;
  for (std::size_t i = existing; i < blocks_.size(); ++i) append_record(tail, blocks_[i]);
  out.write(reinterpret_cast<const char*>(tail.data()), static_cast<std::streamsize>(tail.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Ledger Ledger::load(const std::filesystem::path& path, unsigned difficulty_bits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Ledger ledger(difficulty_bits);
  ledger.blocks_ = parse_chain(bytes);
  return ledger;
}

}  // namespace zkpol
