#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zkpol/ledger.hpp"
#include "zkpol/protocol.hpp"

namespace zkpol {

/// Line-oriented scenario text. Blank lines and `#` comments are ignored.
///
///   AP <name> <lon> <lat> <range_m>     coordinates in micro-degrees
///   USER <name>
///   SERVER <name>
///   <time> REQUEST_CERT <user> <ap> <lon> <lat> EXPECT <outcome>
///   <time> MINE <ap> [EXPECT <outcome>]
///   <time> REQUEST_SERVICE <user> <server> <level> <ind> EXPECT <outcome>
///   <time> TAMPER <kind> [arg]          applies to the next event
///
/// Tamper kinds: request_byte <offset>, spoof_pk <user>, response_sig,
/// misdirect_response <user>, proof_element <0..7>, forge_certificate.
/// Success outcomes are `issued`, `mined` and `granted`; failures use error
/// code names such as OutOfRange or AlreadyServed.
struct ScenarioAp {
  std::string name;
  GeoCoordinate position;
  double range_m;
};

enum class EventKind { RequestCert, Mine, RequestService, Tamper };

struct ScenarioEvent {
  std::size_t line = 0;
  std::uint64_t time = 0;
  EventKind kind = EventKind::Mine;
  std::vector<std::string> args;
  std::string expect;
};

struct Scenario {
  std::vector<ScenarioAp> aps;
  std::vector<std::string> users;
  std::vector<std::string> servers;
  std::vector<ScenarioEvent> events;

  /// Throws ParseError naming the offending line.
  static Scenario parse(std::string_view text);
};

struct ScenarioLogLine {
  std::size_t line;
  std::uint64_t time;
  std::string event;
  std::string args;
  std::string outcome;
  std::string expected;
  std::string detail;

  bool matched() const { return outcome == expected; }
};

struct ScenarioResult {
  std::vector<ScenarioLogLine> log;

  bool all_matched() const;
  /// Tab-separated, one header line then one line per non-tamper event.
  std::string to_tsv() const;
};

/// Runs every event against `ledger`. Actor keys and all protocol randomness
/// derive from `seed`, so a fixed (scenario, seed, profile) replays exactly.
ScenarioResult run_scenario(const Scenario& scenario, const ProtocolContext& ctx,
                            const CrsBundle& crs, Ledger& ledger, std::uint64_t seed);

/// Levels referenced by REQUEST_SERVICE events, ascending.
std::vector<PrivacyLevel> levels_used(const Scenario& scenario);

}  // namespace zkpol
