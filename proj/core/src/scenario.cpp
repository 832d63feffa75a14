#include "zkpol/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "zkpol/error.hpp"

namespace zkpol {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    parse_error(line, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

double parse_range(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  parse_error(line, "bad range '" + s + "'");
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

Scenario Scenario::parse(std::string_view text) {
  Scenario s;
  std::set<std::string> names;
  auto declare = [&](const std::string& name, std::size_t line) {
    if (!names.insert(name).second) parse_error(line, "actor '" + name + "' declared twice");
  };
  auto is_user = [&](const std::string& n) {
    return std::find(s.users.begin(), s.users.end(), n) != s.users.end();
  };
  auto is_server = [&](const std::string& n) {
    return std::find(s.servers.begin(), s.servers.end(), n) != s.servers.end();
  };
  auto is_ap = [&](const std::string& n) {
    return std::any_of(s.aps.begin(), s.aps.end(), [&](const ScenarioAp& a) { return a.name == n; });
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  std::uint64_t last_time = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto w = split_words(raw);
    if (w.empty()) continue;

    if (w[0] == "AP") {
      if (w.size() != 5) parse_error(line, "expected: AP <name> <lon> <lat> <range_m>");
      declare(w[1], line);
      ScenarioAp ap{w[1],
                    {parse_number<std::int32_t>(w[2], line, "longitude"),
                     parse_number<std::int32_t>(w[3], line, "latitude")},
                    parse_range(w[4], line)};
      if (!ap.position.valid()) parse_error(line, "AP coordinate out of bounds");
      s.aps.push_back(ap);
      continue;
    }
    if (w[0] == "USER" || w[0] == "SERVER") {
      if (w.size() != 2) parse_error(line, "expected: " + w[0] + " <name>");
      declare(w[1], line);
      (w[0] == "USER" ? s.users : s.servers).push_back(w[1]);
      continue;
    }

    ScenarioEvent e;
    e.line = line;
    e.time = parse_number<std::uint64_t>(w[0], line, "time");
    if (e.time < last_time) parse_error(line, "event times must not decrease");
    last_time = e.time;
    if (w.size() < 2) parse_error(line, "missing event name");
    const std::string& name = w[1];
    std::vector<std::string> rest(w.begin() + 2, w.end());
    if (rest.size() >= 2 && rest[rest.size() - 2] == "EXPECT") {
      e.expect = rest.back();
      rest.resize(rest.size() - 2);
    }
    e.args = rest;

    if (name == "REQUEST_CERT") {
      e.kind = EventKind::RequestCert;
      if (rest.size() != 4 || e.expect.empty()) {
        parse_error(line, "expected: <time> REQUEST_CERT <user> <ap> <lon> <lat> EXPECT <outcome>");
      }
      if (!is_user(rest[0])) parse_error(line, "unknown user '" + rest[0] + "'");
      if (!is_ap(rest[1])) parse_error(line, "unknown AP '" + rest[1] + "'");
      parse_number<std::int32_t>(rest[2], line, "longitude");
      parse_number<std::int32_t>(rest[3], line, "latitude");
    } else if (name == "MINE") {
      e.kind = EventKind::Mine;
      if (rest.size() != 1) parse_error(line, "expected: <time> MINE <ap> [EXPECT <outcome>]");
      if (!is_ap(rest[0])) parse_error(line, "unknown AP '" + rest[0] + "'");
      if (e.expect.empty()) e.expect = "mined";
    } else if (name == "REQUEST_SERVICE") {
      e.kind = EventKind::RequestService;
      if (rest.size() != 4 || e.expect.empty()) {
        parse_error(line,
                    "expected: <time> REQUEST_SERVICE <user> <server> <level> <ind> EXPECT <outcome>");
      }
      if (!is_user(rest[0])) parse_error(line, "unknown user '" + rest[0] + "'");
      if (!is_server(rest[1])) parse_error(line, "unknown server '" + rest[1] + "'");
      const int level = parse_number<int>(rest[2], line, "level");
      if (level < 1 || level > 4) parse_error(line, "level must be 1..4");
      parse_number<std::uint64_t>(rest[3], line, "service index");
    } else if (name == "TAMPER") {
      e.kind = EventKind::Tamper;
      if (!e.expect.empty()) parse_error(line, "TAMPER takes no EXPECT");
      if (rest.empty()) parse_error(line, "expected: <time> TAMPER <kind> [arg]");
      const std::string& kind = rest[0];
      if (kind == "request_byte") {
        if (rest.size() != 2) parse_error(line, "request_byte takes an offset");
        parse_number<std::size_t>(rest[1], line, "offset");
      } else if (kind == "spoof_pk" || kind == "misdirect_response") {
        if (rest.size() != 2 || !is_user(rest[1])) parse_error(line, kind + " takes a user name");
      } else if (kind == "proof_element") {
        if (rest.size() != 2) parse_error(line, "proof_element takes an index");
        if (parse_number<std::size_t>(rest[1], line, "element index") >= Proof::kElements) {
          parse_error(line, "proof element index must be 0..7");
        }
      } else if (kind == "response_sig" || kind == "forge_certificate") {
        if (rest.size() != 1) parse_error(line, kind + " takes no argument");
      } else {
        parse_error(line, "unknown tamper kind '" + kind + "'");
      }
    } else {
      parse_error(line, "unknown event '" + name + "'");
    }
    s.events.push_back(std::move(e));
  }
  if (!s.events.empty() && s.events.back().kind == EventKind::Tamper) {
    parse_error(s.events.back().line, "TAMPER must precede an event");
  }
  return s;
}

std::vector<PrivacyLevel> levels_used(const Scenario& scenario) {
  std::set<int> levels;
  for (const auto& e : scenario.events) {
    if (e.kind == EventKind::RequestService) levels.insert(std::stoi(e.args[2]));
  }
  std::vector<PrivacyLevel> out;
  for (int l : levels) out.push_back(privacy_level_from_int(l));
  return out;
}

bool ScenarioResult::all_matched() const {
  return std::all_of(log.begin(), log.end(), [](const ScenarioLogLine& l) { return l.matched(); });
}

std::string ScenarioResult::to_tsv() const {
  std::ostringstream out;
  out << "line\ttime\tevent\targs\toutcome\texpected\tresult\tdetail\n";
  for (const auto& l : log) {
    out << l.line << '\t' << l.time << '\t' << l.event << '\t' << l.args << '\t' << l.outcome
        << '\t' << l.expected << '\t' << (l.matched() ? "ok" : "MISMATCH") << '\t' << l.detail
        << '\n';
  }
  return out.str();
}

namespace {

struct UserState {
  KeyPair keys;
  std::optional<LocationCertificate> certificate;
  GeoCoordinate last_claim;
};

class Runner {
 public:
  Runner(const Scenario& s, const ProtocolContext& ctx, const CrsBundle& crs, Ledger& ledger,
         std::uint64_t seed)
      : s_(s), ctx_(ctx), crs_(crs), ledger_(ledger), rng_(seed) {
    Rng keys = rng_.fork(0);
    for (const auto& a : s.aps) {
      aps_.emplace(a.name, AccessPoint{a.name, ctx.identity.keygen(keys), a.position, a.range_m});
    }
    for (const auto& u : s.users) users_.emplace(u, UserState{ctx.identity.keygen(keys), {}, {}});
    for (const auto& v : s.servers) servers_.emplace(v, Participant{v, ctx.identity.keygen(keys)});
    events_ = rng_.fork(1);
  }

  ScenarioResult run() {
    ScenarioResult result;
    const ScenarioEvent* tamper = nullptr;
    for (const auto& e : s_.events) {
      if (e.kind == EventKind::Tamper) {
        tamper = &e;
        continue;
      }
      ScenarioLogLine log{e.line, e.time, "", join(e.args), "", e.expect, ""};
      if (tamper != nullptr) log.detail = "tamper " + join(tamper->args) + "; ";
      try {
        switch (e.kind) {
          case EventKind::RequestCert: log.event = "REQUEST_CERT"; request_cert(e, tamper, log); break;
          case EventKind::Mine: log.event = "MINE"; mine(e, log); break;
          case EventKind::RequestService: log.event = "REQUEST_SERVICE"; request_service(e, tamper, log); break;
          case EventKind::Tamper: break;
        }
      } catch (const Error& err) {
        log.outcome = std::string(to_string(err.code()));
        log.detail += err.what();
      }
      tamper = nullptr;
      result.log.push_back(std::move(log));
    }
    return result;
  }

 private:
  void request_cert(const ScenarioEvent& e, const ScenarioEvent* tamper, ScenarioLogLine& log) {
    UserState& user = users_.at(e.args[0]);
    const AccessPoint& ap = aps_.at(e.args[1]);
    const GeoCoordinate claim{std::stoi(e.args[2]), std::stoi(e.args[3])};
    const std::string kind = tamper != nullptr ? tamper->args[0] : "";

    Bytes payload;
    if (kind == "spoof_pk") {
      // Claims the victim's identity but can only sign with its own key.
      const KeyPair& victim = users_.at(tamper->args[1]).keys;
      KeyPair forged{user.keys.sk, victim.pk};
      payload = build_certificate_request(ctx_, forged, claim);
    } else {
      payload = build_certificate_request(ctx_, user.keys, claim);
    }
    if (kind == "request_byte") {
      const std::size_t offset = std::stoul(tamper->args[1]) % payload.size();
      payload[offset] ^= 0x01;
    }
    const Bytes sealed = ctx_.identity.seal(ap.keys.pk, payload, events_);

    ResponseTamper response_tamper;
    if (kind == "response_sig") {
      response_tamper = [](Bytes& p, GroupElement&) { p.back() ^= 0x01; };
    } else if (kind == "misdirect_response") {
      const GroupElement other = users_.at(tamper->args[1]).keys.pk;
      response_tamper = [other](Bytes&, GroupElement& to) { to = other; };
    }
    const IssueResult issued = ap_issue(ctx_, ap, sealed, e.time, ledger_, events_, response_tamper);
    log.detail += "dig " + issued.dig.to_string() + "; ";
    user.certificate = user_assemble_certificate(ctx_, user.keys, claim, ap.keys.pk,
                                                 issued.sealed_response);
    user.last_claim = claim;
    log.outcome = "issued";
    log.detail += "distance " + std::to_string(distance_m(ap.position, claim)) + " m";
  }

  void mine(const ScenarioEvent& e, ScenarioLogLine& log) {
    const Block& b = ledger_.mine_block(e.args[0], e.time, events_);
    log.outcome = "mined";
    log.detail += "block " + std::to_string(b.index) + " entries " +
                  std::to_string(b.entries.size()) + " hash " + to_hex(b.hash);
  }

  void request_service(const ScenarioEvent& e, const ScenarioEvent* tamper, ScenarioLogLine& log) {
    UserState& user = users_.at(e.args[0]);
    const Participant& server = servers_.at(e.args[1]);
    const PrivacyLevel level = privacy_level_from_int(std::stol(e.args[2]));
    const std::uint64_t ind = std::stoull(e.args[3]);
    const std::string kind = tamper != nullptr ? tamper->args[0] : "";

    LocationCertificate cert;
    if (kind == "forge_certificate") {
      // A self-made certificate no AP ever issued.
      cert = LocationCertificate{ctx_.identity.curve().encode(user.keys.pk), user.last_claim.longitude,
                                 user.last_claim.latitude, ctx_.profile->scalar_field().random(events_),
                                 e.time};
    } else if (user.certificate) {
      cert = *user.certificate;
    } else {
      throw Error(ErrorCode::MissingInput, e.args[0] + " holds no certificate");
    }

    ServiceRequest request = user_request_service(ctx_, cert, level, ind, crs_);
    if (kind == "proof_element") {
      GroupElement& el = *request.proof.elements()[std::stoul(tamper->args[1])];
      el = el + ctx_.profile->engine().generator();
    }
    // Over the wire and back, as the server would see it.
    const ServiceRequest received = ServiceRequest::deserialize(*ctx_.profile, request.serialize());
    const ServiceGrant grant = server_handle(ctx_, server, received, crs_, ledger_);
    log.outcome = "granted";
    log.detail += "hr " + grant.hr.to_string();
  }

  const Scenario& s_;
  const ProtocolContext& ctx_;
  const CrsBundle& crs_;
  Ledger& ledger_;
  Rng rng_;
  Rng events_{0};
  std::map<std::string, AccessPoint> aps_;
  std::map<std::string, UserState> users_;
  std::map<std::string, Participant> servers_;
};

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, const ProtocolContext& ctx,
                            const CrsBundle& crs, Ledger& ledger, std::uint64_t seed) {
  return Runner(scenario, ctx, crs, ledger, seed).run();
}

}  // namespace zkpol
