#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zkpol/bench.hpp"
#include "zkpol/error.hpp"
#include "zkpol/ledger.hpp"
#include "zkpol/protocol.hpp"
#include "zkpol/scenario.hpp"
#include "zkpol/snark.hpp"

namespace fs = std::filesystem;
using namespace zkpol;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

void write_text(const fs::path& path, const std::string& text) { write_file(path, as_bytes(text)); }

fs::path key_path(const fs::path& dir, PrivacyLevel level, const char* ext) {
  return dir / ("level" + std::to_string(to_int(level)) + ext);
}

std::shared_ptr<const Profile> resolve_profile(const std::string& flag) {
  if (!flag.empty()) return Profile::by_name(flag);
  if (const char* env = std::getenv("ZKPOL_PROFILE"); env != nullptr && *env != '\0') {
    return Profile::by_name(env);
  }
  return Profile::oracle();
}

std::vector<PrivacyLevel> to_levels(const std::vector<int>& raw) {
  std::vector<PrivacyLevel> out;
  for (int l : raw) out.push_back(privacy_level_from_int(l));
  return out;
}

std::shared_ptr<const LevelCrs> load_crs(const Profile& profile, PrivacyLevel level,
                                         const fs::path& dir) {
  const auto& curve = profile.curve();
  ProvingKey pk = deserialize_proving_key(read_file(key_path(dir, level, ".pk")), curve);
  VerificationKey vk = deserialize_verification_key(read_file(key_path(dir, level, ".vk")), curve);
  return std::make_shared<const LevelCrs>(LevelCrs::from_keys(profile, level, std::move(pk), std::move(vk)));
}

struct Common {
  std::string profile;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--profile", c.profile, "oracle or realistic (default: $ZKPOL_PROFILE, else oracle)");
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-knowledge proof-of-location simulator"};
  app.require_subcommand(1);

  Common common;

  std::string keygen_out = ".";
  std::string keygen_name;
  auto* keygen = app.add_subcommand("keygen", "generate an identity keypair");
  add_common(keygen, common);
  keygen->add_option("--out", keygen_out, "output directory")->capture_default_str();
  keygen->add_option("--name", keygen_name, "file stem for <name>.key and <name>.pub")->required();

  std::string setup_out = "crs";
  std::vector<int> setup_levels{1, 2, 3, 4};
  auto* setup_cmd = app.add_subcommand("setup", "trusted setup: write level{L}.pk / level{L}.vk");
  add_common(setup_cmd, common);
  setup_cmd->add_option("--out", setup_out, "output directory")->capture_default_str();
  setup_cmd->add_option("--levels", setup_levels, "privacy levels")->delimiter(',')->capture_default_str();

  std::string scenario_file, crs_dir, ledger_file, log_file;
  unsigned difficulty = Ledger::kDefaultDifficulty;
  auto* run = app.add_subcommand("run", "execute a scenario and compare outcomes");
  add_common(run, common);
  run->add_option("scenario", scenario_file, "scenario file")->required();
  run->add_option("--crs", crs_dir, "directory with level{L}.pk/.vk (default: set up in memory)");
  run->add_option("--difficulty", difficulty, "proof-of-work leading zero bits")->capture_default_str();
  run->add_option("--ledger", ledger_file, "append mined blocks to this chain file");
  run->add_option("--log", log_file, "also write the tab-separated log here");

  std::vector<int> bench_levels{1, 2, 3, 4};
  std::size_t reps = 3;
  std::string tsv_file;
  auto* bench = app.add_subcommand("bench", "per-phase timing report");
  add_common(bench, common);
  bench->add_option("--levels", bench_levels, "privacy levels")->delimiter(',')->capture_default_str();
  bench->add_option("--reps", reps, "repetitions per level")->capture_default_str();
  bench->add_option("--tsv", tsv_file, "write a tab-separated dump too");

  std::string chain_file;
  auto* ledger_cmd = app.add_subcommand("ledger", "inspect a chain file");
  ledger_cmd->require_subcommand(1);
  auto* dump = ledger_cmd->add_subcommand("dump", "print block summaries");
  dump->add_option("file", chain_file, "chain file")->required();
  dump->add_option("--difficulty", difficulty, "difficulty to validate against")->capture_default_str();

  int export_level = 1;
  auto* export_cmd = app.add_subcommand("export-circuit", "print a level's constraint system");
  add_common(export_cmd, common);
  export_cmd->add_option("--level", export_level, "privacy level")->capture_default_str();

  std::string hex_file;
  auto* hexdump = app.add_subcommand("hexdump", "readable dump of a key or proof file");
  add_common(hexdump, common);
  hexdump->add_option("file", hex_file, "file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen) {
      const auto profile = resolve_profile(common.profile);
      const IdentityScheme id(profile->engine());
      Rng rng(common.seed);
      const KeyPair keys = id.keygen(rng);
      fs::create_directories(keygen_out);
      write_file(fs::path(keygen_out) / (keygen_name + ".key"), id.export_secret_key(keys));
      write_file(fs::path(keygen_out) / (keygen_name + ".pub"), id.export_public_key(keys.pk));
      std::cout << keygen_name << ".pub " << to_hex(profile->curve().encode(keys.pk)) << '\n';
      return 0;
    }

    if (*setup_cmd) {
      const auto profile = resolve_profile(common.profile);
      fs::create_directories(setup_out);
      Rng rng(common.seed);
      for (PrivacyLevel level : to_levels(setup_levels)) {
        Rng level_rng = rng.fork(static_cast<std::uint64_t>(to_int(level)));
        const LevelCrs crs = LevelCrs::generate(*profile, level, level_rng);
        write_file(key_path(setup_out, level, ".pk"), serialize(crs.proving, profile->curve()));
        write_file(key_path(setup_out, level, ".vk"), serialize(crs.verification, profile->curve()));
        std::cout << "level " << to_int(level) << ": d=" << crs.qap.num_constraints()
                  << " n=" << crs.qap.num_variables() - 1 << " m=" << crs.qap.num_public()
                  << " circuit " << to_hex(crs.qap.circuit_id()) << '\n';
      }
      return 0;
    }

    if (*run) {
      const auto profile = resolve_profile(common.profile);
      const Bytes text = read_file(scenario_file);
      const Scenario scenario = Scenario::parse(std::string(text.begin(), text.end()));
      CrsBundle crs;
      Rng setup_rng(common.seed);
      for (PrivacyLevel level : levels_used(scenario)) {
        if (!crs_dir.empty()) {
          crs.set(load_crs(*profile, level, crs_dir));
        } else {
          Rng level_rng = setup_rng.fork(static_cast<std::uint64_t>(to_int(level)));
          crs.set(std::make_shared<const LevelCrs>(LevelCrs::generate(*profile, level, level_rng)));
        }
      }
      const ProtocolContext ctx(profile);
      Ledger ledger = ledger_file.empty() || !fs::exists(ledger_file)
                          ? Ledger(difficulty)
                          : Ledger::load(ledger_file, difficulty);
      const ScenarioResult result = run_scenario(scenario, ctx, crs, ledger, common.seed);
      const std::string tsv = result.to_tsv();
      std::cout << tsv;
      if (!log_file.empty()) write_text(log_file, tsv);
      if (!ledger_file.empty()) ledger.save(ledger_file);
      return result.all_matched() ? 0 : kExitMismatch;
    }

    if (*bench) {
      const auto profile = resolve_profile(common.profile);
      std::vector<PhaseReport> reports;
      for (PrivacyLevel level : to_levels(bench_levels)) {
        reports.push_back(run_phase_benchmark(*profile, level, reps, common.seed));
      }
      std::cout << "profile " << profile->name() << ", " << reps << " repetition(s)\n"
                << format_phase_table(reports);
      if (!tsv_file.empty()) write_text(tsv_file, format_phase_tsv(reports));
      return 0;
    }

    if (*dump) {
      Ledger ledger = Ledger::load(chain_file, difficulty);
      for (const Block& b : ledger.blocks()) {
        std::size_t digests = 0;
        for (const auto& e : b.entries) digests += std::holds_alternative<DigestEntry>(e) ? 1 : 0;
        std::cout << "block " << b.index << " time " << b.timestamp << " miner " << b.miner
                  << " nonce " << b.nonce << " digests " << digests << " records "
                  << b.entries.size() - digests << "\n  prev " << to_hex(b.prev) << "\n  hash "
                  << to_hex(b.hash) << '\n';
      }
      if (const auto violation = ledger.validate_chain()) {
        std::cout << "INVALID at block " << violation->index << ": " << violation->reason << '\n';
        return kExitMismatch;
      }
      std::cout << ledger.blocks().size() << " block(s), chain valid\n";
      return 0;
    }

    if (*export_cmd) {
      const auto profile = resolve_profile(common.profile);
      const ZkpolCircuit c = LevelCrs::build_circuit(*profile, privacy_level_from_int(export_level));
      std::cout << c.circuit.export_text();
      return 0;
    }

    if (*hexdump) {
      const auto profile = resolve_profile(common.profile);
      std::cout << hex_dump(read_file(hex_file), profile->curve());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "zkpol: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
