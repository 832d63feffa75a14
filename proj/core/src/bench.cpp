#include "zkpol/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "zkpol/error.hpp"
#include "zkpol/identity.hpp"
#include "zkpol/qap.hpp"
#include "zkpol/snark.hpp"

namespace zkpol {

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::ComputationToQap: return "Computation-to-QAP";
    case Phase::Setup: return "Setup";
    case Phase::CalculateWitness: return "Calculate-witness";
    case Phase::GenerateProof: return "Generate-proof";
    case Phase::VerifyProof: return "Verify-proof";
  }
  return "unknown";
}

double PhaseReport::total() const {
  double t = 0;
  for (double s : mean_seconds) t += s;
  return t;
}

double PhaseReport::percent(Phase phase) const {
  const double t = total();
  return t > 0 ? 100.0 * seconds(phase) / t : 0.0;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PhaseReport run_phase_benchmark(const Profile& profile, PrivacyLevel level,
                                std::size_t repetitions, std::uint64_t seed) {
  if (repetitions == 0) throw Error(ErrorCode::InvalidParameters, "need at least one repetition");
  const IdentityScheme identity(profile.engine());
  Rng rng(seed);
  PhaseReport report;
  report.level = level;
  report.repetitions = repetitions;

  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const KeyPair user = identity.keygen(rng);
    const CertificateFields cert{profile.curve().encode(user.pk), 121473700, 31230400,
                                 profile.scalar_field().random(rng),
                                 1700000000 + static_cast<std::uint64_t>(rep)};

    auto t = Clock::now();
    const ZkpolCircuit circuit = build_zkpol_circuit(level, profile.hash(), profile.curve().point_bytes());
    const QapInstance qap = circuit_to_qap(circuit.circuit);
    report.mean_seconds[0] += since(t);

    t = Clock::now();
    const CrsPair crs = setup(qap, profile.engine(), rng);
    report.mean_seconds[1] += since(t);

    t = Clock::now();
    const Witness w = compute_witness(circuit.circuit, circuit.inputs_for(cert));
    report.mean_seconds[2] += since(t);

    t = Clock::now();
    const Proof proof = prove(crs.proving, qap, w, profile.engine());
    report.mean_seconds[3] += since(t);

    const auto inputs = circuit.public_inputs(DisclosedParameters::from_certificate(cert, level),
                                              w[circuit.hr], w[circuit.dig]);
    t = Clock::now();
    const VerifyResult ok = verify(crs.verification, inputs, proof, profile.engine());
    report.mean_seconds[4] += since(t);
    if (!ok) throw Error(ErrorCode::InternalInconsistency, "benchmark proof failed to verify");
  }
  for (double& s : report.mean_seconds) s /= static_cast<double>(repetitions);
  return report;
}

std::string format_phase_table(std::span<const PhaseReport> reports) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-20s", "phase");
  out << buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, " | level %d %10s %7s", to_int(r.level), "mean s", "%");
    out << buf;
  }
  out << '\n';
  for (std::size_t p = 0; p < kPhaseCount; ++p) {
    const auto phase = static_cast<Phase>(p);
    std::snprintf(buf, sizeof buf, "%-20s", std::string(to_string(phase)).c_str());
    out << buf;
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, " | %18.6f %6.1f%%", r.seconds(phase), r.percent(phase));
      out << buf;
    }
    out << '\n';
  }
  std::snprintf(buf, sizeof buf, "%-20s", "total");
  out << buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, " | %18.6f %6.1f%%", r.total(), 100.0);
    out << buf;
  }
  out << '\n';
  return out.str();
}

std::string format_phase_tsv(std::span<const PhaseReport> reports) {
  std::ostringstream out;
  out << "level\tphase\tmean_seconds\tpercent\n";
  for (const auto& r : reports) {
    for (std::size_t p = 0; p < kPhaseCount; ++p) {
      const auto phase = static_cast<Phase>(p);
      out << to_int(r.level) << '\t' << to_string(phase) << '\t' << r.seconds(phase) << '\t'
          << r.percent(phase) << '\n';
    }
  }
  return out.str();
}

}  // namespace zkpol
