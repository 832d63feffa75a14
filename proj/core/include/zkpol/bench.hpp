#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "zkpol/profile.hpp"
#include "zkpol/zkpol_circuit.hpp"

namespace zkpol {

enum class Phase { ComputationToQap, Setup, CalculateWitness, GenerateProof, VerifyProof };
inline constexpr std::size_t kPhaseCount = 5;
std::string_view to_string(Phase phase) noexcept;

struct PhaseReport {
  PrivacyLevel level = PrivacyLevel::Level1;
  std::size_t repetitions = 0;
  std::array<double, kPhaseCount> mean_seconds{};

  double total() const;
  double percent(Phase phase) const;
  double seconds(Phase phase) const { return mean_seconds[static_cast<std::size_t>(phase)]; }
};

/// Times the full pipeline for one level: build circuit and QAP, setup,
/// witness, prove, verify. Every repetition runs all five phases on a fresh
/// certificate. Throws InternalInconsistency if a proof fails to verify.
PhaseReport run_phase_benchmark(const Profile& profile, PrivacyLevel level,
                                std::size_t repetitions, std::uint64_t seed);

/// Aligned table with one row per phase and one column pair per report.
std::string format_phase_table(std::span<const PhaseReport> reports);
/// level, phase, mean seconds, percent.
std::string format_phase_tsv(std::span<const PhaseReport> reports);

}  // namespace zkpol
