#include <benchmark/benchmark.h>

#include "zkpol/protocol.hpp"

namespace {

using zkpol::PrivacyLevel;
using zkpol::Profile;

zkpol::CertificateFields fixture(const Profile& profile) {
  zkpol::Rng rng(9);
  const auto pk = profile.engine().group_exp(profile.scalar_field().random_nonzero(rng));
  return {profile.curve().encode(pk), 121473700, 31230400, profile.scalar_field().random(rng),
          1700000000};
}

// Arg: privacy level. Realistic profile throughout.
void BM_Setup(benchmark::State& state) {
  const Profile& profile = *Profile::realistic();
  const auto level = zkpol::privacy_level_from_int(state.range(0));
  const zkpol::ZkpolCircuit c = zkpol::LevelCrs::build_circuit(profile, level);
  const zkpol::QapInstance qap = zkpol::circuit_to_qap(c.circuit);
  zkpol::Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(zkpol::setup(qap, profile.engine(), rng));
}
BENCHMARK(BM_Setup)->Arg(1)->Arg(4)->Unit(benchmark::kSecond)->Iterations(1);

void BM_Prove(benchmark::State& state) {
  const Profile& profile = *Profile::realistic();
  const auto level = zkpol::privacy_level_from_int(state.range(0));
  zkpol::Rng rng(2);
  const zkpol::LevelCrs crs = zkpol::LevelCrs::generate(profile, level, rng);
  const zkpol::Witness w =
      zkpol::compute_witness(crs.circuit.circuit, crs.circuit.inputs_for(fixture(profile)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(zkpol::prove(crs.proving, crs.qap, w, profile.engine()));
  }
}
BENCHMARK(BM_Prove)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_Verify(benchmark::State& state) {
  const Profile& profile = *Profile::realistic();
  const auto level = zkpol::privacy_level_from_int(state.range(0));
  zkpol::Rng rng(3);
  const zkpol::LevelCrs crs = zkpol::LevelCrs::generate(profile, level, rng);
  const zkpol::Witness w =
      zkpol::compute_witness(crs.circuit.circuit, crs.circuit.inputs_for(fixture(profile)));
  const zkpol::Proof proof = zkpol::prove(crs.proving, crs.qap, w, profile.engine());
  for (auto _ : state) {
    benchmark::DoNotOptimize(zkpol::verify(crs.verification, w.public_values(), proof,
                                           profile.engine()));
  }
}
BENCHMARK(BM_Verify)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
