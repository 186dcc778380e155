// Copyright 2026 The qubench developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qubench/circuit.hpp"
#include "qubench/noise.hpp"
#include "qubench/state.hpp"
#include "qubench/twirl.hpp"

namespace qubench {

enum class Protocol { DRB, MRB, CRB };

std::string protocol_str(Protocol p);
Protocol protocol_from_str(const std::string& s);

struct ProtocolRunSpec {
  Protocol protocol = Protocol::DRB;
  int w = 1;
  Topology topology;
  double xi = 0.75;
  std::vector<int> m_list = {2, 4, 8, 16, 32};
  int circuits_per_depth = 20;
  std::uint64_t shots = 0;  // 0 = exact output probabilities
  NoiseModel noise;
  std::uint64_t seed = 0;
};

void validate_run_spec(const ProtocolRunSpec& spec);

// One decay point. `depth` is the abscissa the fit runs over: the count of
// noisy layers that scales with the sequence length m. Mirror and cycle
// circuits contribute m such layers; a direct-RB circuit contributes 2m
// because the global inversion replays the core. `pauli` tags cycle-RB
// samples for per-Pauli fits and is empty otherwise.
struct DecaySample {
  int depth = 0;
  double value = 0.0;
  std::uint64_t circuit_seed = 0;
  std::string pauli;
};

// Deterministic work-unit seed; independent of scheduling and of the noise
// model, so every noise point sees the same circuit ensemble.
std::uint64_t cell_seed(std::uint64_t master, Protocol protocol, int m, int k,
                        int pauli_index = 0);

// Direct RB: random stabilizer prep (depth w+2 from h/s/cnot), a depth-m
// generated core, and the dagger of everything so far; the value is the
// probability of reading all zeros.
std::vector<DecaySample> run_drb(const ProtocolRunSpec& spec);

// One direct-RB instance regenerated from the run seeds: the state-prep
// subcircuit alone and the full prep + core + inverse circuit. The purity
// diagnostic compares state purity after each stage.
struct DrbInstance {
  Circuit prep;
  Circuit full;
};
DrbInstance drb_instance(const ProtocolRunSpec& spec, int m, int k);

// Mirror RB (m even): a random 1q layer, m/2 generated layers, the same
// layers inverted in reverse order, and the inverse 1q layer. Uniform
// Pauli dressings on each mirrored pair plus a final Pauli make the ideal
// outcome a uniformly random basis state. The value is the effective
// polarization of the Hamming-distance histogram around that target.
std::vector<DecaySample> run_mrb(const ProtocolRunSpec& spec);

// Cycle RB: benchmarks the single generated layer returned by crb_cycle.
// For each probe Pauli, prepares its +1 eigenstate, applies m twirled
// repetitions of the cycle, and reads out the ideally propagated
// observable exactly in its eigenbasis. Values are tagged per Pauli.
std::vector<DecaySample> run_crb(const ProtocolRunSpec& spec);
std::vector<DecaySample> run_crb_with_cycle(const ProtocolRunSpec& spec,
                                            const Circuit& cycle);

std::vector<DecaySample> run_protocol(const ProtocolRunSpec& spec);

// The depth-1 circuit cycle RB benchmarks for this spec.
Circuit crb_cycle(const ProtocolRunSpec& spec);

// Probe Paulis: every non-identity string for w <= 2, else 20 sampled
// without replacement. `exhaustive` reports which branch was taken.
std::vector<std::string> crb_pauli_set(int w, std::uint64_t seed,
                                       bool* exhaustive = nullptr);

// <target|rho|target>, clamped to [0,1].
double survival_probability(const DensityMatrix& final_state,
                            const std::string& target_bitstring);

// S = 4^w/(4^w-1) * sum_k (-1/2)^k h_k - 1/(4^w-1), where h_k is the
// probability mass at Hamming distance k from the target index. Equals 1
// when all mass sits on the target and 0 for the uniform distribution.
double effective_polarization(const std::vector<double>& probs,
                              int target_index, int w);

// The noisy layers a protocol row exposes to noise, used to compute the
// matching per-layer tomography reference. Direct and mirror RB contribute
// the generated (and mirrored) layers of all K circuit seeds at the top
// sequence length; cycle RB contributes its cycle.
std::vector<Layer> reference_layer_ensemble(const ProtocolRunSpec& spec);

// The generated core circuits behind reference_layer_ensemble, regenerated
// from the run seeds for archival: K cores at the top sequence length for
// direct and mirror RB, the single cycle for cycle RB.
std::vector<Circuit> reference_circuit_ensemble(const ProtocolRunSpec& spec);

// Replays the block twirl of one cycle-RB cell from the seed stored in its
// DecaySample, so archives can bundle the records without rerunning the
// simulation.
std::vector<TwirlRecord> crb_twirl_records(const ProtocolRunSpec& spec,
                                           const Circuit& cycle, int m,
                                           std::uint64_t sample_seed);

}  // namespace qubench
