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

#include "qubench/channel.hpp"
#include "qubench/circuit.hpp"
#include "qubench/noise.hpp"

namespace qubench {

struct FidelityReport {
  double entanglement_fidelity = 1.0;
  double average_gate_fidelity = 1.0;
  double average_error_rate = 0.0;
  int dimension = 2;
};

// Exact transfer matrix of the composite noisy channel, from propagating
// each Pauli basis operator through every gate and noise application.
// Widths above 4 are rejected.
PauliTransferMatrix circuit_channel_ptm(const Circuit& circuit,
                                        const NoiseModel& noise);

// F_e = tr(R_ideal^-1 R_actual) / 4^w, clamped to [0,1]. The ideal channel
// must be invertible (always true for a unitary).
double entanglement_fidelity(const PauliTransferMatrix& actual,
                             const PauliTransferMatrix& ideal);

// Full report via the dimension relation F_avg = (d F_e + 1)/(d + 1).
FidelityReport average_gate_fidelity(const PauliTransferMatrix& actual,
                                     const PauliTransferMatrix& ideal);

// Process infidelity 1 - F_e of a single noisy layer against its ideal
// unitary: the per-layer reference the protocol estimates are compared to.
double layer_process_infidelity(const Layer& layer, const Topology& topology,
                                int w, const NoiseModel& noise);

struct McEstimate {
  double mean = 0.0;
  double sem = 0.0;
};

// Monte Carlo average state fidelity over Haar-random pure inputs
// (normalized complex Gaussian vectors), with the standard error of the
// mean. Widths above 3 are rejected; n_states must be at least 100.
McEstimate haar_average_fidelity_mc(const Circuit& circuit,
                                    const NoiseModel& noise, int n_states,
                                    std::uint64_t seed);

}  // namespace qubench
