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

namespace qubench {

// One physical operation lifted to the full register: the dressed gate
// unitary composed with its gate-class noise, as a Kraus set of 2^w
// matrices. Idle noise becomes its own entry.
struct CompiledOp {
  std::vector<CMatrix> kraus;
};

struct CompiledCircuit {
  int n_qubits = 0;
  std::vector<CompiledOp> ops;
};

// Gate noise is attached after each gate; a model with an Idle entry also
// hits every qubit a layer leaves untouched. StatePrep/Measurement noise is
// not part of the circuit channel; see apply_boundary_noise.
CompiledCircuit compile_circuit(const Circuit& circuit,
                                const NoiseModel& noise);

DensityMatrix apply_compiled(const CompiledCircuit& compiled,
                             const DensityMatrix& rho);

// Same linear action on a bare operator, for transfer-matrix extraction.
CMatrix propagate_operator(const CompiledCircuit& compiled, const CMatrix& m);

// Full circuit from the all-zeros state.
DensityMatrix simulate(const Circuit& circuit, const NoiseModel& noise);

// StatePrep or Measurement class noise, applied to every qubit.
DensityMatrix apply_boundary_noise(const DensityMatrix& rho,
                                   const NoiseModel& noise,
                                   GateClass gate_class);

// Computational-basis index to bitstring, qubit 0 first.
std::string bitstring_from_index(int index, int n_qubits);
int index_from_bitstring(const std::string& bits);

// Multinomial sample of `shots` outcomes by inverse CDF; deterministic in
// the seed. Returns per-index counts.
std::vector<std::uint64_t> sample_counts(const std::vector<double>& probs,
                                         std::uint64_t shots,
                                         std::uint64_t seed);

}  // namespace qubench
