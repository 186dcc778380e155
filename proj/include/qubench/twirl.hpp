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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qubench/circuit.hpp"

namespace qubench {

struct SignedPauliPair {
  std::string label;
  int sign = 1;
};

// cnot * P * cnot for a 2-qubit Pauli string (control slot first). The
// result is again a Pauli string, possibly with a -1 sign.
SignedPauliPair pauli_conjugate_through_cnot(const std::string& pauli_pair);

// Audit record of one twirled layer: the inserted Paulis and the compiled
// correction, one label per qubit each.
struct TwirlRecord {
  int layer_index = 0;
  std::vector<std::string> twirl;
  std::vector<std::string> correction;
};

// Randomized compiling. Layers containing a 2-qubit gate get a fresh
// uniform Pauli per qubit, merged into the gate frames; corrections are
// carried forward and folded into the next layer (conjugated through
// cnots), and the leftover correction is folded into the final layer. The
// output has the same layer count, 2-qubit gate placements and op count as
// the input, and the same ideal unitary up to global phase.
std::pair<Circuit, std::vector<TwirlRecord>> randomized_compile(
    const Circuit& circuit, std::uint64_t seed);

// Same pass with an explicit Pauli source, for tests that pin the draws.
std::pair<Circuit, std::vector<TwirlRecord>> randomized_compile_with(
    const Circuit& circuit,
    const std::function<Pauli(int layer, int qubit)>& draw);

// Full Pauli-frame randomization: like randomized_compile but every layer
// gets fresh Paulis, so each gate's error is conjugated by an independent
// uniform Pauli. Cycle benchmarking uses this to turn the repeated cycle's
// noise into effectively stochastic Pauli noise layer by layer.
std::pair<Circuit, std::vector<TwirlRecord>> pauli_frame_compile(
    const Circuit& circuit, std::uint64_t seed);

}  // namespace qubench
