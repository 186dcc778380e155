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
#include <vector>

#include "qubench/circuit.hpp"
#include "qubench/rng.hpp"
#include "qubench/types.hpp"

namespace qubench {

// The nine single-qubit gates used to fill non-cnot slots.
extern const std::vector<GateName> kFillGates;

// Random circuit with exactly alpha = round(w*d*xi/2) cnots spread over d
// layers (round half to even). Per-layer cnot counts form a uniformly random
// composition of alpha subject to each layer fitting a matching of the
// coupling graph; every remaining slot gets a uniform draw from kFillGates.
// Deterministic in (w, d, xi, topology, seed).
Circuit generate_random_circuit(int w, int d, double xi,
                                const Topology& topology,
                                std::uint64_t seed);

// Product of layer unitaries in time order, 2^w x 2^w. Widths above 6 are
// rejected.
CMatrix ideal_unitary(const Circuit& circuit);

GateOp invert_op(const GateOp& op);
Layer invert_layer(const Layer& layer);

// Layers reversed, each op replaced by its inverse, so that
// circuit followed by dagger_circuit(circuit) is the identity up to phase.
Circuit dagger_circuit(const Circuit& circuit);

// One layer of uniform draws from kFillGates, one gate per qubit.
Layer random_fill_layer(int w, Rng& rng);

// Random state-preparation block: n_layers layers built from h, s and
// cnots on coupling edges. Starting from the all-zeros state this walks to
// a random stabilizer state.
std::vector<Layer> random_stabilizer_prep(int w, const Topology& topology,
                                          int n_layers, Rng& rng);

}  // namespace qubench
