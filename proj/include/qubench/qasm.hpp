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

#include <string>

#include "qubench/circuit.hpp"

namespace qubench {

// OpenQASM 2.0 program: one qreg/creg of the circuit width, gates in layer
// order with a barrier between layers, terminal full measurement. Pauli
// frames are flattened into explicit x/y/z lines around the framed gate.
std::string to_openqasm(const Circuit& circuit);

// Parser for the subset emitted above; barriers delimit layers. The result
// carries a complete-graph topology since connectivity is not recoverable
// from the program text.
Circuit parse_openqasm(const std::string& text);

}  // namespace qubench
