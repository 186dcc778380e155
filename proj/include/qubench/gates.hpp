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

#include "qubench/types.hpp"

namespace qubench {

// The native gate alphabet: nine single-qubit gates plus cnot.
enum class GateName : int {
  Id = 0,
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  Cnot,
};

const std::string& gate_name_str(GateName g);
GateName gate_name_from_str(const std::string& s);

int gate_arity(GateName g);

// Base unitary: 2x2 for single-qubit gates, 4x4 for cnot with the control on
// the first tensor slot.
const CMatrix& gate_matrix(GateName g);

// Name of the inverse gate (s <-> sdg, t <-> tdg, the rest self-inverse).
GateName gate_inverse(GateName g);

}  // namespace qubench
