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
#include <vector>

#include "qubench/types.hpp"

namespace qubench {

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

const CMatrix& pauli_matrix(Pauli p);

// Multi-qubit Pauli labels are strings like "XIZ", qubit 0 first. The basis
// index is lexicographic with per-qubit order I < X < Y < Z, so label index
// = sum_q digit(q) * 4^(n-1-q). This ordering is fixed across the library.
std::string pauli_label_from_index(std::int64_t index, int n_qubits);
std::int64_t pauli_index_from_label(const std::string& label);

CMatrix pauli_string_matrix(const std::string& label);

// Product of two single-qubit Paulis with the phase dropped: X*Y -> Z etc.
Pauli pauli_product(Pauli a, Pauli b);

std::vector<std::string> all_pauli_labels(int n_qubits);

}  // namespace qubench
