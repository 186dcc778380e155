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

#include "qubench/pauli.hpp"

#include <stdexcept>

namespace qubench {

namespace {
const Complex kI(0.0, 1.0);

CMatrix make_pauli(int which) {
  CMatrix m(2, 2);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}
}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a pauli label: ") + c);
  }
}

const CMatrix& pauli_matrix(Pauli p) {
  static const CMatrix mats[4] = {make_pauli(0), make_pauli(1), make_pauli(2),
                                  make_pauli(3)};
  return mats[static_cast<int>(p)];
}

std::string pauli_label_from_index(std::int64_t index, int n_qubits) {
  if (n_qubits < 1 || index < 0 ||
      index >= (std::int64_t{1} << (2 * n_qubits))) {
    throw std::invalid_argument("pauli index out of range");
  }
  std::string label(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = n_qubits - 1; q >= 0; --q) {
    label[static_cast<std::size_t>(q)] = "IXYZ"[index & 3];
    index >>= 2;
  }
  return label;
}

std::int64_t pauli_index_from_label(const std::string& label) {
  std::int64_t index = 0;
  for (char c : label) {
    index = (index << 2) | static_cast<std::int64_t>(pauli_from_char(c));
  }
  return index;
}

CMatrix pauli_string_matrix(const std::string& label) {
  if (label.empty()) throw std::invalid_argument("empty pauli label");
  CMatrix m = pauli_matrix(pauli_from_char(label[0]));
  for (std::size_t q = 1; q < label.size(); ++q) {
    m = kron(m, pauli_matrix(pauli_from_char(label[q])));
  }
  return m;
}

Pauli pauli_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return b;
  if (b == Pauli::I) return a;
  if (a == b) return Pauli::I;
  // The two distinct non-identity Paulis multiply to the third.
  int s = 6 - static_cast<int>(a) - static_cast<int>(b);
  return static_cast<Pauli>(s);
}

std::vector<std::string> all_pauli_labels(int n_qubits) {
  std::int64_t count = std::int64_t{1} << (2 * n_qubits);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    labels.push_back(pauli_label_from_index(i, n_qubits));
  }
  return labels;
}

}  // namespace qubench
