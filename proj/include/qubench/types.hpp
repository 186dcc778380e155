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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace qubench {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Basis convention used throughout: qubit 0 is the most significant bit of a
// computational-basis index, i.e. |q0 q1 ... q_{n-1}> has index
// sum_q bit(q) << (n-1-q), and operators tensor as A_{q0} (x) A_{q1} (x) ...
inline int bit_of_qubit(std::uint64_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

inline std::int64_t dim_for_qubits(int n_qubits) {
  return std::int64_t{1} << n_qubits;
}

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Max-norm distance, used by tests and internal consistency checks.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace qubench
