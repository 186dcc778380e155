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

#include "qubench/types.hpp"

namespace qubench {

// Exact density matrix on up to 5 qubits. Values are immutable once built;
// construction checks hermiticity and unit trace, validate() additionally
// checks positivity. Violations are never repaired: they signal bugs.
class DensityMatrix {
 public:
  static constexpr int kMaxQubits = 5;
  static constexpr double kHermTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenFloor = -1e-10;

  static DensityMatrix from_matrix(int n_qubits, CMatrix rho);
  static DensityMatrix computational_basis(int n_qubits, std::uint64_t index);
  static DensityMatrix zero_state(int n_qubits);
  static DensityMatrix from_pure(int n_qubits, const CVector& psi);

  int n_qubits() const { return n_qubits_; }
  const CMatrix& data() const { return data_; }

  // Full invariant check including the eigenvalue floor.
  void validate() const;

  // Real diagonal clamped to [0, 1]: the computational-basis distribution.
  std::vector<double> probabilities() const;

 private:
  DensityMatrix(int n_qubits, CMatrix rho)
      : n_qubits_(n_qubits), data_(std::move(rho)) {}

  int n_qubits_;
  CMatrix data_;
};

double purity(const DensityMatrix& rho);

}  // namespace qubench
