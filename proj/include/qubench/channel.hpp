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

#include <vector>

#include "qubench/state.hpp"
#include "qubench/types.hpp"

namespace qubench {

// Completely positive trace-preserving map in Kraus form. Construction
// rejects sets that are not trace preserving within tolerance.
class KrausChannel {
 public:
  static constexpr double kTpTol = 1e-10;

  static KrausChannel from_ops(int n_qubits, std::vector<CMatrix> ops);
  static KrausChannel identity(int n_qubits);
  static KrausChannel from_unitary(int n_qubits, const CMatrix& u);

  int n_qubits() const { return n_qubits_; }
  const std::vector<CMatrix>& ops() const { return ops_; }

 private:
  KrausChannel(int n_qubits, std::vector<CMatrix> ops)
      : n_qubits_(n_qubits), ops_(std::move(ops)) {}

  int n_qubits_;
  std::vector<CMatrix> ops_;
};

DensityMatrix apply_channel(const DensityMatrix& rho,
                            const KrausChannel& channel);

// Linear action on an arbitrary operator (used for transfer-matrix work,
// where the input is a Pauli rather than a state).
CMatrix apply_channel_to_operator(const CMatrix& m, const KrausChannel& channel);

// Channel that applies `first` and then `second` (both same width).
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

// Channel acting as `a` on the first factor and `b` on the second.
KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b);

// Lift a k-qubit operator to n qubits, acting on the listed target qubits
// (targets[0] is the operator's first tensor slot) and trivially elsewhere.
CMatrix embed_operator(const CMatrix& op, const std::vector<int>& targets,
                       int n_total);

KrausChannel embed_on_qubits(const KrausChannel& channel,
                             const std::vector<int>& targets, int n_total);

// Real 4^n x 4^n transfer matrix over the lexicographically ordered Pauli
// basis: R[a][b] = tr(P_a E(P_b)) / 2^n. First row of a TP map is
// (1, 0, ..., 0) within 1e-9.
struct PauliTransferMatrix {
  int n_qubits;
  RMatrix data;
};

PauliTransferMatrix ptm_from_kraus(const KrausChannel& channel);
PauliTransferMatrix ptm_identity(int n_qubits);

// Transfer matrix of `first` followed by `second`: second.data * first.data.
PauliTransferMatrix ptm_compose(const PauliTransferMatrix& first,
                                const PauliTransferMatrix& second);

void validate_ptm(const PauliTransferMatrix& ptm, double tp_tol = 1e-9);

}  // namespace qubench
