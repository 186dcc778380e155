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

#include "qubench/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "qubench/circgen.hpp"
#include "qubench/pauli.hpp"
#include "qubench/rng.hpp"
#include "qubench/simulate.hpp"

namespace qubench {

PauliTransferMatrix circuit_channel_ptm(const Circuit& circuit,
                                        const NoiseModel& noise) {
  if (circuit.width > 4) {
    throw std::invalid_argument("transfer matrices supported up to width 4");
  }
  const int w = circuit.width;
  const int dim = dim_for_qubits(w);
  const int basis = dim * dim;
  const CompiledCircuit compiled = compile_circuit(circuit, noise);

  std::vector<CMatrix> paulis(basis);
  for (int a = 0; a < basis; ++a) {
    paulis[a] = pauli_string_matrix(pauli_label_from_index(a, w));
  }

  PauliTransferMatrix ptm{w, RMatrix::Zero(basis, basis)};
  for (int b = 0; b < basis; ++b) {
    const CMatrix evolved = propagate_operator(compiled, paulis[b]);
    for (int a = 0; a < basis; ++a) {
      ptm.data(a, b) = (paulis[a].adjoint() * evolved).trace().real() / dim;
    }
  }
  validate_ptm(ptm);
  return ptm;
}

double entanglement_fidelity(const PauliTransferMatrix& actual,
                             const PauliTransferMatrix& ideal) {
  if (actual.n_qubits != ideal.n_qubits) {
    throw std::invalid_argument("transfer matrix size mismatch");
  }
  Eigen::FullPivLU<RMatrix> lu(ideal.data);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("ideal channel is not invertible");
  }
  const double fe =
      lu.solve(actual.data).trace() / static_cast<double>(ideal.data.rows());
  return std::clamp(fe, 0.0, 1.0);
}

FidelityReport average_gate_fidelity(const PauliTransferMatrix& actual,
                                     const PauliTransferMatrix& ideal) {
  FidelityReport report;
  report.dimension = dim_for_qubits(actual.n_qubits);
  report.entanglement_fidelity = entanglement_fidelity(actual, ideal);
  const double d = static_cast<double>(report.dimension);
  report.average_gate_fidelity =
      (d * report.entanglement_fidelity + 1.0) / (d + 1.0);
  report.average_error_rate = 1.0 - report.average_gate_fidelity;
  return report;
}

double layer_process_infidelity(const Layer& layer, const Topology& topology,
                                int w, const NoiseModel& noise) {
  Circuit c;
  c.width = w;
  c.topology = topology;
  c.layers.push_back(layer);
  const PauliTransferMatrix actual = circuit_channel_ptm(c, noise);
  const PauliTransferMatrix ideal = circuit_channel_ptm(c, NoiseModel{});
  return 1.0 - entanglement_fidelity(actual, ideal);
}

McEstimate haar_average_fidelity_mc(const Circuit& circuit,
                                    const NoiseModel& noise, int n_states,
                                    std::uint64_t seed) {
  if (circuit.width > 3) {
    throw std::invalid_argument("Monte Carlo supported up to width 3");
  }
  if (n_states < 100) {
    throw std::invalid_argument("n_states must be at least 100");
  }
  const int dim = dim_for_qubits(circuit.width);
  const CompiledCircuit compiled = compile_circuit(circuit, noise);
  const CMatrix ideal = ideal_unitary(circuit);

  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n_states; ++i) {
    CVector psi(dim);
    for (int k = 0; k < dim; ++k) {
      psi(k) = Complex(rng.normal(), rng.normal());
    }
    psi.normalize();
    const CMatrix rho = psi * psi.adjoint();
    const CVector phi = ideal * psi;
    const double f =
        (phi.adjoint() * propagate_operator(compiled, rho) * phi)(0, 0)
            .real();
    sum += f;
    sum_sq += f * f;
  }
  McEstimate est;
  est.mean = sum / n_states;
  const double var =
      std::max(0.0, (sum_sq - n_states * est.mean * est.mean) /
                        (n_states - 1.0));
  est.sem = std::sqrt(var / n_states);
  return est;
}

}  // namespace qubench
