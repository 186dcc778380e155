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

#include "qubench/simulate.hpp"

#include <algorithm>
#include <stdexcept>

#include "qubench/channel.hpp"
#include "qubench/rng.hpp"

namespace qubench {

namespace {

CMatrix apply_kraus(const std::vector<CMatrix>& kraus, const CMatrix& m) {
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (const CMatrix& k : kraus) out += k * m * k.adjoint();
  return out;
}

}  // namespace

CompiledCircuit compile_circuit(const Circuit& circuit,
                                const NoiseModel& noise) {
  validate_circuit(circuit);
  const int w = circuit.width;
  const KrausChannel noise_1q =
      build_gate_noise(noise, GateClass::OneQubitGate, 1);
  const KrausChannel noise_2q =
      build_gate_noise(noise, GateClass::TwoQubitGate, 2);
  const bool has_idle =
      noise.per_gate_class.count(GateClass::Idle) != 0 &&
      !noise.per_gate_class.at(GateClass::Idle).empty();
  const KrausChannel noise_idle =
      has_idle ? build_gate_noise(noise, GateClass::Idle, 1)
               : KrausChannel::identity(1);

  CompiledCircuit out;
  out.n_qubits = w;
  for (const Layer& layer : circuit.layers) {
    std::vector<bool> covered(w, false);
    for (const GateOp& op : layer.ops) {
      std::vector<int> targets(op.qubits.begin(),
                               op.qubits.begin() + op.arity());
      for (int q : targets) covered[q] = true;
      const CMatrix u = embed_operator(op_unitary(op), targets, w);
      const KrausChannel& cls = op.arity() == 1 ? noise_1q : noise_2q;
      CompiledOp cop;
      if (cls.ops().size() == 1 && cls.ops()[0].isIdentity(1e-14)) {
        cop.kraus.push_back(u);
      } else {
        const KrausChannel lifted = embed_on_qubits(cls, targets, w);
        cop.kraus.reserve(lifted.ops().size());
        for (const CMatrix& k : lifted.ops()) cop.kraus.push_back(k * u);
      }
      out.ops.push_back(std::move(cop));
    }
    if (has_idle) {
      for (int q = 0; q < w; ++q) {
        if (covered[q]) continue;
        CompiledOp cop;
        cop.kraus = embed_on_qubits(noise_idle, {q}, w).ops();
        out.ops.push_back(std::move(cop));
      }
    }
  }
  return out;
}

DensityMatrix apply_compiled(const CompiledCircuit& compiled,
                             const DensityMatrix& rho) {
  if (rho.n_qubits() != compiled.n_qubits) {
    throw std::invalid_argument("state width does not match circuit");
  }
  CMatrix m = rho.data();
  for (const CompiledOp& op : compiled.ops) m = apply_kraus(op.kraus, m);
  return DensityMatrix::from_matrix(compiled.n_qubits, m);
}

CMatrix propagate_operator(const CompiledCircuit& compiled, const CMatrix& m) {
  CMatrix out = m;
  for (const CompiledOp& op : compiled.ops) out = apply_kraus(op.kraus, out);
  return out;
}

DensityMatrix simulate(const Circuit& circuit, const NoiseModel& noise) {
  return apply_compiled(compile_circuit(circuit, noise),
                        DensityMatrix::zero_state(circuit.width));
}

DensityMatrix apply_boundary_noise(const DensityMatrix& rho,
                                   const NoiseModel& noise,
                                   GateClass gate_class) {
  if (gate_class != GateClass::StatePrep &&
      gate_class != GateClass::Measurement) {
    throw std::invalid_argument("boundary noise is StatePrep or Measurement");
  }
  const auto it = noise.per_gate_class.find(gate_class);
  if (it == noise.per_gate_class.end() || it->second.empty()) return rho;
  const KrausChannel one = build_gate_noise(noise, gate_class, 1);
  DensityMatrix out = rho;
  for (int q = 0; q < rho.n_qubits(); ++q) {
    out = apply_channel(out, embed_on_qubits(one, {q}, rho.n_qubits()));
  }
  return out;
}

std::string bitstring_from_index(int index, int n_qubits) {
  std::string bits(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q) {
    bits[q] = bit_of_qubit(index, q, n_qubits) ? '1' : '0';
  }
  return bits;
}

int index_from_bitstring(const std::string& bits) {
  int index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring");
    index = (index << 1) | (c == '1');
  }
  return index;
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& probs,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < -1e-12) throw std::invalid_argument("negative probability");
    acc += std::max(probs[i], 0.0);
    cdf[i] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-8) {
    throw std::invalid_argument("probabilities do not sum to 1");
  }
  Rng rng(seed);
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        std::min(static_cast<std::size_t>(it - cdf.begin()),
                 probs.size() - 1);
    ++counts[idx];
  }
  return counts;
}

}  // namespace qubench
