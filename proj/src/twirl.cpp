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

#include "qubench/twirl.hpp"

#include <array>
#include <stdexcept>

#include "qubench/rng.hpp"

namespace qubench {

namespace {

struct ConjEntry {
  const char* label;
  int sign;
};

// cnot (P_c x P_t) cnot, indexed by 4*control + target in I,X,Y,Z order.
constexpr std::array<ConjEntry, 16> kCnotConjugation = {{
    {"II", 1}, {"IX", 1}, {"ZY", 1}, {"ZZ", 1},
    {"XX", 1}, {"XI", 1}, {"YZ", 1}, {"YY", -1},
    {"YX", 1}, {"YI", 1}, {"XZ", -1}, {"XY", 1},
    {"ZI", 1}, {"ZX", 1}, {"IY", 1}, {"IZ", 1},
}};

}  // namespace

SignedPauliPair pauli_conjugate_through_cnot(const std::string& pauli_pair) {
  if (pauli_pair.size() != 2) {
    throw std::invalid_argument("expected a 2-qubit Pauli string");
  }
  const int c = static_cast<int>(pauli_from_char(pauli_pair[0]));
  const int t = static_cast<int>(pauli_from_char(pauli_pair[1]));
  const ConjEntry& e = kCnotConjugation[4 * c + t];
  return {e.label, e.sign};
}

namespace {

std::pair<Circuit, std::vector<TwirlRecord>> compile_frames(
    const Circuit& circuit,
    const std::function<Pauli(int layer, int qubit)>& draw, bool dress_all);

}  // namespace

std::pair<Circuit, std::vector<TwirlRecord>> randomized_compile(
    const Circuit& circuit, std::uint64_t seed) {
  Rng rng(seed);
  return compile_frames(
      circuit, [&rng](int, int) {
        return static_cast<Pauli>(rng.below(4));
      },
      false);
}

std::pair<Circuit, std::vector<TwirlRecord>> randomized_compile_with(
    const Circuit& circuit,
    const std::function<Pauli(int layer, int qubit)>& draw) {
  return compile_frames(circuit, draw, false);
}

std::pair<Circuit, std::vector<TwirlRecord>> pauli_frame_compile(
    const Circuit& circuit, std::uint64_t seed) {
  Rng rng(seed);
  return compile_frames(
      circuit, [&rng](int, int) {
        return static_cast<Pauli>(rng.below(4));
      },
      true);
}

namespace {

std::pair<Circuit, std::vector<TwirlRecord>> compile_frames(
    const Circuit& circuit,
    const std::function<Pauli(int layer, int qubit)>& draw, bool dress_all) {
  validate_circuit(circuit);
  const int w = circuit.width;
  Circuit out = circuit;
  std::vector<TwirlRecord> records;
  std::vector<Pauli> pending(w, Pauli::I);

  for (int li = 0; li < out.depth(); ++li) {
    Layer& layer = out.layers[li];
    bool has_two_qubit = false;
    std::vector<bool> covered(w, false);
    for (const GateOp& op : layer.ops) {
      has_two_qubit |= op.name == GateName::Cnot;
      for (int s = 0; s < op.arity(); ++s) covered[op.qubits[s]] = true;
    }

    // Fresh twirl Paulis around layers holding a 2-qubit gate (every layer
    // when dress_all is set), and only on qubits the layer actually
    // touches (no gate, no twirl).
    const bool dressed = has_two_qubit || dress_all;
    std::vector<Pauli> twirl(w, Pauli::I);
    if (dressed) {
      for (int q = 0; q < w; ++q) {
        if (covered[q]) twirl[q] = draw(li, q);
      }
    }

    std::vector<Pauli> next = pending;
    for (GateOp& op : layer.ops) {
      if (op.name == GateName::Cnot) {
        // Pending correction, then the fresh twirl, both ahead of the gate.
        for (int s = 0; s < 2; ++s) {
          const int q = op.qubits[s];
          op.pre[s] = pauli_product(
              op.pre[s], pauli_product(twirl[q], pending[q]));
        }
        const std::string in = {pauli_char(twirl[op.qubits[0]]),
                                pauli_char(twirl[op.qubits[1]])};
        const SignedPauliPair conj = pauli_conjugate_through_cnot(in);
        next[op.qubits[0]] = pauli_from_char(conj.label[0]);
        next[op.qubits[1]] = pauli_from_char(conj.label[1]);
      } else {
        const int q = op.qubits[0];
        op.pre[0] = pauli_product(op.pre[0], pending[q]);
        op.post[0] = pauli_product(twirl[q], op.post[0]);
        next[q] = twirl[q];
      }
    }
    pending = next;

    if (dressed) {
      TwirlRecord rec;
      rec.layer_index = li;
      for (int q = 0; q < w; ++q) {
        rec.twirl.push_back(std::string(1, pauli_char(twirl[q])));
        rec.correction.push_back(std::string(1, pauli_char(pending[q])));
      }
      records.push_back(std::move(rec));
    }
  }

  // Fold each qubit's outstanding correction into the last op that touches
  // it; Paulis on other qubits commute past, so the net unitary matches the
  // input up to global phase.
  for (int q = 0; q < w; ++q) {
    if (pending[q] == Pauli::I) continue;
    bool merged = false;
    for (int li = out.depth() - 1; li >= 0 && !merged; --li) {
      for (GateOp& op : out.layers[li].ops) {
        for (int s = 0; s < op.arity(); ++s) {
          if (op.qubits[s] != q) continue;
          op.post[s] = pauli_product(pending[q], op.post[s]);
          pending[q] = Pauli::I;
          merged = true;
          break;
        }
        if (merged) break;
      }
    }
    if (!merged) {
      throw std::logic_error("twirl correction on a gateless qubit");
    }
  }

  return {std::move(out), std::move(records)};
}

}  // namespace

}  // namespace qubench
