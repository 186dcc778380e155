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

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qubench/gates.hpp"
#include "qubench/pauli.hpp"

namespace qubench {

// One gate application. Besides the named gate, an op can carry a Pauli
// frame: `pre` is applied before the base unitary and `post` after it, per
// qubit slot. Frames are how randomized compiling merges twirl gates into
// existing ops without adding depth; plain generated circuits leave them at
// identity. A framed op is still one physical operation and receives noise
// once.
struct GateOp {
  GateName name = GateName::Id;
  std::array<int, 2> qubits = {0, -1};
  std::array<Pauli, 2> pre = {Pauli::I, Pauli::I};
  std::array<Pauli, 2> post = {Pauli::I, Pauli::I};

  int arity() const { return gate_arity(name); }
  bool framed() const {
    return pre[0] != Pauli::I || pre[1] != Pauli::I || post[0] != Pauli::I ||
           post[1] != Pauli::I;
  }

  static GateOp single(GateName g, int qubit) {
    GateOp op;
    op.name = g;
    op.qubits = {qubit, -1};
    return op;
  }
  static GateOp cnot(int control, int target) {
    GateOp op;
    op.name = GateName::Cnot;
    op.qubits = {control, target};
    return op;
  }
};

// Base unitary with the frame folded in (2x2 or 4x4).
CMatrix op_unitary(const GateOp& op);

struct Layer {
  std::vector<GateOp> ops;
};

struct Topology {
  enum class Kind { Line, Ring, Grid, Complete, Custom };

  Kind kind = Kind::Line;
  int n_qubits = 0;
  std::vector<std::pair<int, int>> edges;
  int grid_rows = 0;
  int grid_cols = 0;

  static Topology line(int n_qubits);
  static Topology ring(int n_qubits);
  static Topology grid(int rows, int cols);
  static Topology complete(int n_qubits);
  static Topology custom(int n_qubits,
                         std::vector<std::pair<int, int>> edges);

  bool has_edge(int a, int b) const;

  // Size of a maximum matching; small graphs, exact search.
  int max_matching() const;
};

std::string topology_kind_str(Topology::Kind k);
Topology::Kind topology_kind_from_str(const std::string& s);

struct Circuit {
  int width = 0;
  std::uint64_t seed = 0;
  Topology topology;
  std::vector<Layer> layers;

  int depth() const { return static_cast<int>(layers.size()); }
};

// Structural checks: qubit ranges, per-layer disjointness, cnots on edges.
void validate_circuit(const Circuit& c);

// Concatenation that keeps the first circuit's metadata.
Circuit concat(const Circuit& a, const Circuit& b);

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace qubench
