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

#include "qubench/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qubench/types.hpp"

namespace qubench {

namespace {

std::pair<int, int> ordered(int a, int b) {
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

CMatrix op_unitary(const GateOp& op) {
  CMatrix u = gate_matrix(op.name);
  if (op.arity() == 1) {
    return pauli_matrix(op.post[0]) * u * pauli_matrix(op.pre[0]);
  }
  CMatrix pre = kron(pauli_matrix(op.pre[0]), pauli_matrix(op.pre[1]));
  CMatrix post = kron(pauli_matrix(op.post[0]), pauli_matrix(op.post[1]));
  return post * u * pre;
}

Topology Topology::line(int n_qubits) {
  Topology t;
  t.kind = Kind::Line;
  t.n_qubits = n_qubits;
  for (int q = 0; q + 1 < n_qubits; ++q) t.edges.emplace_back(q, q + 1);
  return t;
}

Topology Topology::ring(int n_qubits) {
  if (n_qubits < 3) throw std::invalid_argument("ring needs >= 3 qubits");
  Topology t = line(n_qubits);
  t.kind = Kind::Ring;
  t.edges.emplace_back(0, n_qubits - 1);
  return t;
}

Topology Topology::grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("bad grid shape");
  Topology t;
  t.kind = Kind::Grid;
  t.n_qubits = rows * cols;
  t.grid_rows = rows;
  t.grid_cols = cols;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int q = r * cols + c;
      if (c + 1 < cols) t.edges.emplace_back(q, q + 1);
      if (r + 1 < rows) t.edges.emplace_back(q, q + cols);
    }
  }
  return t;
}

Topology Topology::complete(int n_qubits) {
  Topology t;
  t.kind = Kind::Complete;
  t.n_qubits = n_qubits;
  for (int a = 0; a < n_qubits; ++a)
    for (int b = a + 1; b < n_qubits; ++b) t.edges.emplace_back(a, b);
  return t;
}

Topology Topology::custom(int n_qubits,
                          std::vector<std::pair<int, int>> edges) {
  Topology t;
  t.kind = Kind::Custom;
  t.n_qubits = n_qubits;
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
      throw std::invalid_argument("custom topology edge out of range");
    }
    auto e = ordered(a, b);
    if (seen.insert(e).second) t.edges.push_back(e);
  }
  return t;
}

bool Topology::has_edge(int a, int b) const {
  auto e = ordered(a, b);
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

namespace {

int matching_search(const std::vector<std::pair<int, int>>& edges,
                    std::size_t from, unsigned used_mask) {
  int best = 0;
  for (std::size_t i = from; i < edges.size(); ++i) {
    unsigned m = (1u << edges[i].first) | (1u << edges[i].second);
    if (used_mask & m) continue;
    best = std::max(best, 1 + matching_search(edges, i + 1, used_mask | m));
  }
  return best;
}

}  // namespace

int Topology::max_matching() const {
  if (n_qubits > 30) throw std::invalid_argument("topology too large");
  return matching_search(edges, 0, 0u);
}

std::string topology_kind_str(Topology::Kind k) {
  switch (k) {
    case Topology::Kind::Line: return "line";
    case Topology::Kind::Ring: return "ring";
    case Topology::Kind::Grid: return "grid";
    case Topology::Kind::Complete: return "complete";
    case Topology::Kind::Custom: return "custom";
  }
  throw std::logic_error("unreachable");
}

Topology::Kind topology_kind_from_str(const std::string& s) {
  if (s == "line") return Topology::Kind::Line;
  if (s == "ring") return Topology::Kind::Ring;
  if (s == "grid") return Topology::Kind::Grid;
  if (s == "complete") return Topology::Kind::Complete;
  if (s == "custom") return Topology::Kind::Custom;
  throw std::invalid_argument("unknown topology kind: " + s);
}

void validate_circuit(const Circuit& c) {
  if (c.width < 1 || c.width > 5) {
    throw std::invalid_argument("circuit width out of range");
  }
  if (c.topology.n_qubits != c.width) {
    throw std::invalid_argument("topology size does not match circuit width");
  }
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    std::set<int> touched;
    for (const GateOp& op : c.layers[li].ops) {
      for (int s = 0; s < op.arity(); ++s) {
        int q = op.qubits[s];
        if (q < 0 || q >= c.width) {
          throw std::invalid_argument("qubit index out of range in layer " +
                                      std::to_string(li));
        }
        if (!touched.insert(q).second) {
          throw std::invalid_argument("qubit used twice in layer " +
                                      std::to_string(li));
        }
      }
      if (op.name == GateName::Cnot) {
        if (op.qubits[0] == op.qubits[1]) {
          throw std::invalid_argument("cnot with equal qubits");
        }
        if (!c.topology.has_edge(op.qubits[0], op.qubits[1])) {
          throw std::invalid_argument("cnot off the coupling graph in layer " +
                                      std::to_string(li));
        }
      }
    }
  }
}

Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.width != b.width) throw std::invalid_argument("width mismatch");
  Circuit out = a;
  out.layers.insert(out.layers.end(), b.layers.begin(), b.layers.end());
  return out;
}

namespace {

nlohmann::json op_to_json(const GateOp& op) {
  nlohmann::json j;
  j["name"] = gate_name_str(op.name);
  if (op.arity() == 1) {
    j["qubits"] = {op.qubits[0]};
  } else {
    j["qubits"] = {op.qubits[0], op.qubits[1]};
  }
  if (op.framed()) {
    std::string pre, post;
    for (int s = 0; s < op.arity(); ++s) {
      pre.push_back(pauli_char(op.pre[s]));
      post.push_back(pauli_char(op.post[s]));
    }
    j["pre"] = pre;
    j["post"] = post;
  }
  return j;
}

GateOp op_from_json(const nlohmann::json& j) {
  GateOp op;
  op.name = gate_name_from_str(j.at("name").get<std::string>());
  auto qs = j.at("qubits").get<std::vector<int>>();
  if (static_cast<int>(qs.size()) != op.arity()) {
    throw std::invalid_argument("op qubit count does not match gate arity");
  }
  op.qubits = {qs[0], op.arity() == 2 ? qs[1] : -1};
  if (j.contains("pre")) {
    const auto pre = j.at("pre").get<std::string>();
    const auto post = j.at("post").get<std::string>();
    if (static_cast<int>(pre.size()) != op.arity() ||
        static_cast<int>(post.size()) != op.arity()) {
      throw std::invalid_argument("frame length does not match gate arity");
    }
    for (int s = 0; s < op.arity(); ++s) {
      op.pre[s] = pauli_from_char(pre[s]);
      op.post[s] = pauli_from_char(post[s]);
    }
  }
  return op;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["width"] = c.width;
  j["seed"] = c.seed;
  j["topology"]["kind"] = topology_kind_str(c.topology.kind);
  j["topology"]["n_qubits"] = c.topology.n_qubits;
  if (c.topology.kind == Topology::Kind::Grid) {
    j["topology"]["rows"] = c.topology.grid_rows;
    j["topology"]["cols"] = c.topology.grid_cols;
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : c.topology.edges) edges.push_back({a, b});
  j["topology"]["edges"] = edges;
  nlohmann::json layers = nlohmann::json::array();
  for (const Layer& layer : c.layers) {
    nlohmann::json jl = nlohmann::json::array();
    for (const GateOp& op : layer.ops) jl.push_back(op_to_json(op));
    layers.push_back(jl);
  }
  j["layers"] = layers;
  return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Circuit c;
  c.width = j.at("width").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  const auto& jt = j.at("topology");
  c.topology.kind = topology_kind_from_str(jt.at("kind").get<std::string>());
  c.topology.n_qubits = jt.at("n_qubits").get<int>();
  if (jt.contains("rows")) {
    c.topology.grid_rows = jt.at("rows").get<int>();
    c.topology.grid_cols = jt.at("cols").get<int>();
  }
  for (const auto& je : jt.at("edges")) {
    c.topology.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
  }
  for (const auto& jl : j.at("layers")) {
    Layer layer;
    for (const auto& jo : jl) layer.ops.push_back(op_from_json(jo));
    c.layers.push_back(std::move(layer));
  }
  validate_circuit(c);
  return c;
}

}  // namespace qubench
