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

#include "qubench/circgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qubench/channel.hpp"
#include "qubench/gates.hpp"

namespace qubench {

const std::vector<GateName> kFillGates = {
    GateName::Id, GateName::X, GateName::Y,   GateName::Z,  GateName::H,
    GateName::S,  GateName::T, GateName::Sdg, GateName::Tdg};

namespace {

// Table of composition counts: row j holds the relative number of ways to
// write a total s as j parts, each in [0, cap]. Rows are rescaled by their
// maximum so deep circuits stay inside double range; sampling only ever
// compares weights within one row, so the scale cancels.
std::vector<std::vector<double>> composition_weights(int parts, int total,
                                                     int cap) {
  std::vector<std::vector<double>> rows(parts + 1,
                                        std::vector<double>(total + 1, 0.0));
  rows[0][0] = 1.0;
  for (int j = 1; j <= parts; ++j) {
    double row_max = 0.0;
    for (int s = 0; s <= total; ++s) {
      double acc = 0.0;
      for (int v = 0; v <= std::min(cap, s); ++v) acc += rows[j - 1][s - v];
      rows[j][s] = acc;
      row_max = std::max(row_max, acc);
    }
    if (row_max > 0.0) {
      for (int s = 0; s <= total; ++s) rows[j][s] /= row_max;
    }
  }
  return rows;
}

std::vector<int> sample_composition(int parts, int total, int cap, Rng& rng) {
  const auto rows = composition_weights(parts, total, cap);
  if (rows[parts][total] <= 0.0) {
    throw std::runtime_error("no feasible layer composition");
  }
  std::vector<int> out(parts, 0);
  int remaining = total;
  for (int j = parts; j >= 1; --j) {
    const int hi = std::min(cap, remaining);
    double mass = 0.0;
    for (int v = 0; v <= hi; ++v) mass += rows[j - 1][remaining - v];
    double u = rng.uniform01() * mass;
    int chosen = hi;
    for (int v = 0; v <= hi; ++v) {
      u -= rows[j - 1][remaining - v];
      if (u <= 0.0) {
        chosen = v;
        break;
      }
    }
    out[parts - j] = chosen;
    remaining -= chosen;
  }
  return out;
}

bool matching_extend(const std::vector<std::pair<int, int>>& edges,
                     std::size_t from, int need, unsigned used,
                     std::vector<std::pair<int, int>>& picked) {
  if (need == 0) return true;
  for (std::size_t i = from; i < edges.size(); ++i) {
    unsigned m = (1u << edges[i].first) | (1u << edges[i].second);
    if (used & m) continue;
    picked.push_back(edges[i]);
    if (matching_extend(edges, i + 1, need - 1, used | m, picked)) return true;
    picked.pop_back();
  }
  return false;
}

// Random matching of exactly `count` edges: shuffled greedy passes first,
// exhaustive search on a shuffled edge order as the fallback.
std::vector<std::pair<int, int>> sample_matching(const Topology& topology,
                                                 int count, Rng& rng) {
  if (count == 0) return {};
  std::vector<std::pair<int, int>> edges = topology.edges;
  for (int attempt = 0; attempt < 64; ++attempt) {
    rng.shuffle(edges);
    std::vector<std::pair<int, int>> picked;
    unsigned used = 0;
    for (const auto& e : edges) {
      unsigned m = (1u << e.first) | (1u << e.second);
      if (used & m) continue;
      picked.push_back(e);
      used |= m;
      if (static_cast<int>(picked.size()) == count) return picked;
    }
  }
  rng.shuffle(edges);
  std::vector<std::pair<int, int>> picked;
  if (!matching_extend(edges, 0, count, 0u, picked)) {
    throw std::runtime_error("no matching of requested size");
  }
  return picked;
}

}  // namespace

Circuit generate_random_circuit(int w, int d, double xi,
                                const Topology& topology,
                                std::uint64_t seed) {
  if (w < 1) throw std::invalid_argument("width must be >= 1");
  if (d < 1) throw std::invalid_argument("depth must be >= 1");
  if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("xi outside [0,1]");
  if (topology.n_qubits != w) {
    throw std::invalid_argument("topology size does not match width");
  }
  if (xi > 0.0 && topology.edges.empty()) {
    throw std::invalid_argument("xi > 0 requires a coupling edge");
  }
  const int alpha = static_cast<int>(std::nearbyint(w * d * xi / 2.0));
  const int cap = topology.edges.empty() ? 0 : topology.max_matching();
  if (alpha > d * cap) {
    throw std::runtime_error(
        "two-qubit gate budget " + std::to_string(alpha) +
        " exceeds depth x max matching = " + std::to_string(d * cap));
  }

  Rng rng(seed);
  const std::vector<int> layer_counts =
      alpha == 0 ? std::vector<int>(d, 0)
                 : sample_composition(d, alpha, cap, rng);

  Circuit c;
  c.width = w;
  c.seed = seed;
  c.topology = topology;
  c.layers.reserve(d);
  for (int li = 0; li < d; ++li) {
    Layer layer;
    std::vector<bool> busy(w, false);
    for (const auto& e : sample_matching(topology, layer_counts[li], rng)) {
      const bool flip = rng.coin();
      layer.ops.push_back(flip ? GateOp::cnot(e.second, e.first)
                               : GateOp::cnot(e.first, e.second));
      busy[e.first] = busy[e.second] = true;
    }
    for (int q = 0; q < w; ++q) {
      if (busy[q]) continue;
      layer.ops.push_back(
          GateOp::single(kFillGates[rng.below(kFillGates.size())], q));
    }
    c.layers.push_back(std::move(layer));
  }
  validate_circuit(c);
  return c;
}

CMatrix ideal_unitary(const Circuit& circuit) {
  if (circuit.width > 6) {
    throw std::invalid_argument("ideal_unitary supports width <= 6");
  }
  const int dim = dim_for_qubits(circuit.width);
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const Layer& layer : circuit.layers) {
    for (const GateOp& op : layer.ops) {
      std::vector<int> targets(op.qubits.begin(),
                               op.qubits.begin() + op.arity());
      u = embed_operator(op_unitary(op), targets, circuit.width) * u;
    }
  }
  return u;
}

GateOp invert_op(const GateOp& op) {
  GateOp out = op;
  out.name = gate_inverse(op.name);
  out.pre = op.post;
  out.post = op.pre;
  return out;
}

Layer invert_layer(const Layer& layer) {
  Layer out;
  out.ops.reserve(layer.ops.size());
  for (const GateOp& op : layer.ops) out.ops.push_back(invert_op(op));
  return out;
}

Circuit dagger_circuit(const Circuit& circuit) {
  Circuit out;
  out.width = circuit.width;
  out.seed = circuit.seed;
  out.topology = circuit.topology;
  out.layers.reserve(circuit.layers.size());
  for (auto it = circuit.layers.rbegin(); it != circuit.layers.rend(); ++it) {
    out.layers.push_back(invert_layer(*it));
  }
  return out;
}

Layer random_fill_layer(int w, Rng& rng) {
  Layer layer;
  for (int q = 0; q < w; ++q) {
    layer.ops.push_back(
        GateOp::single(kFillGates[rng.below(kFillGates.size())], q));
  }
  return layer;
}

std::vector<Layer> random_stabilizer_prep(int w, const Topology& topology,
                                          int n_layers, Rng& rng) {
  std::vector<Layer> layers;
  layers.reserve(n_layers);
  for (int li = 0; li < n_layers; ++li) {
    Layer layer;
    std::vector<bool> busy(w, false);
    if (!topology.edges.empty() && rng.coin()) {
      const auto e = topology.edges[rng.below(topology.edges.size())];
      const bool flip = rng.coin();
      layer.ops.push_back(flip ? GateOp::cnot(e.second, e.first)
                               : GateOp::cnot(e.first, e.second));
      busy[e.first] = busy[e.second] = true;
    }
    for (int q = 0; q < w; ++q) {
      if (busy[q]) continue;
      layer.ops.push_back(
          GateOp::single(rng.coin() ? GateName::H : GateName::S, q));
    }
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace qubench
