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

#include "qubench/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qubench/channel.hpp"
#include "qubench/circgen.hpp"
#include "qubench/pauli.hpp"
#include "qubench/rng.hpp"
#include "qubench/simulate.hpp"
#include "qubench/twirl.hpp"

namespace qubench {

std::string protocol_str(Protocol p) {
  switch (p) {
    case Protocol::DRB: return "drb";
    case Protocol::MRB: return "mrb";
    case Protocol::CRB: return "crb";
  }
  throw std::logic_error("unreachable");
}

Protocol protocol_from_str(const std::string& s) {
  if (s == "drb") return Protocol::DRB;
  if (s == "mrb") return Protocol::MRB;
  if (s == "crb") return Protocol::CRB;
  throw std::invalid_argument("unknown protocol: " + s);
}

void validate_run_spec(const ProtocolRunSpec& spec) {
  if (spec.w < 1 || spec.w > 5) {
    throw std::invalid_argument("width outside [1, 5]");
  }
  if (spec.topology.n_qubits != spec.w) {
    throw std::invalid_argument("topology size does not match width");
  }
  if (spec.xi < 0.0 || spec.xi > 1.0) {
    throw std::invalid_argument("xi outside [0, 1]");
  }
  if (spec.m_list.size() < 2) {
    throw std::invalid_argument("need at least 2 sequence lengths");
  }
  for (std::size_t i = 0; i < spec.m_list.size(); ++i) {
    if (spec.m_list[i] < 1 ||
        (i > 0 && spec.m_list[i] <= spec.m_list[i - 1])) {
      throw std::invalid_argument("m_list must be strictly increasing");
    }
  }
  if (spec.circuits_per_depth < 1) {
    throw std::invalid_argument("circuits_per_depth must be >= 1");
  }
  if (spec.protocol == Protocol::MRB) {
    for (int m : spec.m_list) {
      if (m % 2 != 0) {
        throw std::invalid_argument("mirror RB needs even sequence lengths");
      }
    }
  }
}

std::uint64_t cell_seed(std::uint64_t master, Protocol protocol, int m, int k,
                        int pauli_index) {
  return seed_chain({master, static_cast<std::uint64_t>(protocol) + 1,
                     static_cast<std::uint64_t>(m),
                     static_cast<std::uint64_t>(k),
                     static_cast<std::uint64_t>(pauli_index)});
}

double survival_probability(const DensityMatrix& final_state,
                            const std::string& target_bitstring) {
  if (static_cast<int>(target_bitstring.size()) != final_state.n_qubits()) {
    throw std::invalid_argument("target length does not match state width");
  }
  const int idx = index_from_bitstring(target_bitstring);
  const double p = final_state.data()(idx, idx).real();
  if (p < -1e-10 || p > 1.0 + 1e-10) {
    throw std::logic_error("diagonal entry outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

double effective_polarization(const std::vector<double>& probs,
                              int target_index, int w) {
  if (static_cast<int>(probs.size()) != dim_for_qubits(w)) {
    throw std::invalid_argument("distribution size does not match width");
  }
  if (target_index < 0 || target_index >= dim_for_qubits(w)) {
    throw std::invalid_argument("target index out of range");
  }
  double weighted = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    const int k = std::popcount(x ^ static_cast<std::size_t>(target_index));
    weighted += probs[x] * std::pow(-0.5, k);
  }
  const double dd = std::pow(4.0, w);
  return dd / (dd - 1.0) * weighted - 1.0 / (dd - 1.0);
}

namespace {

// Exact or shot-sampled outcome distribution after boundary noise.
std::vector<double> outcome_distribution(const ProtocolRunSpec& spec,
                                         const Circuit& circuit,
                                         std::uint64_t sample_seed) {
  DensityMatrix rho = DensityMatrix::zero_state(spec.w);
  rho = apply_boundary_noise(rho, spec.noise, GateClass::StatePrep);
  rho = apply_compiled(compile_circuit(circuit, spec.noise), rho);
  rho = apply_boundary_noise(rho, spec.noise, GateClass::Measurement);
  std::vector<double> probs = rho.probabilities();
  if (spec.shots == 0) return probs;
  const auto counts = sample_counts(probs, spec.shots, sample_seed);
  std::vector<double> freqs(probs.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    freqs[i] = static_cast<double>(counts[i]) / spec.shots;
  }
  return freqs;
}

Circuit base_circuit(const ProtocolRunSpec& spec, std::uint64_t seed) {
  Circuit c;
  c.width = spec.w;
  c.seed = seed;
  c.topology = spec.topology;
  return c;
}

}  // namespace

DrbInstance drb_instance(const ProtocolRunSpec& spec, int m, int k) {
  const std::uint64_t s = cell_seed(spec.seed, Protocol::DRB, m, k);
  Rng prep_rng(seed_chain({s, 11}));
  DrbInstance inst;
  inst.prep = base_circuit(spec, s);
  inst.prep.layers =
      random_stabilizer_prep(spec.w, spec.topology, spec.w + 2, prep_rng);
  const Circuit core = generate_random_circuit(spec.w, m, spec.xi,
                                               spec.topology,
                                               seed_chain({s, 12}));
  Circuit forward = inst.prep;
  forward.layers.insert(forward.layers.end(), core.layers.begin(),
                        core.layers.end());
  inst.full = concat(forward, dagger_circuit(forward));
  return inst;
}

std::vector<DecaySample> run_drb(const ProtocolRunSpec& spec) {
  validate_run_spec(spec);
  if (spec.protocol != Protocol::DRB) {
    throw std::invalid_argument("spec is not a direct-RB spec");
  }
  std::vector<DecaySample> samples;
  for (int m : spec.m_list) {
    for (int k = 0; k < spec.circuits_per_depth; ++k) {
      const DrbInstance inst = drb_instance(spec, m, k);
      const std::uint64_t s = inst.full.seed;
      const auto probs =
          outcome_distribution(spec, inst.full, seed_chain({s, 13}));
      DecaySample sample;
      sample.depth = 2 * m;
      sample.value = probs[0];
      sample.circuit_seed = s;
      samples.push_back(sample);
    }
  }
  return samples;
}

std::vector<DecaySample> run_mrb(const ProtocolRunSpec& spec) {
  validate_run_spec(spec);
  if (spec.protocol != Protocol::MRB) {
    throw std::invalid_argument("spec is not a mirror-RB spec");
  }
  std::vector<DecaySample> samples;
  for (int m : spec.m_list) {
    for (int k = 0; k < spec.circuits_per_depth; ++k) {
      const std::uint64_t s = cell_seed(spec.seed, Protocol::MRB, m, k);
      Rng r_rng(seed_chain({s, 21}));
      const Layer opening = random_fill_layer(spec.w, r_rng);
      const Circuit core = generate_random_circuit(
          spec.w, m / 2, spec.xi, spec.topology, seed_chain({s, 22}));
      Rng pauli_rng(seed_chain({s, 23}));
      std::vector<std::vector<Pauli>> dress(core.layers.size());
      for (auto& q : dress) {
        q.resize(spec.w);
        for (int i = 0; i < spec.w; ++i) {
          q[i] = static_cast<Pauli>(pauli_rng.below(4));
        }
      }
      std::vector<Pauli> closing(spec.w);
      for (int i = 0; i < spec.w; ++i) {
        closing[i] = static_cast<Pauli>(pauli_rng.below(4));
      }

      Circuit full = base_circuit(spec, s);
      full.layers.push_back(opening);
      for (std::size_t j = 0; j < core.layers.size(); ++j) {
        Layer layer = core.layers[j];
        for (GateOp& op : layer.ops) {
          for (int slot = 0; slot < op.arity(); ++slot) {
            op.pre[slot] = dress[j][op.qubits[slot]];
          }
        }
        full.layers.push_back(std::move(layer));
      }
      for (std::size_t j = core.layers.size(); j-- > 0;) {
        Layer layer = invert_layer(core.layers[j]);
        for (GateOp& op : layer.ops) {
          for (int slot = 0; slot < op.arity(); ++slot) {
            op.post[slot] = dress[j][op.qubits[slot]];
          }
        }
        full.layers.push_back(std::move(layer));
      }
      Layer final_layer = invert_layer(opening);
      for (GateOp& op : final_layer.ops) {
        op.post[0] = closing[op.qubits[0]];
      }
      full.layers.push_back(std::move(final_layer));

      // The dressings cancel pairwise, so the net ideal map is the closing
      // Pauli layer alone and the ideal outcome is one basis state.
      const CMatrix u = ideal_unitary(full);
      int target = 0;
      double best = 0.0;
      for (int idx = 0; idx < dim_for_qubits(spec.w); ++idx) {
        const double p = std::norm(u(idx, 0));
        if (p > best) {
          best = p;
          target = idx;
        }
      }
      if (best < 1.0 - 1e-9) {
        throw std::logic_error("mirror circuit is not a Pauli in disguise");
      }

      const auto probs = outcome_distribution(spec, full, seed_chain({s, 24}));
      DecaySample sample;
      sample.depth = m;
      sample.value = effective_polarization(probs, target, spec.w);
      sample.circuit_seed = s;
      samples.push_back(sample);
    }
  }
  return samples;
}

Circuit crb_cycle(const ProtocolRunSpec& spec) {
  // The benchmarked cycle is a layer pair: a fill layer of one-qubit gates
  // on every qubit, then a coupling layer holding the two-qubit gates. The
  // coupling layer reuses the generator's edge placement for a depth-1
  // draw, with its one-qubit padding stripped; at xi = 0 the pair
  // degenerates to the fill layer alone.
  Circuit cycle;
  cycle.width = spec.w;
  cycle.seed = seed_chain({spec.seed, 3, 777});
  cycle.topology = spec.topology;
  Rng fill_rng(seed_chain({spec.seed, 3, 778}));
  cycle.layers.push_back(random_fill_layer(spec.w, fill_rng));
  const Circuit couplings = generate_random_circuit(
      spec.w, 1, spec.xi, spec.topology, seed_chain({spec.seed, 3, 777}));
  Layer coupling;
  for (const GateOp& op : couplings.layers[0].ops) {
    if (op.arity() == 2) coupling.ops.push_back(op);
  }
  if (!coupling.ops.empty()) cycle.layers.push_back(coupling);
  return cycle;
}

std::vector<std::string> crb_pauli_set(int w, std::uint64_t seed,
                                       bool* exhaustive) {
  const int all = static_cast<int>(std::pow(4.0, w));
  std::vector<std::string> labels;
  if (w <= 2) {
    if (exhaustive != nullptr) *exhaustive = true;
    for (int idx = 1; idx < all; ++idx) {
      labels.push_back(pauli_label_from_index(idx, w));
    }
    return labels;
  }
  if (exhaustive != nullptr) *exhaustive = false;
  Rng rng(seed_chain({seed, 3, 999}));
  std::set<int> chosen;
  while (static_cast<int>(chosen.size()) < 20) {
    chosen.insert(1 + static_cast<int>(rng.below(all - 1)));
  }
  for (int idx : chosen) labels.push_back(pauli_label_from_index(idx, w));
  return labels;
}

namespace {

// Layers mapping |0...0> to the +1 eigenstate of the probe Pauli: h for X,
// h then s for Y, nothing for I or Z. Qubits with no prep gate stay idle.
std::vector<Layer> crb_prep_layers(const std::string& pauli) {
  Layer first, second;
  for (std::size_t q = 0; q < pauli.size(); ++q) {
    if (pauli[q] == 'X' || pauli[q] == 'Y') {
      first.ops.push_back(GateOp::single(GateName::H, static_cast<int>(q)));
    }
    if (pauli[q] == 'Y') {
      second.ops.push_back(GateOp::single(GateName::S, static_cast<int>(q)));
    }
  }
  std::vector<Layer> layers;
  if (!first.ops.empty()) layers.push_back(first);
  if (!second.ops.empty()) layers.push_back(second);
  return layers;
}

}  // namespace

std::vector<DecaySample> run_crb_with_cycle(const ProtocolRunSpec& spec,
                                            const Circuit& cycle) {
  validate_run_spec(spec);
  if (spec.protocol != Protocol::CRB) {
    throw std::invalid_argument("spec is not a cycle-RB spec");
  }
  if (cycle.width != spec.w || cycle.depth() < 1) {
    throw std::invalid_argument(
        "cycle must be a nonempty circuit at the spec width");
  }
  const int dim = dim_for_qubits(spec.w);
  const CMatrix cycle_u = ideal_unitary(cycle);
  const auto paulis = crb_pauli_set(spec.w, spec.seed, nullptr);

  std::vector<DecaySample> samples;
  for (std::size_t pi = 0; pi < paulis.size(); ++pi) {
    const std::string& probe = paulis[pi];
    const CMatrix probe_op = pauli_string_matrix(probe);
    const std::vector<Layer> prep = crb_prep_layers(probe);
    for (int m : spec.m_list) {
      // The observable the ideal circuit would map the probe to.
      CMatrix um = CMatrix::Identity(dim, dim);
      for (int i = 0; i < m; ++i) um = cycle_u * um;
      const CMatrix observable = um * probe_op * um.adjoint();
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(observable);

      for (int k = 0; k < spec.circuits_per_depth; ++k) {
        const std::uint64_t s = cell_seed(spec.seed, Protocol::CRB, m, k,
                                          static_cast<int>(pi) + 1);
        Circuit block = base_circuit(spec, s);
        for (int i = 0; i < m; ++i) {
          block.layers.insert(block.layers.end(), cycle.layers.begin(),
                              cycle.layers.end());
        }
        auto [twirled, records] =
            pauli_frame_compile(block, seed_chain({s, 31}));

        Circuit full = base_circuit(spec, s);
        full.layers = crb_prep_layers(probe);
        full.layers.insert(full.layers.end(), twirled.layers.begin(),
                           twirled.layers.end());

        DensityMatrix rho = DensityMatrix::zero_state(spec.w);
        rho = apply_boundary_noise(rho, spec.noise, GateClass::StatePrep);
        rho = apply_compiled(compile_circuit(full, spec.noise), rho);
        rho = apply_boundary_noise(rho, spec.noise, GateClass::Measurement);

        double value;
        if (spec.shots == 0) {
          value = (observable * rho.data()).trace().real();
        } else {
          // Measure in the observable's eigenbasis and average eigenvalues.
          const CMatrix rotated =
              eig.eigenvectors().adjoint() * rho.data() * eig.eigenvectors();
          std::vector<double> probs(dim);
          for (int i = 0; i < dim; ++i) {
            probs[i] = std::clamp(rotated(i, i).real(), 0.0, 1.0);
          }
          double norm = 0.0;
          for (double p : probs) norm += p;
          for (double& p : probs) p /= norm;
          const auto counts =
              sample_counts(probs, spec.shots, seed_chain({s, 32}));
          value = 0.0;
          for (int i = 0; i < dim; ++i) {
            value += eig.eigenvalues()(i) *
                     (static_cast<double>(counts[i]) / spec.shots);
          }
        }
        DecaySample sample;
        sample.depth = m;
        sample.value = std::clamp(value, -1.0, 1.0);
        sample.circuit_seed = s;
        sample.pauli = probe;
        samples.push_back(sample);
      }
    }
  }
  return samples;
}

std::vector<DecaySample> run_crb(const ProtocolRunSpec& spec) {
  return run_crb_with_cycle(spec, crb_cycle(spec));
}

std::vector<DecaySample> run_protocol(const ProtocolRunSpec& spec) {
  switch (spec.protocol) {
    case Protocol::DRB: return run_drb(spec);
    case Protocol::MRB: return run_mrb(spec);
    case Protocol::CRB: return run_crb(spec);
  }
  throw std::logic_error("unreachable");
}

std::vector<Layer> reference_layer_ensemble(const ProtocolRunSpec& spec) {
  validate_run_spec(spec);
  std::vector<Layer> layers;
  const int m_top = spec.m_list.back();
  switch (spec.protocol) {
    case Protocol::DRB:
      for (int k = 0; k < spec.circuits_per_depth; ++k) {
        const std::uint64_t s = cell_seed(spec.seed, Protocol::DRB, m_top, k);
        const Circuit core = generate_random_circuit(
            spec.w, m_top, spec.xi, spec.topology, seed_chain({s, 12}));
        layers.insert(layers.end(), core.layers.begin(), core.layers.end());
      }
      return layers;
    case Protocol::MRB:
      for (int k = 0; k < spec.circuits_per_depth; ++k) {
        const std::uint64_t s = cell_seed(spec.seed, Protocol::MRB, m_top, k);
        const Circuit core = generate_random_circuit(
            spec.w, m_top / 2, spec.xi, spec.topology, seed_chain({s, 22}));
        for (const Layer& layer : core.layers) {
          layers.push_back(layer);
          layers.push_back(invert_layer(layer));
        }
      }
      return layers;
    case Protocol::CRB: {
      const Circuit cycle = crb_cycle(spec);
      layers.insert(layers.end(), cycle.layers.begin(), cycle.layers.end());
      return layers;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Circuit> reference_circuit_ensemble(const ProtocolRunSpec& spec) {
  validate_run_spec(spec);
  std::vector<Circuit> circuits;
  const int m_top = spec.m_list.back();
  switch (spec.protocol) {
    case Protocol::DRB:
      for (int k = 0; k < spec.circuits_per_depth; ++k) {
        const std::uint64_t s = cell_seed(spec.seed, Protocol::DRB, m_top, k);
        circuits.push_back(generate_random_circuit(
            spec.w, m_top, spec.xi, spec.topology, seed_chain({s, 12})));
      }
      return circuits;
    case Protocol::MRB:
      for (int k = 0; k < spec.circuits_per_depth; ++k) {
        const std::uint64_t s = cell_seed(spec.seed, Protocol::MRB, m_top, k);
        circuits.push_back(generate_random_circuit(
            spec.w, m_top / 2, spec.xi, spec.topology, seed_chain({s, 22})));
      }
      return circuits;
    case Protocol::CRB:
      circuits.push_back(crb_cycle(spec));
      return circuits;
  }
  throw std::logic_error("unreachable");
}

std::vector<TwirlRecord> crb_twirl_records(const ProtocolRunSpec& spec,
                                           const Circuit& cycle, int m,
                                           std::uint64_t sample_seed) {
  if (cycle.width != spec.w || cycle.depth() < 1) {
    throw std::invalid_argument(
        "cycle must be a nonempty circuit at the spec width");
  }
  Circuit block = base_circuit(spec, sample_seed);
  for (int i = 0; i < m; ++i) {
    block.layers.insert(block.layers.end(), cycle.layers.begin(),
                        cycle.layers.end());
  }
  return pauli_frame_compile(block, seed_chain({sample_seed, 31})).second;
}

}  // namespace qubench
