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

#include "qubench/noise.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qubench/pauli.hpp"

namespace qubench {

std::string noise_kind_str(NoiseKind k) {
  switch (k) {
    case NoiseKind::T1: return "t1";
    case NoiseKind::T2: return "t2";
    case NoiseKind::Coherent1Q: return "coherent_1q";
    case NoiseKind::Coherent2Q: return "coherent_2q";
    case NoiseKind::Depolarizing: return "depolarizing";
  }
  throw std::logic_error("unreachable");
}

NoiseKind noise_kind_from_str(const std::string& s) {
  if (s == "t1") return NoiseKind::T1;
  if (s == "t2") return NoiseKind::T2;
  if (s == "coherent_1q") return NoiseKind::Coherent1Q;
  if (s == "coherent_2q") return NoiseKind::Coherent2Q;
  if (s == "depolarizing") return NoiseKind::Depolarizing;
  throw std::invalid_argument("unknown noise kind: " + s);
}

std::string gate_class_str(GateClass c) {
  switch (c) {
    case GateClass::OneQubitGate: return "one_qubit_gate";
    case GateClass::TwoQubitGate: return "two_qubit_gate";
    case GateClass::Idle: return "idle";
    case GateClass::StatePrep: return "state_prep";
    case GateClass::Measurement: return "measurement";
  }
  throw std::logic_error("unreachable");
}

GateClass gate_class_from_str(const std::string& s) {
  if (s == "one_qubit_gate") return GateClass::OneQubitGate;
  if (s == "two_qubit_gate") return GateClass::TwoQubitGate;
  if (s == "idle") return GateClass::Idle;
  if (s == "state_prep") return GateClass::StatePrep;
  if (s == "measurement") return GateClass::Measurement;
  throw std::invalid_argument("unknown gate class: " + s);
}

NoiseSpec NoiseSpec::t1(double gamma) { return {NoiseKind::T1, gamma, ""}; }
NoiseSpec NoiseSpec::t2(double lambda) { return {NoiseKind::T2, lambda, ""}; }
NoiseSpec NoiseSpec::coherent_1q(double theta, std::string axis) {
  return {NoiseKind::Coherent1Q, theta, std::move(axis)};
}
NoiseSpec NoiseSpec::coherent_2q(double theta, std::string axis) {
  return {NoiseKind::Coherent2Q, theta, std::move(axis)};
}
NoiseSpec NoiseSpec::depolarizing(double p) {
  return {NoiseKind::Depolarizing, p, ""};
}

void validate_noise_spec(const NoiseSpec& spec) {
  const bool coherent = spec.kind == NoiseKind::Coherent1Q ||
                        spec.kind == NoiseKind::Coherent2Q;
  if (coherent) {
    if (spec.strength < 0.0 || spec.strength > M_PI) {
      throw std::invalid_argument("coherent angle outside [0, pi]");
    }
    const std::size_t want = spec.kind == NoiseKind::Coherent1Q ? 1 : 2;
    if (spec.axis.size() != want) {
      throw std::invalid_argument("coherent axis length mismatch");
    }
    for (char c : spec.axis) pauli_from_char(c);
  } else {
    if (spec.strength < 0.0 || spec.strength > 1.0) {
      throw std::invalid_argument("noise strength outside [0, 1]");
    }
    if (!spec.axis.empty()) {
      throw std::invalid_argument("axis only applies to coherent kinds");
    }
  }
}

bool NoiseModel::is_noiseless() const {
  for (const auto& [cls, specs] : per_gate_class) {
    if (!specs.empty()) return false;
  }
  return true;
}

NoiseModel NoiseModel::uniform(const NoiseSpec& spec) {
  NoiseModel m;
  m.per_gate_class[GateClass::OneQubitGate] = {spec};
  m.per_gate_class[GateClass::TwoQubitGate] = {spec};
  return m;
}

std::string noise_model_to_json(const NoiseModel& model) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [cls, specs] : model.per_gate_class) {
    for (const NoiseSpec& spec : specs) {
      nlohmann::json je;
      je["gate_class"] = gate_class_str(cls);
      je["kind"] = noise_kind_str(spec.kind);
      je["strength"] = spec.strength;
      if (!spec.axis.empty()) je["axis"] = spec.axis;
      j.push_back(je);
    }
  }
  return j.dump(2);
}

NoiseModel noise_model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("noise model must be a list");
  NoiseModel model;
  for (const auto& je : j) {
    NoiseSpec spec;
    spec.kind = noise_kind_from_str(je.at("kind").get<std::string>());
    spec.strength = je.at("strength").get<double>();
    if (je.contains("axis")) spec.axis = je.at("axis").get<std::string>();
    validate_noise_spec(spec);
    const GateClass cls =
        gate_class_from_str(je.at("gate_class").get<std::string>());
    model.per_gate_class[cls].push_back(spec);
  }
  return model;
}

KrausChannel amplitude_damping_channel(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("gamma outside [0, 1]");
  }
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel::from_ops(1, {k0, k1});
}

KrausChannel phase_damping_channel(double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("lambda outside [0, 1]");
  }
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - lambda);
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(1, 1) = std::sqrt(lambda);
  return KrausChannel::from_ops(1, {k0, k1});
}

KrausChannel depolarizing_channel(double p, int n_qubits) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0, 1]");
  if (n_qubits < 1 || n_qubits > 2) {
    throw std::invalid_argument("depolarizing supports 1 or 2 qubits");
  }
  // (1-p) rho + p I/2^n as a Pauli mixture: identity keeps weight
  // 1 - p + p/4^n, every other Pauli string gets p/4^n.
  const int strings = n_qubits == 1 ? 4 : 16;
  std::vector<CMatrix> ops;
  ops.reserve(strings);
  for (int idx = 0; idx < strings; ++idx) {
    const double weight =
        idx == 0 ? 1.0 - p + p / strings : p / strings;
    ops.push_back(std::sqrt(weight) *
                  pauli_string_matrix(pauli_label_from_index(idx, n_qubits)));
  }
  return KrausChannel::from_ops(n_qubits, ops);
}

KrausChannel coherent_error_channel(double theta, const std::string& axis,
                                    int n_qubits) {
  if (theta < 0.0 || theta > M_PI) {
    throw std::invalid_argument("theta outside [0, pi]");
  }
  if (static_cast<int>(axis.size()) != n_qubits) {
    throw std::invalid_argument("axis length does not match qubit count");
  }
  const CMatrix p = pauli_string_matrix(axis);
  const int dim = p.rows();
  // exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P for Pauli P.
  CMatrix u = std::cos(theta / 2.0) * CMatrix::Identity(dim, dim) -
              Complex(0.0, std::sin(theta / 2.0)) * p;
  return KrausChannel::from_unitary(n_qubits, u);
}

KrausChannel noise_spec_channel(const NoiseSpec& spec, int n_qubits) {
  validate_noise_spec(spec);
  if (n_qubits < 1 || n_qubits > 2) {
    throw std::invalid_argument("noise channels act on 1 or 2 qubits");
  }
  switch (spec.kind) {
    case NoiseKind::T1: {
      KrausChannel one = amplitude_damping_channel(spec.strength);
      return n_qubits == 1 ? one : tensor_channel(one, one);
    }
    case NoiseKind::T2: {
      KrausChannel one = phase_damping_channel(spec.strength);
      return n_qubits == 1 ? one : tensor_channel(one, one);
    }
    case NoiseKind::Coherent1Q: {
      KrausChannel one =
          coherent_error_channel(spec.strength, spec.axis, 1);
      return n_qubits == 1 ? one : tensor_channel(one, one);
    }
    case NoiseKind::Coherent2Q: {
      if (n_qubits != 2) {
        throw std::invalid_argument("coherent_2q requires a 2-qubit slot");
      }
      return coherent_error_channel(spec.strength, spec.axis, 2);
    }
    case NoiseKind::Depolarizing:
      return depolarizing_channel(spec.strength, n_qubits);
  }
  throw std::logic_error("unreachable");
}

KrausChannel build_gate_noise(const NoiseModel& model, GateClass gate_class,
                              int n_qubits) {
  KrausChannel out = KrausChannel::identity(n_qubits);
  const auto it = model.per_gate_class.find(gate_class);
  if (it == model.per_gate_class.end()) return out;
  for (const NoiseSpec& spec : it->second) {
    out = compose(out, noise_spec_channel(spec, n_qubits));
  }
  return out;
}

double t1_gamma(double gate_time, double t1) {
  if (gate_time < 0.0 || t1 <= 0.0) {
    throw std::invalid_argument("times must be positive");
  }
  return 1.0 - std::exp(-gate_time / t1);
}

double t2_lambda(double gate_time, double t2) {
  if (gate_time < 0.0 || t2 <= 0.0) {
    throw std::invalid_argument("times must be positive");
  }
  return 1.0 - std::exp(-gate_time / t2);
}

}  // namespace qubench
