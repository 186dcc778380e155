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

#include <map>
#include <string>
#include <vector>

#include "qubench/channel.hpp"

namespace qubench {

enum class NoiseKind { T1, T2, Coherent1Q, Coherent2Q, Depolarizing };
enum class GateClass { OneQubitGate, TwoQubitGate, Idle, StatePrep,
                       Measurement };

std::string noise_kind_str(NoiseKind k);
NoiseKind noise_kind_from_str(const std::string& s);
std::string gate_class_str(GateClass c);
GateClass gate_class_from_str(const std::string& s);

// One error source. strength is the raw channel parameter: gamma for T1,
// lambda for T2, the rotation angle for coherent kinds, p for depolarizing.
// axis names the rotation generator for coherent kinds ("Z", "ZZ", ...).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Depolarizing;
  double strength = 0.0;
  std::string axis;

  static NoiseSpec t1(double gamma);
  static NoiseSpec t2(double lambda);
  static NoiseSpec coherent_1q(double theta, std::string axis = "Z");
  static NoiseSpec coherent_2q(double theta, std::string axis = "ZZ");
  static NoiseSpec depolarizing(double p);
};

void validate_noise_spec(const NoiseSpec& spec);

// Error sources per gate class. An absent class is noiseless. Idle noise,
// when present, hits every qubit a layer leaves untouched; StatePrep and
// Measurement noise are applied per qubit at the protocol boundaries.
struct NoiseModel {
  std::map<GateClass, std::vector<NoiseSpec>> per_gate_class;

  bool is_noiseless() const;

  // Same specs on both gate classes, the usual sweep construction.
  static NoiseModel uniform(const NoiseSpec& spec);
};

std::string noise_model_to_json(const NoiseModel& model);
NoiseModel noise_model_from_json(const std::string& text);

// Basic channels. Strength ranges are validated.
KrausChannel amplitude_damping_channel(double gamma);
KrausChannel phase_damping_channel(double lambda);
KrausChannel depolarizing_channel(double p, int n_qubits);
KrausChannel coherent_error_channel(double theta, const std::string& axis,
                                    int n_qubits);

// Channel for one NoiseSpec acting on n_qubits. T1/T2 and Coherent1Q widen
// to a tensor product over the qubits; Coherent2Q requires n_qubits = 2.
KrausChannel noise_spec_channel(const NoiseSpec& spec, int n_qubits);

// Composition, in listed order, of every channel attached to the class,
// acting on n_qubits. Identity if the class has no entries.
KrausChannel build_gate_noise(const NoiseModel& model, GateClass gate_class,
                              int n_qubits);

// Strength helpers for hardware-style time constants.
double t1_gamma(double gate_time, double t1);
double t2_lambda(double gate_time, double t2);

}  // namespace qubench
