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

#include "qubench/gates.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qubench {

namespace {

const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CMatrix make_gate(GateName g) {
  CMatrix m;
  switch (g) {
    case GateName::Id:
      m = CMatrix::Identity(2, 2);
      break;
    case GateName::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      break;
    case GateName::Y:
      m.resize(2, 2);
      m << 0, -kI, kI, 0;
      break;
    case GateName::Z:
      m.resize(2, 2);
      m << 1, 0, 0, -1;
      break;
    case GateName::H:
      m.resize(2, 2);
      m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
      break;
    case GateName::S:
      m.resize(2, 2);
      m << 1, 0, 0, kI;
      break;
    case GateName::Sdg:
      m.resize(2, 2);
      m << 1, 0, 0, -kI;
      break;
    case GateName::T:
      m.resize(2, 2);
      m << 1, 0, 0, std::exp(kI * (M_PI / 4.0));
      break;
    case GateName::Tdg:
      m.resize(2, 2);
      m << 1, 0, 0, std::exp(-kI * (M_PI / 4.0));
      break;
    case GateName::Cnot:
      m = CMatrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      break;
  }
  return m;
}

const std::array<std::string, 10> kNames = {
    "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "cnot"};

}  // namespace

const std::string& gate_name_str(GateName g) {
  return kNames[static_cast<std::size_t>(g)];
}

GateName gate_name_from_str(const std::string& s) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == s) return static_cast<GateName>(i);
  }
  throw std::invalid_argument("unknown gate name: " + s);
}

int gate_arity(GateName g) { return g == GateName::Cnot ? 2 : 1; }

const CMatrix& gate_matrix(GateName g) {
  static const std::array<CMatrix, 10> mats = {
      make_gate(GateName::Id),  make_gate(GateName::X),
      make_gate(GateName::Y),   make_gate(GateName::Z),
      make_gate(GateName::H),   make_gate(GateName::S),
      make_gate(GateName::Sdg), make_gate(GateName::T),
      make_gate(GateName::Tdg), make_gate(GateName::Cnot)};
  return mats[static_cast<std::size_t>(g)];
}

GateName gate_inverse(GateName g) {
  switch (g) {
    case GateName::S: return GateName::Sdg;
    case GateName::Sdg: return GateName::S;
    case GateName::T: return GateName::Tdg;
    case GateName::Tdg: return GateName::T;
    default: return g;
  }
}

}  // namespace qubench
