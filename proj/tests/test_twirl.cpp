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

#include <cmath>
#include <string>

#include <doctest.h>

#include "qubench/circgen.hpp"
#include "qubench/circuit.hpp"
#include "qubench/gates.hpp"
#include "qubench/pauli.hpp"
#include "qubench/twirl.hpp"

using namespace qubench;

namespace {

// |tr(U^dag V)| = dim iff U = V up to a global phase.
bool equal_up_to_phase(const CMatrix& u, const CMatrix& v, double tol) {
  const double overlap = std::abs((u.adjoint() * v).trace());
  return std::abs(overlap - static_cast<double>(u.rows())) < tol;
}

int count_ops(const Circuit& c) {
  int n = 0;
  for (const Layer& layer : c.layers) n += static_cast<int>(layer.ops.size());
  return n;
}

Circuit cnot_then_single(int lonely_qubit) {
  // Layer 0 couples qubits 0 and 1; layer 1 touches only `lonely_qubit`,
  // leaving the other's correction to be folded backward.
  Circuit c;
  c.width = 2;
  c.topology = Topology::line(2);
  Layer l0;
  l0.ops.push_back(GateOp::cnot(0, 1));
  Layer l1;
  l1.ops.push_back(GateOp::single(GateName::T, lonely_qubit));
  c.layers = {l0, l1};
  return c;
}

}  // namespace

TEST_SUITE("pauli conjugation through cnot") {
  TEST_CASE("every pair matches the matrix computation") {
    const CMatrix& cnot = gate_matrix(GateName::Cnot);
    const char kChars[] = {'I', 'X', 'Y', 'Z'};
    for (char a : kChars) {
      for (char b : kChars) {
        const std::string in{a, b};
        const SignedPauliPair out = pauli_conjugate_through_cnot(in);
        const CMatrix lhs = cnot * pauli_string_matrix(in) * cnot;
        const CMatrix rhs = static_cast<double>(out.sign) *
                            pauli_string_matrix(out.label);
        CHECK(max_abs_diff(lhs, rhs) < 1e-14);
      }
    }
  }

  TEST_CASE("spot checks of the known table") {
    CHECK(pauli_conjugate_through_cnot("XI").label == "XX");
    CHECK(pauli_conjugate_through_cnot("IZ").label == "ZZ");
    CHECK(pauli_conjugate_through_cnot("XZ").label == "YY");
    CHECK(pauli_conjugate_through_cnot("XZ").sign == -1);
    CHECK(pauli_conjugate_through_cnot("ZI").label == "ZI");
    CHECK(pauli_conjugate_through_cnot("ZI").sign == 1);
  }
}

TEST_SUITE("randomized compiling") {
  TEST_CASE("preserves the ideal unitary up to global phase") {
    int checked = 0;
    for (std::uint64_t cs = 0; cs < 6; ++cs) {
      const Circuit c = generate_random_circuit(
          3, 5, 0.5, Topology::line(3), 1000 + cs);
      const CMatrix u = ideal_unitary(c);
      for (std::uint64_t ts = 0; ts < 4; ++ts) {
        const auto [twirled, records] = randomized_compile(c, 2000 + ts);
        validate_circuit(twirled);
        CHECK(equal_up_to_phase(u, ideal_unitary(twirled), 1e-10));
        ++checked;
      }
    }
    CHECK(checked == 24);
  }

  TEST_CASE("handles corrections on layers that skip qubits") {
    for (int lonely = 0; lonely < 2; ++lonely) {
      const Circuit c = cnot_then_single(lonely);
      const CMatrix u = ideal_unitary(c);
      for (std::uint64_t ts = 0; ts < 50; ++ts) {
        const auto [twirled, records] = randomized_compile(c, ts);
        CHECK(equal_up_to_phase(u, ideal_unitary(twirled), 1e-10));
      }
    }
  }

  TEST_CASE("keeps the circuit shape") {
    const Circuit c =
        generate_random_circuit(4, 6, 0.75, Topology::line(4), 55);
    const auto [twirled, records] = randomized_compile(c, 7);
    REQUIRE(twirled.depth() == c.depth());
    CHECK(count_ops(twirled) == count_ops(c));
    for (int li = 0; li < c.depth(); ++li) {
      REQUIRE(twirled.layers[li].ops.size() == c.layers[li].ops.size());
      for (std::size_t oi = 0; oi < c.layers[li].ops.size(); ++oi) {
        CHECK(twirled.layers[li].ops[oi].name == c.layers[li].ops[oi].name);
        CHECK(twirled.layers[li].ops[oi].qubits ==
              c.layers[li].ops[oi].qubits);
      }
    }
  }

  TEST_CASE("records one entry per coupling layer") {
    const Circuit c =
        generate_random_circuit(4, 8, 0.5, Topology::line(4), 9);
    int coupling_layers = 0;
    for (const Layer& layer : c.layers) {
      for (const GateOp& op : layer.ops) {
        if (op.arity() == 2) {
          ++coupling_layers;
          break;
        }
      }
    }
    const auto [twirled, records] = randomized_compile(c, 3);
    CHECK(static_cast<int>(records.size()) == coupling_layers);
  }

  TEST_CASE("a circuit without couplings is left alone") {
    const Circuit c =
        generate_random_circuit(3, 5, 0.0, Topology::line(3), 21);
    const auto [twirled, records] = randomized_compile(c, 77);
    CHECK(records.empty());
    CHECK(circuit_to_json(twirled) == circuit_to_json(c));
  }

  TEST_CASE("full-frame compilation dresses every layer") {
    const Circuit c =
        generate_random_circuit(3, 5, 0.5, Topology::line(3), 21);
    const CMatrix u = ideal_unitary(c);
    for (std::uint64_t ts = 0; ts < 10; ++ts) {
      const auto [framed, records] = pauli_frame_compile(c, 300 + ts);
      validate_circuit(framed);
      CHECK(records.size() == 5);
      CHECK(equal_up_to_phase(u, ideal_unitary(framed), 1e-10));
      REQUIRE(framed.depth() == c.depth());
      for (int li = 0; li < c.depth(); ++li) {
        CHECK(framed.layers[li].ops.size() == c.layers[li].ops.size());
      }
    }
  }

  TEST_CASE("deterministic in the twirl seed") {
    const Circuit c =
        generate_random_circuit(2, 6, 0.75, Topology::line(2), 5);
    const auto [a, ra] = randomized_compile(c, 99);
    const auto [b, rb] = randomized_compile(c, 99);
    CHECK(circuit_to_json(a) == circuit_to_json(b));
    const auto [d, rd] = randomized_compile(c, 100);
    CHECK(circuit_to_json(a) != circuit_to_json(d));
  }

  TEST_CASE("pinned draws produce the expected frames") {
    Circuit c;
    c.width = 2;
    c.topology = Topology::line(2);
    Layer l0;
    l0.ops.push_back(GateOp::cnot(0, 1));
    Layer l1;
    l1.ops.push_back(GateOp::single(GateName::Id, 0));
    l1.ops.push_back(GateOp::single(GateName::Id, 1));
    c.layers = {l0, l1};

    // Twirl the coupling layer with X on the control, I on the target.
    const auto [twirled, records] = randomized_compile_with(
        c, [](int layer, int qubit) {
          return (layer == 0 && qubit == 0) ? Pauli::X : Pauli::I;
        });
    REQUIRE(records.size() == 1);
    CHECK(records[0].twirl[0] == "X");
    CHECK(records[0].twirl[1] == "I");
    // cnot (X o I) cnot = X o X, so both qubits carry an X correction.
    CHECK(records[0].correction[0] == "X");
    CHECK(records[0].correction[1] == "X");
    const GateOp& cn = twirled.layers[0].ops[0];
    CHECK(cn.pre[0] == Pauli::X);
    CHECK(cn.pre[1] == Pauli::I);
    // Corrections ride the next layer's pre frames.
    CHECK(twirled.layers[1].ops[0].pre[0] == Pauli::X);
    CHECK(twirled.layers[1].ops[1].pre[0] == Pauli::X);
    CHECK(equal_up_to_phase(ideal_unitary(c), ideal_unitary(twirled), 1e-12));
  }
}
