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

#include "qubench/qasm.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace qubench {

namespace {

void emit_pauli(std::ostringstream& out, Pauli p, int qubit) {
  if (p == Pauli::I) return;
  char c = pauli_char(p);
  out << static_cast<char>(c - 'A' + 'a') << " q[" << qubit << "];\n";
}

void emit_op(std::ostringstream& out, const GateOp& op) {
  for (int s = 0; s < op.arity(); ++s) emit_pauli(out, op.pre[s], op.qubits[s]);
  if (op.name == GateName::Cnot) {
    out << "cx q[" << op.qubits[0] << "],q[" << op.qubits[1] << "];\n";
  } else {
    out << gate_name_str(op.name) << " q[" << op.qubits[0] << "];\n";
  }
  for (int s = 0; s < op.arity(); ++s) {
    emit_pauli(out, op.post[s], op.qubits[s]);
  }
}

}  // namespace

std::string to_openqasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.width << "];\n";
  out << "creg c[" << circuit.width << "];\n";
  for (std::size_t li = 0; li < circuit.layers.size(); ++li) {
    if (li > 0) out << "barrier q;\n";
    for (const GateOp& op : circuit.layers[li].ops) emit_op(out, op);
  }
  out << "measure q -> c;\n";
  return out.str();
}

namespace {

struct LineScanner {
  std::string text;
  std::size_t pos = 0;

  bool next(std::string& line) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      line = text.substr(pos, end - pos);
      pos = end + 1;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
        line.pop_back();
      }
      if (!line.empty()) return true;
    }
    return false;
  }
};

int parse_qubit_ref(const std::string& s) {
  const auto open = s.find("q[");
  const auto close = s.find(']', open);
  if (open == std::string::npos || close == std::string::npos) {
    throw std::invalid_argument("bad qubit reference: " + s);
  }
  return std::stoi(s.substr(open + 2, close - open - 2));
}

// Ops accumulated between barriers are re-split into minimal layers so a
// qubit never appears twice in one layer.
void flush_group(std::vector<GateOp>& group, Circuit& c) {
  Layer layer;
  std::vector<bool> used(c.width, false);
  for (const GateOp& op : group) {
    bool collide = false;
    for (int s = 0; s < op.arity(); ++s) collide |= used[op.qubits[s]];
    if (collide) {
      c.layers.push_back(layer);
      layer = Layer{};
      used.assign(c.width, false);
    }
    layer.ops.push_back(op);
    for (int s = 0; s < op.arity(); ++s) used[op.qubits[s]] = true;
  }
  if (!layer.ops.empty()) c.layers.push_back(layer);
  group.clear();
}

}  // namespace

Circuit parse_openqasm(const std::string& text) {
  LineScanner scan{text};
  std::string line;
  Circuit c;
  c.width = 0;
  std::vector<GateOp> group;
  bool saw_header = false;
  while (scan.next(line)) {
    if (line.rfind("OPENQASM", 0) == 0) {
      saw_header = true;
      continue;
    }
    if (line.rfind("include", 0) == 0) continue;
    if (line.rfind("qreg", 0) == 0) {
      c.width = parse_qubit_ref(line);
      continue;
    }
    if (line.rfind("creg", 0) == 0) continue;
    if (line.rfind("barrier", 0) == 0) {
      flush_group(group, c);
      continue;
    }
    if (line.rfind("measure", 0) == 0) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) {
      throw std::invalid_argument("unparseable line: " + line);
    }
    const std::string head = line.substr(0, space);
    const std::string rest = line.substr(space + 1);
    if (head == "cx") {
      const auto comma = rest.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("bad cx line: " + line);
      }
      group.push_back(GateOp::cnot(parse_qubit_ref(rest.substr(0, comma)),
                                   parse_qubit_ref(rest.substr(comma + 1))));
    } else {
      group.push_back(GateOp::single(gate_name_from_str(head),
                                     parse_qubit_ref(rest)));
    }
  }
  if (!saw_header) throw std::invalid_argument("missing OPENQASM header");
  if (c.width < 1) throw std::invalid_argument("missing qreg declaration");
  flush_group(group, c);
  c.topology = Topology::complete(c.width);
  validate_circuit(c);
  return c;
}

}  // namespace qubench
