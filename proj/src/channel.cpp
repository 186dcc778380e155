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

#include "qubench/channel.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qubench/pauli.hpp"

namespace qubench {

KrausChannel KrausChannel::from_ops(int n_qubits, std::vector<CMatrix> ops) {
  if (n_qubits < 1) throw std::invalid_argument("channel width must be >= 1");
  if (ops.empty()) throw std::invalid_argument("channel needs >= 1 Kraus op");
  const std::int64_t dim = dim_for_qubits(n_qubits);
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const CMatrix& k : ops) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument("Kraus op dimension mismatch");
    }
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, CMatrix::Identity(dim, dim)) > kTpTol) {
    throw std::invalid_argument("Kraus set is not trace preserving");
  }
  return KrausChannel(n_qubits, std::move(ops));
}

KrausChannel KrausChannel::identity(int n_qubits) {
  const std::int64_t dim = dim_for_qubits(n_qubits);
  std::vector<CMatrix> ops{CMatrix::Identity(dim, dim)};
  return KrausChannel(n_qubits, std::move(ops));
}

KrausChannel KrausChannel::from_unitary(int n_qubits, const CMatrix& u) {
  return from_ops(n_qubits, {u});
}

DensityMatrix apply_channel(const DensityMatrix& rho,
                            const KrausChannel& channel) {
  if (rho.n_qubits() != channel.n_qubits()) {
    throw std::invalid_argument("channel width does not match state width");
  }
  return DensityMatrix::from_matrix(
      rho.n_qubits(), apply_channel_to_operator(rho.data(), channel));
}

CMatrix apply_channel_to_operator(const CMatrix& m,
                                  const KrausChannel& channel) {
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (const CMatrix& k : channel.ops()) {
    out.noalias() += k * m * k.adjoint();
  }
  return out;
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.n_qubits() != second.n_qubits()) {
    throw std::invalid_argument("cannot compose channels of different width");
  }
  std::vector<CMatrix> ops;
  ops.reserve(first.ops().size() * second.ops().size());
  for (const CMatrix& k2 : second.ops()) {
    for (const CMatrix& k1 : first.ops()) {
      ops.push_back(k2 * k1);
    }
  }
  return KrausChannel::from_ops(first.n_qubits(), std::move(ops));
}

KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMatrix> ops;
  ops.reserve(a.ops().size() * b.ops().size());
  for (const CMatrix& ka : a.ops()) {
    for (const CMatrix& kb : b.ops()) {
      ops.push_back(kron(ka, kb));
    }
  }
  return KrausChannel::from_ops(a.n_qubits() + b.n_qubits(), std::move(ops));
}

CMatrix embed_operator(const CMatrix& op, const std::vector<int>& targets,
                       int n_total) {
  const int k = static_cast<int>(targets.size());
  if (k < 1 || n_total < 1) throw std::invalid_argument("bad embed arguments");
  if (op.rows() != dim_for_qubits(k) || op.cols() != dim_for_qubits(k)) {
    throw std::invalid_argument("operator does not match target count");
  }
  for (int t : targets) {
    if (t < 0 || t >= n_total) {
      throw std::invalid_argument("embed target out of range");
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("embed targets must be distinct");
      }
    }
  }

  const std::int64_t dim = dim_for_qubits(n_total);
  const std::int64_t sub = dim_for_qubits(k);
  CMatrix out = CMatrix::Zero(dim, dim);

  // Walk global basis pairs; the rest bits must match, the target bits index
  // into the small operator.
  std::vector<int> rest;
  for (int q = 0; q < n_total; ++q) {
    bool is_target = false;
    for (int t : targets) is_target = is_target || (t == q);
    if (!is_target) rest.push_back(q);
  }
  const std::int64_t rest_count = std::int64_t{1} << rest.size();

  auto global_index = [&](std::int64_t sub_index, std::int64_t rest_index) {
    std::uint64_t g = 0;
    for (int s = 0; s < k; ++s) {
      int bit = static_cast<int>((sub_index >> (k - 1 - s)) & 1);
      g |= static_cast<std::uint64_t>(bit) << (n_total - 1 - targets[static_cast<std::size_t>(s)]);
    }
    for (std::size_t s = 0; s < rest.size(); ++s) {
      int bit = static_cast<int>((rest_index >> (rest.size() - 1 - s)) & 1);
      g |= static_cast<std::uint64_t>(bit) << (n_total - 1 - rest[s]);
    }
    return static_cast<Eigen::Index>(g);
  };

  for (std::int64_t r = 0; r < rest_count; ++r) {
    for (std::int64_t a = 0; a < sub; ++a) {
      for (std::int64_t b = 0; b < sub; ++b) {
        Complex v = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (v != Complex(0.0, 0.0)) {
          out(global_index(a, r), global_index(b, r)) = v;
        }
      }
    }
  }
  return out;
}

KrausChannel embed_on_qubits(const KrausChannel& channel,
                             const std::vector<int>& targets, int n_total) {
  if (static_cast<int>(targets.size()) != channel.n_qubits()) {
    throw std::invalid_argument("target count does not match channel width");
  }
  std::vector<CMatrix> ops;
  ops.reserve(channel.ops().size());
  for (const CMatrix& k : channel.ops()) {
    ops.push_back(embed_operator(k, targets, n_total));
  }
  return KrausChannel::from_ops(n_total, std::move(ops));
}

PauliTransferMatrix ptm_from_kraus(const KrausChannel& channel) {
  const int n = channel.n_qubits();
  const std::int64_t dim = dim_for_qubits(n);
  const std::int64_t basis = std::int64_t{1} << (2 * n);
  std::vector<CMatrix> paulis;
  paulis.reserve(static_cast<std::size_t>(basis));
  for (std::int64_t i = 0; i < basis; ++i) {
    paulis.push_back(pauli_string_matrix(pauli_label_from_index(i, n)));
  }
  RMatrix r(basis, basis);
  for (std::int64_t b = 0; b < basis; ++b) {
    CMatrix image = apply_channel_to_operator(
        paulis[static_cast<std::size_t>(b)], channel);
    for (std::int64_t a = 0; a < basis; ++a) {
      Complex tr = (paulis[static_cast<std::size_t>(a)] * image).trace();
      r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          tr.real() / static_cast<double>(dim);
    }
  }
  return PauliTransferMatrix{n, std::move(r)};
}

PauliTransferMatrix ptm_identity(int n_qubits) {
  const std::int64_t basis = std::int64_t{1} << (2 * n_qubits);
  return PauliTransferMatrix{n_qubits, RMatrix::Identity(basis, basis)};
}

PauliTransferMatrix ptm_compose(const PauliTransferMatrix& first,
                                const PauliTransferMatrix& second) {
  if (first.n_qubits != second.n_qubits) {
    throw std::invalid_argument("cannot compose PTMs of different width");
  }
  return PauliTransferMatrix{first.n_qubits, second.data * first.data};
}

void validate_ptm(const PauliTransferMatrix& ptm, double tp_tol) {
  const std::int64_t basis = std::int64_t{1} << (2 * ptm.n_qubits);
  if (ptm.data.rows() != basis || ptm.data.cols() != basis) {
    throw std::runtime_error("PTM dimension mismatch");
  }
  for (std::int64_t b = 0; b < basis; ++b) {
    double expected = (b == 0) ? 1.0 : 0.0;
    if (std::abs(ptm.data(0, static_cast<Eigen::Index>(b)) - expected) >
        tp_tol) {
      throw std::runtime_error("PTM first row is not (1, 0, ..., 0)");
    }
  }
  if (ptm.data.cwiseAbs().maxCoeff() > 1.0 + 1e-9) {
    throw std::runtime_error("PTM entry outside [-1, 1]");
  }
}

}  // namespace qubench
