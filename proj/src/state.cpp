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

#include "qubench/state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qubench {

namespace {
void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > DensityMatrix::kMaxQubits) {
    throw std::invalid_argument("density matrix supports 1.." +
                                std::to_string(DensityMatrix::kMaxQubits) +
                                " qubits, got " + std::to_string(n_qubits));
  }
}
}  // namespace

DensityMatrix DensityMatrix::from_matrix(int n_qubits, CMatrix rho) {
  check_width(n_qubits);
  const std::int64_t dim = dim_for_qubits(n_qubits);
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("density matrix dimension mismatch");
  }
  if (max_abs_diff(rho, rho.adjoint()) > kHermTol) {
    throw std::invalid_argument("density matrix is not hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  return DensityMatrix(n_qubits, std::move(rho));
}

DensityMatrix DensityMatrix::computational_basis(int n_qubits,
                                                 std::uint64_t index) {
  check_width(n_qubits);
  const std::int64_t dim = dim_for_qubits(n_qubits);
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw std::invalid_argument("basis index out of range");
  }
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(n_qubits, std::move(rho));
}

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
  return computational_basis(n_qubits, 0);
}

DensityMatrix DensityMatrix::from_pure(int n_qubits, const CVector& psi) {
  check_width(n_qubits);
  const std::int64_t dim = dim_for_qubits(n_qubits);
  if (psi.size() != dim) {
    throw std::invalid_argument("state vector dimension mismatch");
  }
  double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("state vector is not normalized");
  }
  CMatrix rho = psi * psi.adjoint();
  return DensityMatrix(n_qubits, std::move(rho));
}

void DensityMatrix::validate() const {
  if (max_abs_diff(data_, data_.adjoint()) > kHermTol) {
    throw std::runtime_error("density matrix invariant violated: hermiticity");
  }
  if (std::abs(data_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::runtime_error("density matrix invariant violated: trace");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(data_,
                                                Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenFloor) {
    throw std::runtime_error(
        "density matrix invariant violated: negative eigenvalue " +
        std::to_string(solver.eigenvalues().minCoeff()));
  }
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> probs(static_cast<std::size_t>(data_.rows()));
  for (Eigen::Index i = 0; i < data_.rows(); ++i) {
    probs[static_cast<std::size_t>(i)] =
        std::clamp(data_(i, i).real(), 0.0, 1.0);
  }
  return probs;
}

double purity(const DensityMatrix& rho) {
  return (rho.data() * rho.data()).trace().real();
}

}  // namespace qubench
