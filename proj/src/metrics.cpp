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

#include "qubench/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qubench {

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("tv_distance needs equal-length distributions");
  }
  double sp = 0.0;
  double sq = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      throw std::invalid_argument("tv_distance inputs must be non-negative");
    }
    sp += p[i];
    sq += q[i];
    acc += std::abs(p[i] - q[i]);
  }
  if (std::abs(sp - 1.0) > 1e-8 || std::abs(sq - 1.0) > 1e-8) {
    throw std::invalid_argument("tv_distance inputs must sum to 1");
  }
  return 0.5 * acc;
}

double diamond_distance(const KrausChannel&, const KrausChannel&) {
  throw std::logic_error(
      "diamond_distance is not implemented: it requires an SDP solver");
}

}  // namespace qubench
