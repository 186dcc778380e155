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

#include <vector>

#include "qubench/channel.hpp"

namespace qubench {

// Total variation distance (1/2) sum_i |p_i - q_i| between two probability
// distributions of equal length. Inputs must be non-negative and sum to 1
// within 1e-8.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Placeholder for the diamond-norm distance between channels. Computing it
// requires semidefinite programming, which is out of scope here; callers get
// a std::logic_error. Kept so the metric has a named home in the API.
double diamond_distance(const KrausChannel& a, const KrausChannel& b);

}  // namespace qubench
