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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace qubench {

// All randomness in the library flows through this wrapper. The standard
// distributions are implementation-defined, so bounded ints, reals and
// shuffles are implemented here to keep results byte-identical everywhere.

std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic seed derivation: folds the arguments into one 64-bit seed.
// Used for per-cell seeds so results are independent of scheduling order.
std::uint64_t seed_chain(std::initializer_list<std::uint64_t> parts);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, n), unbiased via rejection. n must be > 0.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01();

  bool coin() { return (next_u64() >> 63) != 0; }

  // Standard normal via Box-Muller (deterministic, no cached spare).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qubench
