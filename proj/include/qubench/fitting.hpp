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

#include <stdexcept>
#include <string>
#include <vector>

#include "qubench/protocols.hpp"

namespace qubench {

// Result of fitting P(m) = A + B p^m. The confidence interval comes from
// resampling circuits with replacement (1000 draws, percentile 95%). r is
// the protocol error rate; fit_decay leaves it at 0 and the caller fills
// it in via error_rate_from_p once the protocol dimension is known.
struct DecayFitResult {
  double A = 0.0;
  double B = 0.0;
  double p = 1.0;
  double p_ci_low = 1.0;
  double p_ci_high = 1.0;
  double r = 0.0;
  double residual_rms = 0.0;
  int n_samples = 0;
  bool converged = false;
  std::string message;
};

// Data that pins no decay at all (flat at the model floor).
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// Damped Gauss-Newton least squares over (A, B, p) with p kept in [0, 1],
// initialized from a log-linear regression of the per-depth means above
// model_floor. model_floor is 1/2^w for survival data and 0 for
// polarization or expectation data. Samples must cover at least two
// depths; all-equal values fit exactly as p = 1 unless they sit on the
// floor, which raises FitError. Non-convergence is reported through
// `converged` and `message`, not an exception.
DecayFitResult fit_decay(const std::vector<DecaySample>& samples,
                         double model_floor);

// r = (4^w - 1)/4^w * (1 - p). The protocol tag is carried for reporting;
// every protocol here uses the same polarization conversion.
double error_rate_from_p(double p, int w, Protocol protocol);

// Per-Pauli cycle-RB fits plus their uniform average. The confidence
// interval resamples circuit indices jointly across Paulis.
struct CrbFitSummary {
  std::vector<std::string> paulis;
  std::vector<DecayFitResult> per_pauli;
  double mean_p = 1.0;
  double mean_p_ci_low = 1.0;
  double mean_p_ci_high = 1.0;
  double process_infidelity = 0.0;
};

CrbFitSummary fit_crb(const std::vector<DecaySample>& samples, int w);

}  // namespace qubench
