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
#include <map>
#include <stdexcept>
#include <string>

#include "qubench/circuit.hpp"
#include "qubench/noise.hpp"

namespace qubench {

struct BackendCapabilities {
  int max_qubits = 5;
  bool supports_exact_probabilities = false;
};

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transport kept failing after all retry attempts.
class BackendUnavailableError : public BackendError {
 public:
  using BackendError::BackendError;
};

// The service answered, but not in the agreed shape. Carries the raw body
// so the caller can log what actually came back.
class BackendProtocolError : public BackendError {
 public:
  BackendProtocolError(const std::string& what, std::string raw_body)
      : BackendError(what), raw_body_(std::move(raw_body)) {}

  const std::string& raw_body() const { return raw_body_; }

 private:
  std::string raw_body_;
};

// Counts table keyed by bitstring (qubit 0 first). With shots = 0 the
// values are exact probabilities; otherwise integer-valued counts.
using CountsTable = std::map<std::string, double>;

// Runs the circuit on the exact density-matrix simulator, including
// state-prep and measurement noise from the model. shots = 0 returns the
// full outcome distribution; shots > 0 draws a seeded multinomial sample.
// Zero-probability outcomes are omitted.
CountsTable local_execute(const Circuit& circuit, const NoiseModel& noise,
                          std::uint64_t shots, std::uint64_t seed);

BackendCapabilities local_capabilities();

enum class JobStatus { Queued, Running, Done, Failed };

std::string job_status_str(JobStatus status);
JobStatus job_status_from_str(const std::string& text);

// One remote job, as the client saw it. Every payload that crossed the
// wire is kept: qasm out, last raw response body in.
struct JobRecord {
  std::string job_id;
  std::string qasm;
  std::uint64_t shots = 0;
  JobStatus status = JobStatus::Queued;
  CountsTable counts;
  std::string raw_response;
};

struct RemoteConfig {
  std::string endpoint;  // "host:port" or "http://host:port", no trailing /
  std::string token;     // sent as a bearer credential when nonempty
  int max_attempts = 3;
  int backoff_initial_ms = 200;  // doubles per retry; tests shrink this
  int timeout_seconds = 30;
};

// Reads QUBENCH_ENDPOINT and QUBENCH_TOKEN. Throws BackendError when the
// endpoint is unset; a missing token just means unauthenticated requests.
RemoteConfig remote_config_from_env();

// POST {endpoint}/jobs with {"qasm": ..., "shots": ...}; expects
// {"job_id": ...} back. Transport failures and 5xx responses are retried
// with exponential backoff up to config.max_attempts.
JobRecord remote_submit(const RemoteConfig& config, const Circuit& circuit,
                        std::uint64_t shots);

// GET {endpoint}/jobs/{id}; expects {"status": ..., "counts"?: ...}.
// counts must be present exactly when status is "done".
JobRecord remote_poll(const RemoteConfig& config, const std::string& job_id);

// Submit, then poll until Done or Failed, sleeping poll_interval_ms between
// polls, up to max_polls. Still-running after max_polls → BackendError with
// the partial record's status preserved in the message.
JobRecord remote_run(const RemoteConfig& config, const Circuit& circuit,
                     std::uint64_t shots, int poll_interval_ms = 500,
                     int max_polls = 120);

}  // namespace qubench
