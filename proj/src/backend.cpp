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

#include "qubench/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "qubench/qasm.hpp"
#include "qubench/simulate.hpp"
#include "qubench/state.hpp"

namespace qubench {

namespace {

using nlohmann::json;

std::string normalize_endpoint(const std::string& endpoint) {
  std::string e = endpoint;
  while (!e.empty() && e.back() == '/') e.pop_back();
  if (e.rfind("http://", 0) != 0 && e.rfind("https://", 0) != 0) {
    e = "http://" + e;
  }
  return e;
}

httplib::Headers auth_headers(const RemoteConfig& config) {
  httplib::Headers headers;
  if (!config.token.empty()) {
    headers.emplace("Authorization", "Bearer " + config.token);
  }
  return headers;
}

// Runs `request` up to config.max_attempts times, backing off exponentially
// on transport failures and 5xx responses. Anything else is returned to the
// caller as-is; 4xx means the request itself is wrong and retrying won't fix
// it.
httplib::Result with_retries(const RemoteConfig& config,
                             const std::string& what,
                             const std::function<httplib::Result()>& request) {
  int backoff_ms = config.backoff_initial_ms;
  std::string last_failure;
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
    httplib::Result res = request();
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    return res;
  }
  throw BackendUnavailableError(what + " failed after " +
                                std::to_string(config.max_attempts) +
                                " attempts; last: " + last_failure);
}

json parse_body(const std::string& what, const httplib::Response& res) {
  if (res.status != 200) {
    throw BackendProtocolError(what + ": unexpected HTTP " +
                                   std::to_string(res.status),
                               res.body);
  }
  json body = json::parse(res.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw BackendProtocolError(what + ": response body is not a JSON object",
                               res.body);
  }
  return body;
}

httplib::Client make_client(const RemoteConfig& config) {
  httplib::Client client(normalize_endpoint(config.endpoint));
  client.set_connection_timeout(config.timeout_seconds, 0);
  client.set_read_timeout(config.timeout_seconds, 0);
  return client;
}

}  // namespace

CountsTable local_execute(const Circuit& circuit, const NoiseModel& noise,
                          std::uint64_t shots, std::uint64_t seed) {
  const BackendCapabilities caps = local_capabilities();
  if (circuit.width > caps.max_qubits) {
    throw std::invalid_argument("local backend supports at most " +
                                std::to_string(caps.max_qubits) + " qubits");
  }
  validate_circuit(circuit);

  DensityMatrix rho = DensityMatrix::zero_state(circuit.width);
  rho = apply_boundary_noise(rho, noise, GateClass::StatePrep);
  rho = apply_compiled(compile_circuit(circuit, noise), rho);
  rho = apply_boundary_noise(rho, noise, GateClass::Measurement);

  const std::vector<double> probs = rho.probabilities();
  CountsTable table;
  if (shots == 0) {
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
      if (probs[i] > 0.0) {
        table[bitstring_from_index(i, circuit.width)] = probs[i];
      }
    }
  } else {
    const std::vector<std::uint64_t> counts =
        sample_counts(probs, shots, seed);
    for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
      if (counts[i] > 0) {
        table[bitstring_from_index(i, circuit.width)] =
            static_cast<double>(counts[i]);
      }
    }
  }
  return table;
}

BackendCapabilities local_capabilities() {
  return BackendCapabilities{/*max_qubits=*/5,
                             /*supports_exact_probabilities=*/true};
}

std::string job_status_str(JobStatus status) {
  switch (status) {
    case JobStatus::Queued:
      return "queued";
    case JobStatus::Running:
      return "running";
    case JobStatus::Done:
      return "done";
    case JobStatus::Failed:
      return "failed";
  }
  throw std::logic_error("unreachable job status");
}

JobStatus job_status_from_str(const std::string& text) {
  if (text == "queued") return JobStatus::Queued;
  if (text == "running") return JobStatus::Running;
  if (text == "done") return JobStatus::Done;
  if (text == "failed") return JobStatus::Failed;
  throw std::invalid_argument("unknown job status: " + text);
}

RemoteConfig remote_config_from_env() {
  RemoteConfig config;
  const char* endpoint = std::getenv("QUBENCH_ENDPOINT");
  if (endpoint == nullptr || *endpoint == '\0') {
    throw BackendError("QUBENCH_ENDPOINT is not set");
  }
  config.endpoint = endpoint;
  if (const char* token = std::getenv("QUBENCH_TOKEN")) {
    config.token = token;
  }
  return config;
}

JobRecord remote_submit(const RemoteConfig& config, const Circuit& circuit,
                        std::uint64_t shots) {
  JobRecord record;
  record.qasm = to_openqasm(circuit);
  record.shots = shots;

  httplib::Client client = make_client(config);
  const std::string payload =
      json{{"qasm", record.qasm}, {"shots", shots}}.dump();
  httplib::Result res =
      with_retries(config, "submit", [&client, &config, &payload] {
        return client.Post("/jobs", auth_headers(config), payload,
                           "application/json");
      });
  record.raw_response = res->body;

  const json body = parse_body("submit", *res);
  if (!body.contains("job_id") || !body["job_id"].is_string()) {
    throw BackendProtocolError("submit: response lacks a job_id string",
                               res->body);
  }
  record.job_id = body["job_id"].get<std::string>();
  record.status = JobStatus::Queued;
  return record;
}

JobRecord remote_poll(const RemoteConfig& config, const std::string& job_id) {
  JobRecord record;
  record.job_id = job_id;

  httplib::Client client = make_client(config);
  const std::string path = "/jobs/" + job_id;
  httplib::Result res =
      with_retries(config, "poll", [&client, &config, &path] {
        return client.Get(path, auth_headers(config));
      });
  record.raw_response = res->body;

  const json body = parse_body("poll", *res);
  if (!body.contains("status") || !body["status"].is_string()) {
    throw BackendProtocolError("poll: response lacks a status string",
                               res->body);
  }
  try {
    record.status = job_status_from_str(body["status"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw BackendProtocolError(std::string("poll: ") + e.what(), res->body);
  }

  const bool has_counts = body.contains("counts");
  if (record.status == JobStatus::Done && !has_counts) {
    throw BackendProtocolError("poll: done job carries no counts", res->body);
  }
  if (record.status != JobStatus::Done && has_counts) {
    throw BackendProtocolError("poll: counts on a job that is not done",
                               res->body);
  }
  if (has_counts) {
    if (!body["counts"].is_object()) {
      throw BackendProtocolError("poll: counts is not an object", res->body);
    }
    std::uint64_t total = 0;
    for (const auto& [bits, value] : body["counts"].items()) {
      if (!value.is_number_unsigned()) {
        throw BackendProtocolError("poll: count for " + bits +
                                       " is not a non-negative integer",
                                   res->body);
      }
      const std::uint64_t n = value.get<std::uint64_t>();
      record.counts[bits] = static_cast<double>(n);
      total += n;
    }
    record.shots = total;
  }
  return record;
}

JobRecord remote_run(const RemoteConfig& config, const Circuit& circuit,
                     std::uint64_t shots, int poll_interval_ms,
                     int max_polls) {
  const JobRecord submitted = remote_submit(config, circuit, shots);
  JobRecord latest = submitted;
  for (int i = 0; i < max_polls; ++i) {
    latest = remote_poll(config, submitted.job_id);
    latest.qasm = submitted.qasm;
    if (latest.status == JobStatus::Done ||
        latest.status == JobStatus::Failed) {
      return latest;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(poll_interval_ms));
  }
  throw BackendError("job " + submitted.job_id + " still " +
                     job_status_str(latest.status) + " after " +
                     std::to_string(max_polls) + " polls");
}

}  // namespace qubench
