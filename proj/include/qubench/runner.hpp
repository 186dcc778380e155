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
#include <string>
#include <vector>

#include "qubench/circuit.hpp"
#include "qubench/noise.hpp"
#include "qubench/protocols.hpp"

namespace qubench {

// One point of a noise sweep: the model to run and the scalar strength the
// results table reports as its x value.
struct SweepPoint {
  double strength = 0.0;
  NoiseModel model;
};

struct ExperimentConfig {
  std::string name = "experiment";
  int width = 2;
  Topology topology;
  double xi = 0.75;
  std::vector<Protocol> protocols;
  std::vector<SweepPoint> noise_sweep;
  std::vector<int> m_list = {2, 4, 8, 16, 32};
  int circuits_per_depth = 20;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
};

// Structural checks plus per-protocol run-spec validation. Sweep strengths
// must be strictly increasing and positive.
void validate_experiment_config(const ExperimentConfig& config);

// Strict JSON with a schema_version field; unknown keys are rejected so an
// archived config can never silently change meaning.
std::string experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// FNV-1a over the canonical config serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

// Seven log-spaced strengths from 1e-4 to 1e-1, each wrapped in a uniform
// model of the given kind on both gate classes.
std::vector<SweepPoint> default_noise_sweep(NoiseKind kind);

// A ready-to-run two-qubit config over the default sweep for `kind`.
ExperimentConfig default_experiment_config(NoiseKind kind);

struct ResultRow {
  std::string protocol;
  std::string noise_kind;  // "+"-joined sorted kinds in the model
  double strength = 0.0;
  double r_estimate = 0.0;
  double r_ci_low = 0.0;
  double r_ci_high = 0.0;
  double r_tomography = 0.0;
  int n_circuits = 0;
  int n_depths = 0;
  std::string config_hash;
  std::string timestamp;
  bool failed = false;
  std::string failure;  // nonempty iff failed
};

struct PurityRow {
  double strength = 0.0;
  int circuit_index = 0;
  double post_prep = 0.0;
  double post_final = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<PurityRow> purity;  // filled when the run includes direct RB
  std::string archive_json;
};

// Runs every (protocol, sweep point) pair: generate, simulate, fit, and
// compute the per-layer tomography reference on the same circuit ensemble.
// A failing point is recorded on its row and the run continues. `jobs`
// caps worker threads; results are merged in config order regardless of
// completion order, so the output is deterministic in the seed.
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 1);

// Fixed column set; failed rows carry nan in the r fields.
// protocol,noise_kind,strength,r_estimate,r_ci_low,r_ci_high,r_tomography,
// n_circuits,n_depths,config_hash
std::string results_csv(const std::vector<ResultRow>& rows);

std::string purity_csv(const std::vector<PurityRow>& rows);

// Writes results.csv and archive.json under out_dir (created if missing).
void write_experiment_outputs(const ExperimentResult& result,
                              const std::string& out_dir);

// Direct-RB state purity after the prep stage and after the full circuit,
// at the shortest configured sequence length, for every sweep point and
// circuit index. Measurement-class noise is excluded: this diagnoses the
// state, not the readout.
std::vector<PurityRow> purity_diagnostic(const ExperimentConfig& config);

// Plot-ready CSVs plus a text summary computed from an archive produced by
// run_experiment. Keys are file stems (fig2_depolarizing, fig3_single_noise,
// fig3_combined, fig5_t1_dominance, fig6_purity).
struct ReportOutput {
  std::map<std::string, std::string> csv_files;
  std::string summary;
};

ReportOutput make_report(const std::string& archive_json);
ReportOutput make_report_from_file(const std::string& archive_path);
void write_report(const ReportOutput& report, const std::string& out_dir);

}  // namespace qubench
