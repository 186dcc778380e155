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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qubench/fitting.hpp"
#include "qubench/qasm.hpp"
#include "qubench/runner.hpp"

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

qubench::ExperimentConfig load_config(const std::string& path,
                                      std::optional<std::uint64_t> seed) {
  qubench::ExperimentConfig config = qubench::load_experiment_config(path);
  if (seed) config.seed = *seed;
  return config;
}

// Writes a ready-to-edit config. --small shrinks it to a seconds-scale run
// for smoke testing.
int cmd_init_config(const std::string& kind_str, bool small,
                    const std::string& out_path) {
  qubench::ExperimentConfig config =
      qubench::default_experiment_config(qubench::noise_kind_from_str(kind_str));
  if (small) {
    config.name += "_small";
    config.m_list = {2, 4};
    config.circuits_per_depth = 3;
    std::vector<qubench::SweepPoint> sweep;
    for (const qubench::SweepPoint& point : config.noise_sweep) {
      if (point.strength == 1e-3 || point.strength == 1e-2) {
        sweep.push_back(point);
      }
    }
    config.noise_sweep = sweep;
  }
  write_file(out_path, qubench::experiment_config_to_json(config));
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

// Regenerates each protocol's reference circuit ensemble and writes it as
// QASM plus JSON, for inspection or submission elsewhere. Cell seeds do not
// depend on the noise model, so these are the circuits `run` would use.
int cmd_generate(const qubench::ExperimentConfig& config,
                 const std::string& out_dir) {
  for (qubench::Protocol protocol : config.protocols) {
    qubench::ProtocolRunSpec spec;
    spec.protocol = protocol;
    spec.w = config.width;
    spec.topology = config.topology;
    spec.xi = config.xi;
    spec.m_list = config.m_list;
    spec.circuits_per_depth = config.circuits_per_depth;
    spec.noise = qubench::NoiseModel{};
    spec.seed = config.seed;

    const std::string dir = out_dir + "/" + qubench::protocol_str(protocol);
    std::filesystem::create_directories(dir);
    const auto circuits = qubench::reference_circuit_ensemble(spec);
    for (std::size_t k = 0; k < circuits.size(); ++k) {
      const std::string stem = dir + "/circuit_" + std::to_string(k);
      write_file(stem + ".qasm", qubench::to_openqasm(circuits[k]));
      write_file(stem + ".json", qubench::circuit_to_json(circuits[k]));
    }
    std::cout << qubench::protocol_str(protocol) << ": " << circuits.size()
              << " circuits -> " << dir << '\n';
  }
  return 0;
}

int cmd_run(const qubench::ExperimentConfig& config, int jobs,
            const std::string& out_dir) {
  const qubench::ExperimentResult result =
      qubench::run_experiment(config, jobs);
  qubench::write_experiment_outputs(result, out_dir);
  for (const qubench::ResultRow& row : result.rows) {
    std::cout << row.protocol << " " << row.noise_kind << " @ " << row.strength;
    if (row.failed) {
      std::cout << "  FAILED: " << row.failure << '\n';
    } else {
      std::cout << "  r=" << row.r_estimate << " [" << row.r_ci_low << ", "
                << row.r_ci_high << "]  tomography=" << row.r_tomography
                << '\n';
    }
  }
  std::cout << "wrote " << out_dir << "/results.csv and archive.json\n";
  return 0;
}

// Refits every archived row from its raw samples and prints the fit table.
// Useful after hand-editing samples out of an archive, and as a check that
// archives are self-contained.
int cmd_fit(const std::string& archive_path) {
  const json archive = json::parse(read_file(archive_path));
  const int w = archive.at("config").at("width").get<int>();
  std::cout << "protocol noise_kind strength p r\n";
  for (const json& jr : archive.at("rows")) {
    if (jr.value("failed", false)) {
      std::cout << jr.value("protocol", "?") << " "
                << jr.value("noise_kind", "?")
                << " row failed at run time; skipping\n";
      continue;
    }
    std::vector<qubench::DecaySample> samples;
    for (const json& js : jr.at("samples")) {
      qubench::DecaySample s;
      s.depth = js.at("depth").get<int>();
      s.value = js.at("value").get<double>();
      s.circuit_seed = js.at("circuit_seed").get<std::uint64_t>();
      if (js.contains("pauli")) s.pauli = js.at("pauli").get<std::string>();
      samples.push_back(std::move(s));
    }
    const auto protocol =
        qubench::protocol_from_str(jr.at("protocol").get<std::string>());
    double p = 1.0;
    double r = 0.0;
    if (protocol == qubench::Protocol::CRB) {
      const qubench::CrbFitSummary summary = qubench::fit_crb(samples, w);
      p = summary.mean_p;
      r = summary.process_infidelity;
    } else {
      const double floor = protocol == qubench::Protocol::DRB
                               ? 1.0 / std::pow(2.0, w)
                               : 0.0;
      const qubench::DecayFitResult fit = qubench::fit_decay(samples, floor);
      p = fit.p;
      r = qubench::error_rate_from_p(fit.p, w, protocol);
    }
    std::cout << jr.at("protocol").get<std::string>() << " "
              << jr.value("noise_kind", "?") << " "
              << jr.at("strength").get<double>() << " " << p << " " << r
              << '\n';
  }
  return 0;
}

int cmd_report(const std::string& archive_path, const std::string& out_dir) {
  const qubench::ReportOutput report =
      qubench::make_report_from_file(archive_path);
  qubench::write_report(report, out_dir);
  std::cout << report.summary;
  std::cout << "wrote " << report.csv_files.size() << " CSVs to " << out_dir
            << '\n';
  return 0;
}

int cmd_purity(const qubench::ExperimentConfig& config,
               const std::string& out_dir) {
  const std::vector<qubench::PurityRow> rows =
      qubench::purity_diagnostic(config);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/purity.csv", qubench::purity_csv(rows));

  std::map<double, std::pair<double, int>> prep_means;
  for (const qubench::PurityRow& row : rows) {
    auto& slot = prep_means[row.strength];
    slot.first += row.post_prep;
    slot.second += 1;
  }
  for (const auto& [strength, acc] : prep_means) {
    std::cout << "strength " << strength
              << ": mean post-prep purity " << acc.first / acc.second << '\n';
  }
  std::cout << "wrote " << out_dir << "/purity.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized benchmarking toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string archive_path = "out/archive.json";
  std::string init_kind;
  std::uint64_t seed_value = 0;
  bool seed_given = false;
  bool small = false;
  int jobs = 1;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed_value, "Override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
  };

  CLI::App* generate = app.add_subcommand(
      "generate", "Write the circuit ensembles a config would run, or a "
                  "starter config via --init-config");
  generate->add_option("--config", config_path, "Experiment config JSON");
  generate->add_option("--init-config", init_kind,
                       "Write a default config for this noise kind instead "
                       "(t1, t2, coherent_1q, coherent_2q, depolarizing)");
  generate->add_flag("--small", small,
                     "Shrink the generated config to a smoke-test size");
  generate->add_option("--out", out_dir, "Output directory or config path");
  add_seed(generate);

  CLI::App* run = app.add_subcommand("run", "Run the configured experiment");
  run->add_option("--config", config_path, "Experiment config JSON")
      ->required();
  run->add_option("--jobs", jobs, "Worker threads")
      ->check(CLI::Range(1, 256));
  run->add_option("--out", out_dir,
                  "Output directory (default: config output_dir)");
  add_seed(run);

  CLI::App* fit = app.add_subcommand("fit", "Refit decays from an archive");
  fit->add_option("--archive", archive_path, "archive.json from a run")
      ->required();

  CLI::App* report = app.add_subcommand(
      "report", "Write plot-ready CSVs and a summary from an archive");
  report->add_option("--archive", archive_path, "archive.json from a run")
      ->required();
  report->add_option("--out", out_dir, "Output directory");

  CLI::App* purity = app.add_subcommand(
      "purity", "State purity after prep and after the full direct-RB "
                "circuit, per sweep point");
  purity->add_option("--config", config_path, "Experiment config JSON")
      ->required();
  purity->add_option("--out", out_dir, "Output directory");
  add_seed(purity);

  CLI11_PARSE(app, argc, argv);

  const std::optional<std::uint64_t> seed =
      seed_given ? std::optional<std::uint64_t>(seed_value) : std::nullopt;

  try {
    if (generate->parsed()) {
      if (!init_kind.empty()) {
        const std::string path =
            out_dir == "out" ? "config.json" : out_dir;
        return cmd_init_config(init_kind, small, path);
      }
      if (config_path.empty()) {
        std::cerr << "generate needs --config or --init-config\n";
        return 1;
      }
      return cmd_generate(load_config(config_path, seed), out_dir);
    }
    if (run->parsed()) {
      qubench::ExperimentConfig config = load_config(config_path, seed);
      const std::string dir =
          run->count("--out") ? out_dir : config.output_dir;
      return cmd_run(config, jobs, dir);
    }
    if (fit->parsed()) return cmd_fit(archive_path);
    if (report->parsed()) return cmd_report(archive_path, out_dir);
    if (purity->parsed()) {
      return cmd_purity(load_config(config_path, seed), out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
