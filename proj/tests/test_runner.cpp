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
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "qubench/runner.hpp"

using namespace qubench;
using nlohmann::json;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig config;
  config.name = "tiny";
  config.width = 2;
  config.topology = Topology::line(2);
  config.xi = 0.75;
  config.protocols = {Protocol::DRB, Protocol::MRB};
  config.noise_sweep = {
      {0.01, NoiseModel::uniform(NoiseSpec::depolarizing(0.01))}};
  config.m_list = {2, 4};
  config.circuits_per_depth = 3;
  config.seed = 7;
  return config;
}

int data_lines(const std::string& csv) {
  int lines = -1;  // discount the header
  for (char c : csv) {
    if (c == '\n') ++lines;
  }
  return lines;
}

}  // namespace

TEST_SUITE("experiment config") {
  TEST_CASE("serialization round-trips every field") {
    ExperimentConfig config;
    config.name = "roundtrip";
    config.width = 2;
    config.topology = Topology::grid(1, 2);
    config.xi = 0.5;
    config.protocols = {Protocol::CRB, Protocol::DRB};
    NoiseModel combined;
    combined.per_gate_class[GateClass::OneQubitGate] = {
        NoiseSpec::t1(0.01), NoiseSpec::coherent_1q(0.02, "Y")};
    combined.per_gate_class[GateClass::Measurement] = {
        NoiseSpec::depolarizing(0.03)};
    config.noise_sweep = {{0.01, NoiseModel::uniform(NoiseSpec::t2(0.01))},
                          {0.02, combined}};
    config.m_list = {2, 6};
    config.circuits_per_depth = 4;
    config.shots = 128;
    config.seed = 99;
    config.output_dir = "elsewhere";

    const std::string text = experiment_config_to_json(config);
    const ExperimentConfig back = experiment_config_from_json(text);
    CHECK(experiment_config_to_json(back) == text);
    CHECK(config_hash(back) == config_hash(config));
    CHECK(back.topology.kind == Topology::Kind::Grid);
    CHECK(back.protocols == config.protocols);
    CHECK(back.noise_sweep.size() == 2);
    CHECK(back.shots == 128);
  }

  TEST_CASE("unknown fields are rejected") {
    json j = json::parse(experiment_config_to_json(tiny_config()));
    j["extra"] = 1;
    CHECK_THROWS_WITH_AS(experiment_config_from_json(j.dump()),
                         "unknown config field: extra", std::invalid_argument);

    json j2 = json::parse(experiment_config_to_json(tiny_config()));
    j2["noise_sweep"][0]["comment"] = "hi";
    CHECK_THROWS_WITH_AS(experiment_config_from_json(j2.dump()),
                         "unknown sweep point field: comment",
                         std::invalid_argument);
  }

  TEST_CASE("schema version is pinned") {
    json j = json::parse(experiment_config_to_json(tiny_config()));
    j["schema_version"] = 2;
    CHECK_THROWS_AS(experiment_config_from_json(j.dump()),
                    std::invalid_argument);
    j.erase("schema_version");
    CHECK_THROWS_AS(experiment_config_from_json(j.dump()),
                    std::invalid_argument);
  }

  TEST_CASE("hash is stable and sensitive") {
    const ExperimentConfig config = tiny_config();
    const std::string h = config_hash(config);
    CHECK(h.size() == 16);
    CHECK(config_hash(tiny_config()) == h);
    ExperimentConfig other = config;
    other.seed = 8;
    CHECK(config_hash(other) != h);
  }

  TEST_CASE("validation rejects structural mistakes") {
    ExperimentConfig config = tiny_config();
    config.protocols.clear();
    CHECK_THROWS_AS(validate_experiment_config(config), std::invalid_argument);

    config = tiny_config();
    config.noise_sweep = {
        {0.02, NoiseModel::uniform(NoiseSpec::depolarizing(0.02))},
        {0.01, NoiseModel::uniform(NoiseSpec::depolarizing(0.01))}};
    CHECK_THROWS_AS(validate_experiment_config(config), std::invalid_argument);

    config = tiny_config();
    config.noise_sweep[0].strength = -0.01;
    CHECK_THROWS_AS(validate_experiment_config(config), std::invalid_argument);

    config = tiny_config();
    config.noise_sweep[0].model = NoiseModel::uniform(NoiseSpec::t1(1.5));
    CHECK_THROWS_AS(validate_experiment_config(config), std::invalid_argument);
  }

  TEST_CASE("default sweep spans four decades in seven steps") {
    const auto sweep = default_noise_sweep(NoiseKind::Depolarizing);
    REQUIRE(sweep.size() == 7);
    CHECK(sweep.front().strength == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(sweep.back().strength == doctest::Approx(1e-1).epsilon(1e-12));
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      CHECK(sweep[i].strength > sweep[i - 1].strength);
    }
    for (const SweepPoint& point : sweep) {
      CHECK(point.model.per_gate_class.count(GateClass::OneQubitGate) == 1);
      CHECK(point.model.per_gate_class.count(GateClass::TwoQubitGate) == 1);
    }
    const auto coherent = default_noise_sweep(NoiseKind::Coherent1Q);
    CHECK(coherent[0]
              .model.per_gate_class.at(GateClass::OneQubitGate)[0]
              .axis == "Z");
    CHECK_NOTHROW(
        validate_experiment_config(default_experiment_config(NoiseKind::T1)));
  }
}

TEST_SUITE("experiment runs") {
  TEST_CASE("estimates sit next to the tomography reference") {
    ExperimentConfig config = tiny_config();
    config.protocols = {Protocol::DRB, Protocol::MRB, Protocol::CRB};
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.rows.size() == 3);
    for (const ResultRow& row : result.rows) {
      CHECK_FALSE(row.failed);
      CHECK(row.noise_kind == "depolarizing");
      CHECK(row.strength == doctest::Approx(0.01));
      CHECK(row.n_circuits == 3);
      CHECK(row.n_depths == 2);
      CHECK(row.config_hash == config_hash(config));
      CHECK(std::isfinite(row.r_estimate));
      CHECK(std::isfinite(row.r_tomography));
      CHECK(row.r_estimate / row.r_tomography > 0.8);
      CHECK(row.r_estimate / row.r_tomography < 1.25);
    }
    const json archive = json::parse(result.archive_json);
    CHECK(archive.at("schema_version") == 1);
    CHECK(archive.at("config_hash") == config_hash(config));
    REQUIRE(archive.at("rows").size() == 3);
    for (const json& entry : archive.at("rows")) {
      CHECK(entry.contains("samples"));
      CHECK(entry.contains("circuits"));
      CHECK(entry.contains("fit"));
    }
    // Direct RB is in the protocol list, so the purity diagnostic ran.
    CHECK_FALSE(result.purity.empty());
    CHECK(archive.contains("purity"));
  }

  TEST_CASE("results are deterministic and scheduling independent") {
    const ExperimentConfig config = tiny_config();
    const ExperimentResult a = run_experiment(config, 1);
    const ExperimentResult b = run_experiment(config, 2);
    CHECK(results_csv(a.rows) == results_csv(b.rows));
    CHECK(data_lines(results_csv(a.rows)) == 2);
    const std::string header = results_csv({}).substr(
        0, results_csv({}).find('\n'));
    CHECK(header ==
          "protocol,noise_kind,strength,r_estimate,r_ci_low,r_ci_high,"
          "r_tomography,n_circuits,n_depths,config_hash");
  }

  TEST_CASE("an empty sweep produces an empty but valid archive") {
    ExperimentConfig config = tiny_config();
    config.noise_sweep.clear();
    const ExperimentResult result = run_experiment(config);
    CHECK(result.rows.empty());
    CHECK(result.purity.empty());
    const ReportOutput report = make_report(result.archive_json);
    CHECK(report.csv_files.size() == 5);
    for (const auto& [stem, csv] : report.csv_files) {
      (void)stem;
      CHECK(data_lines(csv) == 0);
    }
  }

  TEST_CASE("a cell that cannot generate circuits fails only its row") {
    ExperimentConfig config;
    config.name = "infeasible";
    config.width = 1;
    config.topology = Topology::line(1);
    config.xi = 0.75;  // no coupling edges exist, so this cannot be met
    config.protocols = {Protocol::MRB};
    config.noise_sweep = {
        {0.01, NoiseModel::uniform(NoiseSpec::depolarizing(0.01))}};
    config.m_list = {2, 4};
    config.circuits_per_depth = 2;
    CHECK_NOTHROW(validate_experiment_config(config));
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].failed);
    CHECK_FALSE(result.rows[0].failure.empty());
    CHECK(results_csv(result.rows).find("nan") != std::string::npos);
    const json archive = json::parse(result.archive_json);
    CHECK(archive.at("rows")[0].contains("failure"));
  }
}

TEST_SUITE("purity diagnostic") {
  TEST_CASE("pure states stay pure without noise") {
    ExperimentConfig config = tiny_config();
    config.protocols = {Protocol::DRB};
    config.noise_sweep = {{0.5, NoiseModel{}}};
    const auto rows = purity_diagnostic(config);
    REQUIRE(rows.size() == 3);
    for (const PurityRow& row : rows) {
      CHECK(row.post_prep == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(row.post_final == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("depolarizing erodes purity through the circuit") {
    // Depolarizing shrinks purity at every gate, so the longer circuit is
    // always the more mixed one. (Amplitude damping can re-purify.)
    ExperimentConfig config = tiny_config();
    config.protocols = {Protocol::DRB};
    config.noise_sweep = {
        {0.05, NoiseModel::uniform(NoiseSpec::depolarizing(0.05))}};
    const auto rows = purity_diagnostic(config);
    REQUIRE(rows.size() == 3);
    for (const PurityRow& row : rows) {
      CHECK(row.post_prep < 1.0);
      CHECK(row.post_prep > row.post_final);
      CHECK(row.post_final > 0.25);
    }
  }

  TEST_CASE("stronger damping means lower purity") {
    double means[2] = {0.0, 0.0};
    const double gammas[2] = {0.05, 0.2};
    for (int i = 0; i < 2; ++i) {
      ExperimentConfig config = tiny_config();
      config.protocols = {Protocol::DRB};
      config.noise_sweep = {
          {gammas[i], NoiseModel::uniform(NoiseSpec::t1(gammas[i]))}};
      for (const PurityRow& row : purity_diagnostic(config)) {
        means[i] += row.post_prep;
      }
      means[i] /= 3.0;
    }
    CHECK(means[0] > means[1]);
  }

  TEST_CASE("requires direct RB in the protocol list") {
    ExperimentConfig config = tiny_config();
    config.protocols = {Protocol::MRB};
    CHECK_THROWS_AS(purity_diagnostic(config), std::invalid_argument);
  }

  TEST_CASE("csv header names both purity stages") {
    const std::string csv = purity_csv({});
    CHECK(csv ==
          "strength,circuit_index,post_prep_purity,post_final_purity\n");
  }
}

TEST_SUITE("reports") {
  TEST_CASE("a depolarizing archive fills the depolarizing table") {
    ExperimentConfig config = tiny_config();
    config.noise_sweep = {
        {0.001, NoiseModel::uniform(NoiseSpec::depolarizing(0.001))},
        {0.01, NoiseModel::uniform(NoiseSpec::depolarizing(0.01))}};
    const ExperimentResult result = run_experiment(config);
    const ReportOutput report = make_report(result.archive_json);
    REQUIRE(report.csv_files.size() == 5);
    REQUIRE(report.csv_files.count("fig2_depolarizing") == 1);
    REQUIRE(report.csv_files.count("fig3_single_noise") == 1);
    REQUIRE(report.csv_files.count("fig3_combined") == 1);
    REQUIRE(report.csv_files.count("fig5_t1_dominance") == 1);
    REQUIRE(report.csv_files.count("fig6_purity") == 1);
    // DRB and MRB at two strengths each.
    CHECK(data_lines(report.csv_files.at("fig2_depolarizing")) == 4);
    // Only direct-RB rows belong in the dominance table.
    CHECK(data_lines(report.csv_files.at("fig5_t1_dominance")) == 2);
    CHECK(data_lines(report.csv_files.at("fig3_single_noise")) == 0);
    CHECK(data_lines(report.csv_files.at("fig6_purity")) ==
          static_cast<int>(result.purity.size()));
    CHECK_FALSE(report.summary.empty());
    CHECK(report.summary.find("depolarizing") != std::string::npos);
  }

  TEST_CASE("corrupt archives are refused") {
    CHECK_THROWS_AS(make_report("{}"), std::runtime_error);
    CHECK_THROWS(make_report("this is not json"));
  }

  TEST_CASE("outputs land on disk") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qubench_runner_test";
    fs::remove_all(dir);

    const ExperimentConfig config = tiny_config();
    const ExperimentResult result = run_experiment(config);
    write_experiment_outputs(result, dir.string());
    CHECK(fs::exists(dir / "results.csv"));
    CHECK(fs::exists(dir / "archive.json"));

    const ReportOutput report =
        make_report_from_file((dir / "archive.json").string());
    write_report(report, (dir / "report").string());
    CHECK(fs::exists(dir / "report" / "summary.txt"));
    CHECK(fs::exists(dir / "report" / "fig2_depolarizing.csv"));
    CHECK(fs::exists(dir / "report" / "fig6_purity.csv"));

    std::ifstream in(dir / "results.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "protocol,noise_kind,strength,r_estimate,r_ci_low,r_ci_high,"
          "r_tomography,n_circuits,n_depths,config_hash");
    fs::remove_all(dir);
  }
}
