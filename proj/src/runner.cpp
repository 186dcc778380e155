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

#include "qubench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qubench/fitting.hpp"
#include "qubench/simulate.hpp"
#include "qubench/state.hpp"
#include "qubench/tomography.hpp"

namespace qubench {

namespace {

using nlohmann::json;

constexpr int kConfigSchemaVersion = 1;
constexpr int kArchiveSchemaVersion = 1;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (allowed.count(key) == 0) {
      throw std::invalid_argument("unknown " + where + " field: " + key);
    }
  }
}

json topology_to_json(const Topology& t) {
  json j;
  j["kind"] = topology_kind_str(t.kind);
  if (t.kind == Topology::Kind::Grid) {
    j["rows"] = t.grid_rows;
    j["cols"] = t.grid_cols;
  }
  if (t.kind == Topology::Kind::Custom) {
    json edges = json::array();
    for (auto [a, b] : t.edges) edges.push_back({a, b});
    j["edges"] = edges;
  }
  return j;
}

Topology topology_from_config_json(const json& j, int width) {
  require_keys(j, {"kind", "rows", "cols", "edges"}, "topology");
  const auto kind = topology_kind_from_str(j.at("kind").get<std::string>());
  switch (kind) {
    case Topology::Kind::Line:
      return Topology::line(width);
    case Topology::Kind::Ring:
      return Topology::ring(width);
    case Topology::Kind::Complete:
      return Topology::complete(width);
    case Topology::Kind::Grid: {
      const int rows = j.at("rows").get<int>();
      const int cols = j.at("cols").get<int>();
      if (rows * cols != width) {
        throw std::invalid_argument("grid rows*cols must equal width");
      }
      return Topology::grid(rows, cols);
    }
    case Topology::Kind::Custom: {
      std::vector<std::pair<int, int>> edges;
      for (const auto& je : j.at("edges")) {
        edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
      }
      return Topology::custom(width, std::move(edges));
    }
  }
  throw std::logic_error("unreachable");
}

// The distinct error kinds in a model, sorted and joined with '+', as the
// results table's noise_kind column.
std::string model_kind_label(const NoiseModel& model) {
  std::set<std::string> kinds;
  for (const auto& [cls, specs] : model.per_gate_class) {
    (void)cls;
    for (const NoiseSpec& spec : specs) kinds.insert(noise_kind_str(spec.kind));
  }
  if (kinds.empty()) return "none";
  std::string label;
  for (const std::string& k : kinds) {
    if (!label.empty()) label += '+';
    label += k;
  }
  return label;
}

ProtocolRunSpec make_run_spec(const ExperimentConfig& config,
                              Protocol protocol, const NoiseModel& model) {
  ProtocolRunSpec spec;
  spec.protocol = protocol;
  spec.w = config.width;
  spec.topology = config.topology;
  spec.xi = config.xi;
  spec.m_list = config.m_list;
  spec.circuits_per_depth = config.circuits_per_depth;
  spec.shots = config.shots;
  spec.noise = model;
  spec.seed = config.seed;
  return spec;
}

json fit_to_json(const DecayFitResult& fit) {
  json j;
  j["A"] = fit.A;
  j["B"] = fit.B;
  j["p"] = fit.p;
  j["p_ci_low"] = fit.p_ci_low;
  j["p_ci_high"] = fit.p_ci_high;
  j["residual_rms"] = fit.residual_rms;
  j["n_samples"] = fit.n_samples;
  j["converged"] = fit.converged;
  if (!fit.message.empty()) j["message"] = fit.message;
  return j;
}

json samples_to_json(const std::vector<DecaySample>& samples) {
  json j = json::array();
  for (const DecaySample& s : samples) {
    json js;
    js["depth"] = s.depth;
    js["value"] = s.value;
    js["circuit_seed"] = s.circuit_seed;
    if (!s.pauli.empty()) js["pauli"] = s.pauli;
    j.push_back(std::move(js));
  }
  return j;
}

double read_number_or_nan(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.at(key).get<double>();
}

void run_worker_pool(int n_cells, int jobs,
                     const std::function<void(int)>& body) {
  jobs = std::clamp(jobs, 1, std::max(1, n_cells));
  if (jobs <= 1) {
    for (int i = 0; i < n_cells; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&next, n_cells, &body] {
      for (int i = next.fetch_add(1); i < n_cells; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (std::thread& th : pool) th.join();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace

void validate_experiment_config(const ExperimentConfig& config) {
  if (config.name.empty()) {
    throw std::invalid_argument("config name must be nonempty");
  }
  if (config.protocols.empty()) {
    throw std::invalid_argument("protocol list must be nonempty");
  }
  double prev = 0.0;
  for (const SweepPoint& point : config.noise_sweep) {
    if (!(point.strength > 0.0)) {
      throw std::invalid_argument("sweep strengths must be positive");
    }
    if (point.strength <= prev && prev > 0.0) {
      throw std::invalid_argument("sweep strengths must be sorted strictly");
    }
    prev = point.strength;
    for (const auto& [cls, specs] : point.model.per_gate_class) {
      (void)cls;
      for (const NoiseSpec& spec : specs) validate_noise_spec(spec);
    }
  }
  // Everything protocol-shaped (width, topology, xi, m_list, K) is checked
  // by the run-spec validator each protocol will see.
  for (Protocol protocol : config.protocols) {
    validate_run_spec(make_run_spec(config, protocol, NoiseModel{}));
  }
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["name"] = config.name;
  j["width"] = config.width;
  j["topology"] = topology_to_json(config.topology);
  j["xi"] = config.xi;
  json protocols = json::array();
  for (Protocol p : config.protocols) protocols.push_back(protocol_str(p));
  j["protocols"] = protocols;
  json sweep = json::array();
  for (const SweepPoint& point : config.noise_sweep) {
    json jp;
    jp["strength"] = point.strength;
    jp["model"] = json::parse(noise_model_to_json(point.model));
    sweep.push_back(std::move(jp));
  }
  j["noise_sweep"] = sweep;
  j["m_list"] = config.m_list;
  j["circuits_per_depth"] = config.circuits_per_depth;
  j["shots"] = config.shots;
  j["seed"] = config.seed;
  j["output_dir"] = config.output_dir;
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  require_keys(j,
               {"schema_version", "name", "width", "topology", "xi",
                "protocols", "noise_sweep", "m_list", "circuits_per_depth",
                "shots", "seed", "output_dir"},
               "config");
  if (!j.contains("schema_version") ||
      j.at("schema_version").get<int>() != kConfigSchemaVersion) {
    throw std::invalid_argument("config schema_version must be 1");
  }

  ExperimentConfig config;
  if (j.contains("name")) config.name = j.at("name").get<std::string>();
  config.width = j.at("width").get<int>();
  config.topology = j.contains("topology")
                        ? topology_from_config_json(j.at("topology"),
                                                    config.width)
                        : Topology::line(config.width);
  if (j.contains("xi")) config.xi = j.at("xi").get<double>();
  config.protocols.clear();
  for (const auto& jp : j.at("protocols")) {
    config.protocols.push_back(protocol_from_str(jp.get<std::string>()));
  }
  for (const auto& jp : j.at("noise_sweep")) {
    require_keys(jp, {"strength", "model"}, "sweep point");
    SweepPoint point;
    point.strength = jp.at("strength").get<double>();
    point.model = noise_model_from_json(jp.at("model").dump());
    config.noise_sweep.push_back(std::move(point));
  }
  if (j.contains("m_list")) {
    config.m_list = j.at("m_list").get<std::vector<int>>();
  }
  if (j.contains("circuits_per_depth")) {
    config.circuits_per_depth = j.at("circuits_per_depth").get<int>();
  }
  if (j.contains("shots")) {
    config.shots = j.at("shots").get<std::uint64_t>();
  }
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output_dir")) {
    config.output_dir = j.at("output_dir").get<std::string>();
  }
  validate_experiment_config(config);
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  try {
    return experiment_config_from_json(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path + " is not valid JSON: " +
                             e.what());
  }
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string canonical = experiment_config_to_json(config);
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::vector<SweepPoint> default_noise_sweep(NoiseKind kind) {
  std::vector<SweepPoint> sweep;
  for (int i = 0; i <= 6; ++i) {
    const double strength = std::pow(10.0, -4.0 + 0.5 * i);
    NoiseSpec spec;
    spec.kind = kind;
    spec.strength = strength;
    if (kind == NoiseKind::Coherent1Q) spec.axis = "Z";
    if (kind == NoiseKind::Coherent2Q) spec.axis = "ZZ";
    sweep.push_back({strength, NoiseModel::uniform(spec)});
  }
  return sweep;
}

ExperimentConfig default_experiment_config(NoiseKind kind) {
  ExperimentConfig config;
  config.name = "default_" + noise_kind_str(kind);
  config.width = 2;
  config.topology = Topology::line(2);
  config.protocols = {Protocol::DRB, Protocol::MRB, Protocol::CRB};
  config.noise_sweep = default_noise_sweep(kind);
  return config;
}

namespace {

// Everything one (protocol, sweep point) cell produces: the CSV-facing row
// and its archive entry with samples, fits, circuits, and twirl records.
struct CellOutput {
  ResultRow row;
  json archive_entry;
};

CellOutput run_cell(const ExperimentConfig& config, Protocol protocol,
                    const SweepPoint& point, const std::string& hash,
                    const std::string& timestamp) {
  CellOutput out;
  ResultRow& row = out.row;
  row.protocol = protocol_str(protocol);
  row.noise_kind = model_kind_label(point.model);
  row.strength = point.strength;
  row.n_circuits = config.circuits_per_depth;
  row.n_depths = static_cast<int>(config.m_list.size());
  row.config_hash = hash;
  row.timestamp = timestamp;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.r_estimate = row.r_ci_low = row.r_ci_high = row.r_tomography = nan;

  const ProtocolRunSpec spec = make_run_spec(config, protocol, point.model);
  json& entry = out.archive_entry;
  entry["protocol"] = row.protocol;
  entry["noise_kind"] = row.noise_kind;
  entry["strength"] = row.strength;
  entry["noise_model"] = json::parse(noise_model_to_json(point.model));
  entry["timestamp"] = timestamp;

  try {
    const std::vector<DecaySample> samples = run_protocol(spec);
    entry["samples"] = samples_to_json(samples);

    if (protocol == Protocol::CRB) {
      const CrbFitSummary summary = fit_crb(samples, spec.w);
      row.r_estimate = summary.process_infidelity;
      row.r_ci_low = error_rate_from_p(summary.mean_p_ci_high, spec.w,
                                       Protocol::CRB);
      row.r_ci_high = error_rate_from_p(summary.mean_p_ci_low, spec.w,
                                        Protocol::CRB);
      json jf;
      jf["mean_p"] = summary.mean_p;
      jf["mean_p_ci_low"] = summary.mean_p_ci_low;
      jf["mean_p_ci_high"] = summary.mean_p_ci_high;
      jf["process_infidelity"] = summary.process_infidelity;
      json per_pauli = json::array();
      for (std::size_t i = 0; i < summary.paulis.size(); ++i) {
        json jp = fit_to_json(summary.per_pauli[i]);
        jp["pauli"] = summary.paulis[i];
        per_pauli.push_back(std::move(jp));
      }
      jf["per_pauli"] = per_pauli;
      entry["fit"] = jf;

      // Twirl records of the first cell at each sequence length; every
      // other cell regenerates deterministically from its sample's seed.
      const Circuit cycle = crb_cycle(spec);
      json twirls = json::array();
      for (int m : spec.m_list) {
        const auto first = std::find_if(
            samples.begin(), samples.end(),
            [m](const DecaySample& s) { return s.depth == m; });
        if (first == samples.end()) continue;
        json jt;
        jt["m"] = m;
        jt["cell_seed"] = first->circuit_seed;
        json records = json::array();
        for (const TwirlRecord& rec :
             crb_twirl_records(spec, cycle, m, first->circuit_seed)) {
          json jr;
          jr["layer"] = rec.layer_index;
          jr["twirl"] = rec.twirl;
          jr["correction"] = rec.correction;
          records.push_back(std::move(jr));
        }
        jt["records"] = records;
        twirls.push_back(std::move(jt));
      }
      entry["twirl_records"] = twirls;
    } else {
      const double floor =
          protocol == Protocol::DRB ? 1.0 / std::pow(2.0, spec.w) : 0.0;
      const DecayFitResult fit = fit_decay(samples, floor);
      row.r_estimate = error_rate_from_p(fit.p, spec.w, protocol);
      row.r_ci_low = error_rate_from_p(fit.p_ci_high, spec.w, protocol);
      row.r_ci_high = error_rate_from_p(fit.p_ci_low, spec.w, protocol);
      entry["fit"] = fit_to_json(fit);
    }

    json circuits = json::array();
    for (const Circuit& c : reference_circuit_ensemble(spec)) {
      circuits.push_back(json::parse(circuit_to_json(c)));
    }
    entry["circuits"] = circuits;
  } catch (const std::exception& e) {
    row.failed = true;
    row.failure = e.what();
  }

  if (!row.failed) {
    try {
      const std::vector<Layer> layers = reference_layer_ensemble(spec);
      double total = 0.0;
      for (const Layer& layer : layers) {
        total += layer_process_infidelity(layer, spec.topology, spec.w,
                                          point.model);
      }
      // DRB and MRB decays advance one layer per depth unit, so the
      // reference is the mean layer infidelity. The cycle-RB decay
      // advances one whole cycle per depth unit, so its reference is the
      // compound infidelity of the cycle's layers.
      if (protocol == Protocol::CRB) {
        row.r_tomography = layers.empty() ? nan : total;
      } else {
        row.r_tomography = layers.empty() ? nan : total / layers.size();
      }
    } catch (const std::exception& e) {
      // Estimates stand; only the reference column is unavailable.
      entry["tomography_error"] = e.what();
    }
  }

  entry["r_estimate"] = row.r_estimate;
  entry["r_ci_low"] = row.r_ci_low;
  entry["r_ci_high"] = row.r_ci_high;
  entry["r_tomography"] = row.r_tomography;
  entry["n_circuits"] = row.n_circuits;
  entry["n_depths"] = row.n_depths;
  entry["failed"] = row.failed;
  if (row.failed) entry["failure"] = row.failure;
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  validate_experiment_config(config);
  const std::string hash = config_hash(config);
  const std::string timestamp = utc_timestamp();

  struct Cell {
    Protocol protocol;
    const SweepPoint* point;
  };
  std::vector<Cell> cells;
  for (Protocol protocol : config.protocols) {
    for (const SweepPoint& point : config.noise_sweep) {
      cells.push_back({protocol, &point});
    }
  }

  std::vector<CellOutput> outputs(cells.size());
  run_worker_pool(static_cast<int>(cells.size()), jobs, [&](int i) {
    outputs[i] =
        run_cell(config, cells[i].protocol, *cells[i].point, hash, timestamp);
  });

  ExperimentResult result;
  json archive;
  archive["schema_version"] = kArchiveSchemaVersion;
  archive["config"] = json::parse(experiment_config_to_json(config));
  archive["config_hash"] = hash;
  archive["timestamp"] = timestamp;
  json rows = json::array();
  for (CellOutput& out : outputs) {
    result.rows.push_back(std::move(out.row));
    rows.push_back(std::move(out.archive_entry));
  }
  archive["rows"] = rows;

  const bool has_drb =
      std::find(config.protocols.begin(), config.protocols.end(),
                Protocol::DRB) != config.protocols.end();
  if (has_drb && !config.noise_sweep.empty()) {
    // Purity failures (an infeasible circuit shape fails here exactly as it
    // does in the per-cell rows) degrade to an archive note, not a crash.
    try {
      result.purity = purity_diagnostic(config);
      json purity = json::array();
      for (const PurityRow& p : result.purity) {
        json jp;
        jp["strength"] = p.strength;
        jp["circuit_index"] = p.circuit_index;
        jp["post_prep"] = p.post_prep;
        jp["post_final"] = p.post_final;
        purity.push_back(std::move(jp));
      }
      archive["purity"] = purity;
    } catch (const std::exception& e) {
      archive["purity_error"] = e.what();
    }
  }

  result.archive_json = archive.dump(2);
  return result;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "protocol,noise_kind,strength,r_estimate,r_ci_low,r_ci_high,"
         "r_tomography,n_circuits,n_depths,config_hash\n";
  for (const ResultRow& row : rows) {
    out << row.protocol << ',' << row.noise_kind << ','
        << format_double(row.strength) << ',' << format_double(row.r_estimate)
        << ',' << format_double(row.r_ci_low) << ','
        << format_double(row.r_ci_high) << ','
        << format_double(row.r_tomography) << ',' << row.n_circuits << ','
        << row.n_depths << ',' << row.config_hash << '\n';
  }
  return out.str();
}

std::string purity_csv(const std::vector<PurityRow>& rows) {
  std::ostringstream out;
  out << "strength,circuit_index,post_prep_purity,post_final_purity\n";
  for (const PurityRow& row : rows) {
    out << format_double(row.strength) << ',' << row.circuit_index << ','
        << format_double(row.post_prep) << ',' << format_double(row.post_final)
        << '\n';
  }
  return out.str();
}

void write_experiment_outputs(const ExperimentResult& result,
                              const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/results.csv", results_csv(result.rows));
  write_text_file(out_dir + "/archive.json", result.archive_json);
}

std::vector<PurityRow> purity_diagnostic(const ExperimentConfig& config) {
  validate_experiment_config(config);
  const bool has_drb =
      std::find(config.protocols.begin(), config.protocols.end(),
                Protocol::DRB) != config.protocols.end();
  if (!has_drb) {
    throw std::invalid_argument("purity diagnostic needs direct RB in the "
                                "protocol list");
  }

  std::vector<PurityRow> rows;
  const int m = config.m_list.front();
  for (const SweepPoint& point : config.noise_sweep) {
    const ProtocolRunSpec spec =
        make_run_spec(config, Protocol::DRB, point.model);
    for (int k = 0; k < config.circuits_per_depth; ++k) {
      const DrbInstance inst = drb_instance(spec, m, k);

      DensityMatrix rho = DensityMatrix::zero_state(spec.w);
      rho = apply_boundary_noise(rho, point.model, GateClass::StatePrep);
      rho = apply_compiled(compile_circuit(inst.prep, point.model), rho);
      PurityRow row;
      row.strength = point.strength;
      row.circuit_index = k;
      row.post_prep = purity(rho);

      Circuit rest = inst.full;
      rest.layers.erase(rest.layers.begin(),
                        rest.layers.begin() + inst.prep.depth());
      rho = apply_compiled(compile_circuit(rest, point.model), rho);
      row.post_final = purity(rho);
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

struct ArchivedRow {
  std::string protocol;
  std::string noise_kind;
  double strength = 0.0;
  double r_estimate = 0.0;
  double r_ci_low = 0.0;
  double r_ci_high = 0.0;
  double r_tomography = 0.0;
  bool failed = false;
};

// log10(r_est / r_tomo) with both rates floored at 1e-12 so exact zeros
// stay finite.
double log10_ratio(double r_estimate, double r_tomography) {
  const double lo = 1e-12;
  return std::log10(std::max(r_estimate, lo) / std::max(r_tomography, lo));
}

std::string figure_csv_header() {
  return "protocol,noise_kind,strength,r_estimate,r_ci_low,r_ci_high,"
         "r_tomography,abs_log10_ratio,flagged\n";
}

void append_figure_row(std::ostringstream& out, const ArchivedRow& row) {
  const double ratio = std::fabs(log10_ratio(row.r_estimate,
                                             row.r_tomography));
  out << row.protocol << ',' << row.noise_kind << ','
      << format_double(row.strength) << ',' << format_double(row.r_estimate)
      << ',' << format_double(row.r_ci_low) << ','
      << format_double(row.r_ci_high) << ','
      << format_double(row.r_tomography) << ',' << format_double(ratio) << ','
      << (ratio > 0.5 ? 1 : 0) << '\n';
}

}  // namespace

ReportOutput make_report(const std::string& archive_json) {
  json archive = json::parse(archive_json, nullptr, /*allow_exceptions=*/false);
  if (archive.is_discarded() || !archive.is_object() ||
      !archive.contains("rows") || !archive.at("rows").is_array()) {
    throw std::runtime_error(
        "archive is corrupt: expected a JSON object with a rows array");
  }

  std::vector<ArchivedRow> rows;
  for (const json& jr : archive.at("rows")) {
    ArchivedRow row;
    row.protocol = jr.value("protocol", std::string("?"));
    row.noise_kind = jr.value("noise_kind", std::string("?"));
    row.strength = read_number_or_nan(jr, "strength");
    row.r_estimate = read_number_or_nan(jr, "r_estimate");
    row.r_ci_low = read_number_or_nan(jr, "r_ci_low");
    row.r_ci_high = read_number_or_nan(jr, "r_ci_high");
    row.r_tomography = read_number_or_nan(jr, "r_tomography");
    row.failed = jr.value("failed", false);
    rows.push_back(std::move(row));
  }

  std::ostringstream fig2, fig3, fig3c, fig5;
  fig2 << figure_csv_header();
  fig3 << figure_csv_header();
  fig3c << figure_csv_header();
  fig5 << figure_csv_header();
  int n_usable = 0;
  for (const ArchivedRow& row : rows) {
    if (row.failed) continue;
    ++n_usable;
    const bool is_combined =
        row.noise_kind.find('+') != std::string::npos;
    if (row.noise_kind == "depolarizing") append_figure_row(fig2, row);
    if (!is_combined && row.noise_kind != "depolarizing" &&
        row.noise_kind != "none") {
      append_figure_row(fig3, row);
    }
    if (is_combined) append_figure_row(fig3c, row);
    if (row.protocol == "drb") append_figure_row(fig5, row);
  }

  std::ostringstream fig6;
  fig6 << "strength,circuit_index,post_prep_purity,post_final_purity\n";
  if (archive.contains("purity") && archive.at("purity").is_array()) {
    for (const json& jp : archive.at("purity")) {
      fig6 << format_double(read_number_or_nan(jp, "strength")) << ','
           << jp.value("circuit_index", 0) << ','
           << format_double(read_number_or_nan(jp, "post_prep")) << ','
           << format_double(read_number_or_nan(jp, "post_final")) << '\n';
    }
  }

  ReportOutput out;
  out.csv_files["fig2_depolarizing"] = fig2.str();
  out.csv_files["fig3_single_noise"] = fig3.str();
  out.csv_files["fig3_combined"] = fig3c.str();
  out.csv_files["fig5_t1_dominance"] = fig5.str();
  out.csv_files["fig6_purity"] = fig6.str();

  std::ostringstream summary;
  summary << "rows: " << rows.size() << " (" << n_usable << " usable, "
          << rows.size() - n_usable << " failed)\n";
  if (rows.empty()) {
    summary << "archive contains zero result rows\n";
    out.summary = summary.str();
    return out;
  }

  // Worst multiplicative deviation from the tomography reference, per
  // protocol and noise kind.
  std::map<std::pair<std::string, std::string>, std::pair<double, double>>
      worst;  // (protocol, kind) -> (factor, strength)
  for (const ArchivedRow& row : rows) {
    if (row.failed || !std::isfinite(row.r_estimate) ||
        !std::isfinite(row.r_tomography)) {
      continue;
    }
    const double lo = 1e-12;
    const double a = std::max(row.r_estimate, lo);
    const double b = std::max(row.r_tomography, lo);
    const double factor = std::max(a / b, b / a);
    auto& slot = worst[{row.protocol, row.noise_kind}];
    if (factor > slot.first) slot = {factor, row.strength};
  }
  summary << "max deviation from tomography (factor, at strength):\n";
  for (const auto& [key, value] : worst) {
    summary << "  " << key.first << " / " << key.second << ": "
            << format_double(value.first) << " at "
            << format_double(value.second) << '\n';
  }

  // Strength at which direct RB first leaves the half-decade band around
  // the reference, per noise kind.
  std::map<std::string, double> first_flag;
  for (const ArchivedRow& row : rows) {
    if (row.failed || row.protocol != "drb") continue;
    if (!std::isfinite(row.r_estimate) || !std::isfinite(row.r_tomography)) {
      continue;
    }
    if (std::fabs(log10_ratio(row.r_estimate, row.r_tomography)) > 0.5) {
      auto it = first_flag.find(row.noise_kind);
      if (it == first_flag.end() || row.strength < it->second) {
        first_flag[row.noise_kind] = row.strength;
      }
    }
  }
  summary << "direct RB first exceeds half a decade from tomography at:\n";
  if (first_flag.empty()) {
    summary << "  never within this archive\n";
  } else {
    for (const auto& [kind, strength] : first_flag) {
      summary << "  " << kind << ": strength " << format_double(strength)
              << '\n';
    }
  }
  out.summary = summary.str();
  return out;
}

ReportOutput make_report_from_file(const std::string& archive_path) {
  std::string text;
  try {
    text = read_text_file(archive_path);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("archive load failed: ") + e.what());
  }
  return make_report(text);
}

void write_report(const ReportOutput& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [stem, content] : report.csv_files) {
    write_text_file(out_dir + "/" + stem + ".csv", content);
  }
  write_text_file(out_dir + "/summary.txt", report.summary);
}

}  // namespace qubench
