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

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "qubench/circgen.hpp"
#include "qubench/fitting.hpp"
#include "qubench/protocols.hpp"
#include "qubench/state.hpp"

using namespace qubench;

namespace {

ProtocolRunSpec small_spec(Protocol protocol, int w, double xi) {
  ProtocolRunSpec spec;
  spec.protocol = protocol;
  spec.w = w;
  spec.topology = Topology::line(w);
  spec.xi = xi;
  spec.m_list = {2, 4};
  spec.circuits_per_depth = 2;
  spec.shots = 0;
  spec.seed = 42;
  return spec;
}

bool same_gates(const Layer& a, const Layer& b) {
  if (a.ops.size() != b.ops.size()) return false;
  for (std::size_t i = 0; i < a.ops.size(); ++i) {
    if (a.ops[i].name != b.ops[i].name) return false;
    if (a.ops[i].qubits != b.ops[i].qubits) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("protocol plumbing") {
  TEST_CASE("names round-trip") {
    for (Protocol p : {Protocol::DRB, Protocol::MRB, Protocol::CRB}) {
      CHECK(protocol_from_str(protocol_str(p)) == p);
    }
    CHECK_THROWS_AS(protocol_from_str("xrb"), std::invalid_argument);
  }

  TEST_CASE("work-unit seeds are stable and separated") {
    const std::uint64_t s = cell_seed(7, Protocol::DRB, 4, 2);
    CHECK(cell_seed(7, Protocol::DRB, 4, 2) == s);
    std::set<std::uint64_t> seen;
    for (Protocol p : {Protocol::DRB, Protocol::MRB, Protocol::CRB}) {
      for (int m : {2, 4}) {
        for (int k = 0; k < 3; ++k) {
          for (int pi : {0, 1}) {
            seen.insert(cell_seed(7, p, m, k, pi));
          }
        }
      }
    }
    CHECK(seen.size() == 36);
    CHECK(cell_seed(8, Protocol::DRB, 4, 2) != s);
  }

  TEST_CASE("spec validation rejects bad shapes") {
    ProtocolRunSpec good = small_spec(Protocol::DRB, 2, 0.5);
    CHECK_NOTHROW(validate_run_spec(good));

    ProtocolRunSpec bad = good;
    bad.m_list = {2};
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);
    bad = good;
    bad.m_list = {4, 2};
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);
    bad = good;
    bad.m_list = {2, 2};
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);
    bad = good;
    bad.circuits_per_depth = 0;
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);
    bad = good;
    bad.xi = 1.5;
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);
    bad = good;
    bad.topology = Topology::line(3);
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);
    bad = good;
    bad.w = 6;
    CHECK_THROWS_AS(validate_run_spec(bad), std::invalid_argument);

    ProtocolRunSpec mirror = small_spec(Protocol::MRB, 2, 0.5);
    mirror.m_list = {2, 3};
    CHECK_THROWS_AS(validate_run_spec(mirror), std::invalid_argument);

    ProtocolRunSpec mixed = small_spec(Protocol::MRB, 2, 0.5);
    CHECK_THROWS_AS(run_drb(mixed), std::invalid_argument);
  }
}

TEST_SUITE("score functions") {
  TEST_CASE("survival probability reads the target diagonal") {
    const DensityMatrix rho = DensityMatrix::zero_state(2);
    CHECK(survival_probability(rho, "00") == doctest::Approx(1.0));
    CHECK(survival_probability(rho, "01") == doctest::Approx(0.0));
    CHECK_THROWS_AS(survival_probability(rho, "0"), std::invalid_argument);
  }

  TEST_CASE("effective polarization endpoints") {
    CHECK(effective_polarization({1.0, 0.0, 0.0, 0.0}, 0, 2) ==
          doctest::Approx(1.0));
    CHECK(effective_polarization({0.0, 0.0, 1.0, 0.0}, 2, 2) ==
          doctest::Approx(1.0));
    CHECK(effective_polarization({0.25, 0.25, 0.25, 0.25}, 1, 2) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(effective_polarization({0.5, 0.5}, 0, 1) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("single-qubit polarization matches the closed form") {
    const double p0 = 0.8;
    const double p1 = 0.2;
    const double expected = 4.0 / 3.0 * (p0 - 0.5 * p1) - 1.0 / 3.0;
    CHECK(effective_polarization({p0, p1}, 0, 1) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(effective_polarization({p0, p1}, 0, 1) == doctest::Approx(0.6));
    CHECK_THROWS_AS(effective_polarization({p0, p1}, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(effective_polarization({p0, p1, 0.0}, 0, 1),
                    std::invalid_argument);
  }
}

TEST_SUITE("probe sets and cycles") {
  TEST_CASE("probe Paulis are exhaustive for small widths") {
    bool exhaustive = false;
    const auto one = crb_pauli_set(1, 5, &exhaustive);
    CHECK(exhaustive);
    CHECK(one == std::vector<std::string>{"X", "Y", "Z"});

    const auto two = crb_pauli_set(2, 5, &exhaustive);
    CHECK(exhaustive);
    REQUIRE(two.size() == 15);
    CHECK(two.front() == "IX");
    CHECK(two.back() == "ZZ");
    CHECK(std::set<std::string>(two.begin(), two.end()).size() == 15);
  }

  TEST_CASE("probe Paulis are sampled without replacement at width 3") {
    bool exhaustive = true;
    const auto three = crb_pauli_set(3, 5, &exhaustive);
    CHECK_FALSE(exhaustive);
    REQUIRE(three.size() == 20);
    std::set<std::string> distinct(three.begin(), three.end());
    CHECK(distinct.size() == 20);
    for (const std::string& label : three) {
      CHECK(label.size() == 3);
      CHECK(label != "III");
    }
    CHECK(crb_pauli_set(3, 5) == three);
    CHECK(crb_pauli_set(3, 6) != three);
  }

  TEST_CASE("the benchmarked cycle is a fill and coupling layer pair") {
    const ProtocolRunSpec spec = small_spec(Protocol::CRB, 2, 0.75);
    const Circuit cycle = crb_cycle(spec);
    CHECK(cycle.width == 2);
    REQUIRE(cycle.depth() == 2);
    REQUIRE(cycle.layers[0].ops.size() == 2);
    for (const GateOp& op : cycle.layers[0].ops) CHECK(op.arity() == 1);
    REQUIRE(cycle.layers[1].ops.size() == 1);
    CHECK(cycle.layers[1].ops[0].arity() == 2);
    CHECK(circuit_to_json(crb_cycle(spec)) == circuit_to_json(cycle));
  }

  TEST_CASE("a coupling-free cycle is the fill layer alone") {
    const ProtocolRunSpec spec = small_spec(Protocol::CRB, 2, 0.0);
    const Circuit cycle = crb_cycle(spec);
    REQUIRE(cycle.depth() == 1);
    for (const GateOp& op : cycle.layers[0].ops) CHECK(op.arity() == 1);
  }
}

TEST_SUITE("direct RB") {
  TEST_CASE("instances fold prep, core and inverse") {
    const ProtocolRunSpec spec = small_spec(Protocol::DRB, 2, 0.75);
    const DrbInstance inst = drb_instance(spec, 4, 1);
    CHECK(inst.prep.depth() == spec.w + 2);
    CHECK(inst.full.depth() == 2 * (4 + spec.w + 2));
    for (int li = 0; li < inst.prep.depth(); ++li) {
      CHECK(same_gates(inst.full.layers[li], inst.prep.layers[li]));
    }
    const CMatrix u = ideal_unitary(inst.full);
    CHECK(max_abs_diff(u, CMatrix::Identity(4, 4)) < 1e-12);
  }

  TEST_CASE("noiseless circuits always return to all zeros") {
    const ProtocolRunSpec spec = small_spec(Protocol::DRB, 2, 0.75);
    const auto samples = run_drb(spec);
    REQUIRE(samples.size() == 4);
    for (const DecaySample& s : samples) {
      CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(s.pauli.empty());
    }
    CHECK(samples[0].depth == 4);
    CHECK(samples[2].depth == 8);
    CHECK(samples[0].circuit_seed == cell_seed(spec.seed, Protocol::DRB, 2, 0));
  }

  TEST_CASE("depolarizing survival matches the closed form") {
    ProtocolRunSpec spec = small_spec(Protocol::DRB, 1, 0.0);
    spec.circuits_per_depth = 4;
    spec.noise = NoiseModel::uniform(NoiseSpec::depolarizing(0.1));
    const auto samples = run_drb(spec);
    REQUIRE(samples.size() == 8);
    for (const DecaySample& s : samples) {
      const int m = s.depth / 2;
      // Every one of the 2m + 6 layers is a single noisy gate; depolarizing
      // shrinks the Bloch vector by (1 - p) per gate and the ideal circuit
      // returns to |0>.
      const double expected = 0.5 * (1.0 + std::pow(0.9, 2 * m + 6));
      CHECK(s.value == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  TEST_CASE("sampled readout stays near the exact value") {
    ProtocolRunSpec spec = small_spec(Protocol::DRB, 1, 0.0);
    spec.noise = NoiseModel::uniform(NoiseSpec::depolarizing(0.1));
    spec.shots = 20000;
    const auto samples = run_drb(spec);
    for (const DecaySample& s : samples) {
      const int m = s.depth / 2;
      const double expected = 0.5 * (1.0 + std::pow(0.9, 2 * m + 6));
      const double sigma = std::sqrt(expected * (1.0 - expected) / 20000.0);
      CHECK(std::abs(s.value - expected) < 5.0 * sigma);
    }
    CHECK(run_drb(spec)[0].value == samples[0].value);
  }
}

TEST_SUITE("mirror RB") {
  TEST_CASE("noiseless polarization is one") {
    const ProtocolRunSpec spec = small_spec(Protocol::MRB, 2, 0.75);
    const auto samples = run_mrb(spec);
    REQUIRE(samples.size() == 4);
    CHECK(samples[0].depth == 2);
    CHECK(samples[2].depth == 4);
    for (const DecaySample& s : samples) {
      CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  TEST_CASE("depolarizing polarization matches the closed form") {
    ProtocolRunSpec spec = small_spec(Protocol::MRB, 2, 0.0);
    spec.circuits_per_depth = 5;
    spec.noise = NoiseModel::uniform(NoiseSpec::depolarizing(0.2));
    const auto samples = run_mrb(spec);
    REQUIRE(samples.size() == 10);
    for (const DecaySample& s : samples) {
      // m + 2 all-single-qubit layers leave each qubit with polarization
      // q = 0.8^(m+2); the Hamming histogram then sums to
      // ((1 + 3q)^2 - 1) / 15.
      const double q = std::pow(0.8, s.depth + 2);
      const double expected = (std::pow(1.0 + 3.0 * q, 2) - 1.0) / 15.0;
      CHECK(s.value == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_SUITE("cycle RB") {
  TEST_CASE("noiseless expectation values are one") {
    const ProtocolRunSpec spec = small_spec(Protocol::CRB, 2, 0.75);
    const auto samples = run_crb(spec);
    REQUIRE(samples.size() == 15 * 2 * 2);
    for (const DecaySample& s : samples) {
      CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
      CHECK_FALSE(s.pauli.empty());
    }
  }

  TEST_CASE("dephasing decays transverse probes only") {
    ProtocolRunSpec spec = small_spec(Protocol::CRB, 1, 0.0);
    const double lambda = 0.19;
    spec.noise.per_gate_class[GateClass::OneQubitGate] = {
        NoiseSpec::t2(lambda)};

    Circuit cycle;
    cycle.width = 1;
    cycle.topology = Topology::line(1);
    Layer layer;
    layer.ops.push_back(GateOp::single(GateName::Z, 0));
    cycle.layers = {layer};

    const auto samples = run_crb_with_cycle(spec, cycle);
    REQUIRE(samples.size() == 3 * 2 * 2);
    const double root = std::sqrt(1.0 - lambda);
    for (const DecaySample& s : samples) {
      REQUIRE((s.pauli == "X" || s.pauli == "Y" || s.pauli == "Z"));
      double expected = 1.0;
      if (s.pauli == "X") {
        // One noisy prep gate plus m noisy cycle gates, each scaling the
        // transverse coherence by sqrt(1 - lambda).
        expected = std::pow(root, s.depth + 1);
      } else if (s.pauli == "Y") {
        expected = std::pow(root, s.depth + 2);
      }
      CHECK(s.value == doctest::Approx(expected).epsilon(1e-10));
    }

    const CrbFitSummary fit = fit_crb(samples, 1);
    CHECK(fit.mean_p == doctest::Approx((2.0 * root + 1.0) / 3.0)
                            .epsilon(1e-6));
    CHECK(fit.process_infidelity ==
          doctest::Approx(0.75 * (1.0 - fit.mean_p)).epsilon(1e-9));
  }
}

TEST_SUITE("reference ensembles") {
  TEST_CASE("layer counts follow the protocol structure") {
    ProtocolRunSpec drb = small_spec(Protocol::DRB, 2, 0.5);
    drb.circuits_per_depth = 3;
    CHECK(reference_layer_ensemble(drb).size() == 3u * 4u);
    CHECK(reference_circuit_ensemble(drb).size() == 3);
    CHECK(reference_circuit_ensemble(drb)[0].depth() == 4);

    ProtocolRunSpec mrb = small_spec(Protocol::MRB, 2, 0.5);
    mrb.circuits_per_depth = 3;
    CHECK(reference_layer_ensemble(mrb).size() == 3u * 4u);
    CHECK(reference_circuit_ensemble(mrb).size() == 3);
    CHECK(reference_circuit_ensemble(mrb)[0].depth() == 2);

    // At xi = 0.5 a depth-1 draw carries no two-qubit budget, so the cycle
    // is the fill layer alone; at xi = 1.0 the coupling layer joins it.
    ProtocolRunSpec crb = small_spec(Protocol::CRB, 2, 0.5);
    CHECK(reference_layer_ensemble(crb).size() == 1);
    CHECK(reference_circuit_ensemble(crb).size() == 1);
    ProtocolRunSpec dense = small_spec(Protocol::CRB, 2, 1.0);
    CHECK(reference_layer_ensemble(dense).size() == 2);
    CHECK(reference_circuit_ensemble(dense).size() == 1);
    CHECK(reference_circuit_ensemble(dense)[0].depth() == 2);
  }

  TEST_CASE("mirror references pair each layer with its inverse") {
    ProtocolRunSpec mrb = small_spec(Protocol::MRB, 2, 0.5);
    mrb.circuits_per_depth = 1;
    const auto layers = reference_layer_ensemble(mrb);
    REQUIRE(layers.size() == 4);
    for (std::size_t j = 0; j < layers.size(); j += 2) {
      CHECK(same_gates(invert_layer(layers[j]), layers[j + 1]));
    }
  }

  TEST_CASE("twirl records replay from the stored sample seed") {
    ProtocolRunSpec spec = small_spec(Protocol::CRB, 2, 1.0);
    const Circuit cycle = crb_cycle(spec);
    const std::uint64_t s = cell_seed(spec.seed, Protocol::CRB, 4, 0, 1);
    const auto records = crb_twirl_records(spec, cycle, 4, s);
    // Every layer of the repeated pair is dressed: 4 fills, 4 couplings.
    CHECK(records.size() == 8);
    for (const TwirlRecord& rec : records) {
      CHECK(rec.twirl.size() == 2);
      CHECK(rec.correction.size() == 2);
    }
    CHECK(crb_twirl_records(spec, cycle, 4, s).size() == records.size());
  }
}
