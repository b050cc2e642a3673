// test_optimizer.cpp - Feasibility checks on the published solution, solver
// equivalence on small instances, degenerate cases.
//
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "slicebound/optimizer.hpp"

using namespace slicebound;

namespace {

const std::string kFixtures = SLICEBOUND_FIXTURE_DIR;

Scenario fig6()
{
    return Scenario::load(kFixtures + "/fig6_default.scenario");
}

Decision reference_decision(const Scenario& sc)
{
    std::ifstream in(kFixtures + "/reference_decision.json");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    Decision d = decision_from_json(buffer.str());
    for (auto& [key, path] : d.paths) {
        path.link_distances_m.clear();
        for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
            path.link_distances_m.push_back(
                sc.topology.link_distance(path.nodes[i], path.nodes[i + 1]));
        }
    }
    return d;
}

// Two vDUs behind one aggregation node. The radio config is scaled down a
// decade so the split capacity requirements fit toy link rates, and the delay
// SLA forces real admission trade-offs at a coarse grid.
Scenario tiny_scenario(double agg_capacity_bps, double urllc_sla_s, int f_max)
{
    std::ostringstream json;
    json << R"({
      "name": "tiny",
      "nodes": [
        {"id": "d1", "capacity_bps": 150e6, "latency_s": 20e-6},
        {"id": "d2", "capacity_bps": 150e6, "latency_s": 20e-6},
        {"id": "agg", "capacity_bps": )"
         << agg_capacity_bps << R"(, "latency_s": 10e-6},
        {"id": "cu", "capacity_bps": 400e6, "latency_s": 10e-6}
      ],
      "links": [
        {"a": "cu", "b": "agg", "distance_m": 2000},
        {"a": "agg", "b": "d1", "distance_m": 2000},
        {"a": "agg", "b": "d2", "distance_m": 2000}
      ],
      "roles": {"cu": "cu", "dus": [], "vdus": ["d1", "d2"], "rus": []},
      "slices": [
        {"name": "urllc", "class": "URLLC", "d_sla_s": )"
         << urllc_sla_s << R"(, "mu_sla_bps": 1.024e6, "packet_bytes": 128},
        {"name": "embb", "class": "EMBB", "d_sla_s": 0, "mu_sla_bps": 0, "packet_bytes": 1500}
      ],
      "embb_demand": [
        {"vdu": "d1", "rate_bps": 4e6, "rb_count": 5},
        {"vdu": "d2", "rate_bps": 4e6, "rb_count": 5}
      ],
      "radio": {"tbs_dl_bits": 7538, "n_rb": 10, "sample_rate_bps": 3.072e6},
      "econ": {"eta": 0.2585, "zeta": 0.5571, "f_max": )"
         << f_max << R"(, "c_du": 1.0},
      "processing": {"z_ref_s": 750e-6, "x_ref_bps": 1e9, "k_vdu": 16, "k_cu": 32},
      "split_set": ["O1", "O9"]
    })";
    return Scenario::from_json_text(json.str());
}

}  // namespace

TEST_CASE("published decision is feasible on the 20 percent instance")
{
    const Scenario sc = fig6();
    const Decision decision = reference_decision(sc);
    const FeasibilityReport report = check_feasibility(sc, decision);
    for (const ConstraintRecord& r : report.violations()) {
        CAPTURE(r.constraint);
        CAPTURE(r.where);
        CHECK(r.ok);
    }
    CHECK(report.feasible);

    // Every URLLC bound stays under the 1 ms SLA.
    for (const FlowDelayRow& row : analyze_all(sc, decision)) {
        if (row.key.slice == "urllc") {
            CHECK(row.breakdown.total_s() <= 1e-3);
        }
    }
}

TEST_CASE("share-limit violations are reported")
{
    const Scenario sc = fig6();
    Decision decision = reference_decision(sc);
    decision.shares.set_share("v9", {"urllc", "v1"}, 0.30);  // pushes v9 over 1.0
    const FeasibilityReport report = check_feasibility(sc, decision);
    CHECK(!report.feasible);
    bool found = false;
    for (const ConstraintRecord& r : report.violations()) {
        found = found || (r.constraint == "share-limit" && r.where == "v9");
    }
    CHECK(found);
}

TEST_CASE("inflated node latencies violate the split latency budget")
{
    Scenario sc = fig6();
    // 100 us per hop exceeds the 250 us one-way budget of the PHY-level splits.
    std::vector<TransportNode> nodes = sc.topology.nodes();
    for (TransportNode& n : nodes) {
        n.latency_s = 100e-6;
    }
    sc.topology = Topology(std::move(nodes), sc.topology.links());
    const Decision decision = reference_decision(sc);
    const FeasibilityReport report = check_feasibility(sc, decision);
    CHECK(!report.feasible);
    bool found = false;
    for (const ConstraintRecord& r : report.violations()) {
        found = found || r.constraint == "split-latency";
    }
    CHECK(found);
}

TEST_CASE("tiny instance: exhaustive matches a hand enumeration")
{
    // One vDU reachable via one path; grid coarse enough to enumerate by hand.
    Scenario sc = tiny_scenario(150e6, 1e-3, 8);
    sc.vdus = {"d1"};
    sc.embb_demands.clear();
    sc.embb_demands.push_back({"d1", 4e6, 5});

    SolveOptions options;
    options.grid_step = 0.25;
    const SolveResult result = solve_exhaustive(sc, options);
    REQUIRE(result.status == SolveStatus::Optimal);

    // cap = min(100-95, 8) = 5 UEs. Both splits can admit all five within the
    // SLA here, so the cheaper centralized split wins.
    CHECK(result.solution.decision.split_per_vdu.at("d1") == SplitId::O9);
    CHECK(result.solution.decision.admitted_urllc.at("d1") == 5);
    CHECK(result.solution.profit ==
          doctest::Approx(result.solution.gamma * 5 - 6 * 0.2585).epsilon(1e-12));
    CHECK(result.solution.certificate.feasible);
}

TEST_CASE("zero URLLC demand leaves the cost-minimal centralized split")
{
    Scenario sc = tiny_scenario(400e6, 1e-3, 8);
    // Remove the URLLC slice entirely.
    sc.slices.erase(sc.slices.begin());
    SolveOptions options;
    options.grid_step = 0.25;
    const SolveResult result = solve_exhaustive(sc, options);
    REQUIRE(result.status == SolveStatus::Optimal);
    CHECK(result.solution.total_admitted == 0);
    for (const auto& [vdu, split] : result.solution.decision.split_per_vdu) {
        CHECK(split == SplitId::O9);
    }
    CHECK(result.solution.profit == doctest::Approx(-2 * 6 * 0.2585).epsilon(1e-12));
}

TEST_CASE("unreachable SLA admits nobody")
{
    // SLA below even the propagation delay.
    Scenario sc = tiny_scenario(100e6, 10e-6, 8);
    SolveOptions options;
    options.grid_step = 0.25;
    const SolveResult result = solve_exhaustive(sc, options);
    REQUIRE(result.status == SolveStatus::Optimal);
    CHECK(result.solution.total_admitted == 0);
}

TEST_CASE("branch and bound equals exhaustive on randomized tiny instances")
{
    std::mt19937_64 rng(20230917);
    std::uniform_real_distribution<double> agg_d(30e6, 120e6);
    std::uniform_real_distribution<double> sla_d(0.3e-3, 1.5e-3);
    std::uniform_int_distribution<int> fmax_d(2, 10);
    for (int i = 0; i < 25; ++i) {
        const Scenario sc = tiny_scenario(agg_d(rng), sla_d(rng), fmax_d(rng));
        SolveOptions options;
        options.grid_step = 0.25;
        const SolveResult a = solve_exhaustive(sc, options);
        const SolveResult b = solve_bnb(sc, options);
        REQUIRE(a.status == b.status);
        if (a.status == SolveStatus::Optimal) {
            CHECK(a.solution.profit == b.solution.profit);
            CHECK(a.solution.deployment_cost == b.solution.deployment_cost);
            CHECK(a.solution.total_admitted == b.solution.total_admitted);
            CHECK(decision_to_json(a.solution.decision) ==
                  decision_to_json(b.solution.decision));
        }
    }
}

TEST_CASE("solver certificates re-validate")
{
    const Scenario sc = tiny_scenario(80e6, 1e-3, 8);
    SolveOptions options;
    options.grid_step = 0.25;
    const auto before = diag::snapshot();
    const SolveResult result = solve_bnb(sc, options);
    REQUIRE(result.status == SolveStatus::Optimal);
    CHECK(result.solution.certificate.feasible);
    const FeasibilityReport again = check_feasibility(sc, result.solution.decision);
    CHECK(again.feasible);
    // The share allocator actually ran.
    CHECK(diag::snapshot().evals > before.evals);
}

TEST_CASE("enlarging the split set never lowers the optimum")
{
    Scenario restricted = tiny_scenario(400e6, 0.8e-3, 8);
    restricted.split_set = {SplitId::O9};
    Scenario full = restricted;
    full.split_set = {SplitId::O1, SplitId::O2, SplitId::O4, SplitId::O6, SplitId::O8,
                      SplitId::O9};
    SolveOptions options;
    options.grid_step = 0.25;
    const SolveResult small = solve_bnb(restricted, options);
    const SolveResult big = solve_bnb(full, options);
    REQUIRE(small.status == SolveStatus::Optimal);
    REQUIRE(big.status == SolveStatus::Optimal);
    CHECK(big.solution.profit >= small.solution.profit);
}
