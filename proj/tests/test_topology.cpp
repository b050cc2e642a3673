// test_topology.cpp - Graph, paths, shares, propagation.
//
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "slicebound/topology.hpp"

using namespace slicebound;

namespace {

// Ring-plus-sink-tree evaluation topology: CU v10, ring v7-v8-v9, DUs v5/v6,
// vDUs v1..v4.
Topology ring_topology()
{
    std::vector<TransportNode> nodes;
    for (int i = 1; i <= 4; ++i) {
        nodes.push_back({"v" + std::to_string(i), 1.2e9, 10e-6});
    }
    nodes.push_back({"v5", 8e9, 5e-6});
    nodes.push_back({"v6", 8e9, 5e-6});
    for (int i = 7; i <= 10; ++i) {
        nodes.push_back({"v" + std::to_string(i), 20e9, 1e-6});
    }
    std::vector<Link> links{{"v10", "v9", 5000}, {"v9", "v7", 5000}, {"v9", "v8", 5000},
                            {"v7", "v8", 5000}, {"v7", "v5", 5000}, {"v8", "v6", 5000},
                            {"v5", "v1", 5000}, {"v5", "v2", 5000}, {"v6", "v3", 5000},
                            {"v6", "v4", 5000}};
    return Topology(std::move(nodes), std::move(links));
}

}  // namespace

TEST_CASE("ring topology yields both ring directions")
{
    const Topology topo = ring_topology();
    const auto paths = topo.enumerate_paths("v10", "v1");
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].nodes == std::vector<NodeId>{"v10", "v9", "v7", "v5", "v1"});
    CHECK(paths[1].nodes == std::vector<NodeId>{"v10", "v9", "v8", "v7", "v5", "v1"});

    // Deterministic ordering: repeated enumeration is identical.
    const auto again = topo.enumerate_paths("v10", "v1");
    REQUIRE(again.size() == paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        CHECK(again[i].nodes == paths[i].nodes);
    }
}

TEST_CASE("linear chain has exactly one path")
{
    Topology topo({{"a", 1e9, 0.0}, {"b", 1e9, 0.0}}, {{"a", "b", 100}});
    const auto paths = topo.enumerate_paths("a", "b");
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].nodes == std::vector<NodeId>{"a", "b"});
    CHECK(paths[0].link_distances_m == std::vector<double>{100});
}

TEST_CASE("disconnected vDU is an error")
{
    Topology topo({{"a", 1e9, 0.0}, {"b", 1e9, 0.0}, {"c", 1e9, 0.0}}, {{"a", "b", 100}});
    CHECK_THROWS_AS(topo.enumerate_paths("a", "c"), TopologyError);
}

TEST_CASE("hop limit prunes long paths")
{
    const Topology topo = ring_topology();
    const auto paths = topo.enumerate_paths("v10", "v1", 4);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].hop_count() == 4);
}

TEST_CASE("weights to shares")
{
    const std::vector<double> w{2.0, 1.0, 1.0};
    const auto shares = weights_to_shares(w);
    CHECK(shares == std::vector<double>{0.5, 0.25, 0.25});

    // Published optimum at node v1 splits 70/30.
    const std::vector<double> v1{0.70, 0.30};
    const auto v1_shares = weights_to_shares(v1);
    CHECK(v1_shares[0] == doctest::Approx(0.70).epsilon(1e-12));
    CHECK(v1_shares[1] == doctest::Approx(0.30).epsilon(1e-12));

    const std::vector<double> single{42.0};
    CHECK(weights_to_shares(single) == std::vector<double>{1.0});

    const std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(weights_to_shares(zeros), TopologyError);
}

TEST_CASE("shares sum to one")
{
    std::vector<double> w;
    for (int i = 1; i <= 17; ++i) {
        w.push_back(0.37 * i);
    }
    const auto shares = weights_to_shares(w);
    double total = 0.0;
    for (double s : shares) {
        total += s;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("allocated rate")
{
    const Topology topo = ring_topology();
    ShareTable table;
    const SliceKey key{"urllc", "v1"};
    table.set_share("v1", key, 0.70);
    CHECK(table.allocated_rate_bps(topo, "v1", key) == doctest::Approx(0.84e9).epsilon(1e-12));
    // Absent share reads as zero.
    CHECK(table.allocated_rate_bps(topo, "v9", key) == 0.0);

    Topology tandem_tail({{"n5", 0.25e9, 0.0}}, {});
    ShareTable tail_shares;
    tail_shares.set_share("n5", key, 0.0625);
    CHECK(tail_shares.allocated_rate_bps(tandem_tail, "n5", key) ==
          doctest::Approx(0.015625e9).epsilon(1e-12));
}

TEST_CASE("propagation delay")
{
    RoutePath path;
    path.nodes = {"a", "b", "c", "d", "e"};
    path.link_distances_m = {5000, 5000, 5000, 5000};
    CHECK(propagation_delay_s(path, 3e8) == doctest::Approx(66.667e-6).epsilon(1e-4));

    RoutePath empty;
    CHECK(propagation_delay_s(empty, 3e8) == 0.0);

    RoutePath one;
    one.nodes = {"a", "b"};
    one.link_distances_m = {5000};
    CHECK(propagation_delay_s(one, 3e8) == doctest::Approx(16.667e-6).epsilon(1e-4));
}

TEST_CASE("propagation is additive over concatenated paths")
{
    RoutePath head;
    head.nodes = {"a", "b", "c"};
    head.link_distances_m = {1200, 3400};
    RoutePath tail;
    tail.nodes = {"c", "d"};
    tail.link_distances_m = {5600};
    RoutePath whole;
    whole.nodes = {"a", "b", "c", "d"};
    whole.link_distances_m = {1200, 3400, 5600};
    CHECK(propagation_delay_s(whole, 2e8) ==
          doctest::Approx(propagation_delay_s(head, 2e8) + propagation_delay_s(tail, 2e8))
              .epsilon(1e-15));
}

TEST_CASE("feed-forward validation")
{
    const Topology topo = ring_topology();

    // Downlink orientation of the evaluation topology is acyclic.
    std::vector<RoutePath> routes;
    for (const NodeId& vdu : {"v1", "v2", "v3", "v4"}) {
        routes.push_back(topo.enumerate_paths("v10", vdu)[0]);
    }
    CHECK_NOTHROW(validate_feedforward(topo, routes));

    // Both directions of one link create a two-node cycle.
    Topology pair({{"a", 1e9, 0.0}, {"b", 1e9, 0.0}}, {{"a", "b", 10}});
    RoutePath ab;
    ab.nodes = {"a", "b"};
    RoutePath ba;
    ba.nodes = {"b", "a"};
    std::vector<RoutePath> both{ab, ba};
    CHECK_THROWS_WITH_AS(validate_feedforward(pair, both),
                         doctest::Contains("cycle"), TopologyError);

    // Empty topology, no routes.
    Topology empty({}, {});
    CHECK_NOTHROW(validate_feedforward(empty, {}));
}
