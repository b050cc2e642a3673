// topology.hpp - Transport-network graph (CU, ring, DUs, vDUs), simple-path
// enumeration, GPS share bookkeeping and propagation delay.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_TOPOLOGY_HPP
#define SLICEBOUND_TOPOLOGY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicebound {

struct TopologyError : std::runtime_error {
    explicit TopologyError(const std::string& what) : std::runtime_error(what) {}
};

using NodeId = std::string;

struct TransportNode {
    NodeId id;
    double capacity_bps = 0.0;  // R_v
    double latency_s = 0.0;     // T_v
};

struct Link {
    NodeId a;
    NodeId b;
    double distance_m = 0.0;
};

// Queue identity: one FIFO queue per (slice, vDU) pair at every node it crosses.
struct SliceKey {
    std::string slice;
    NodeId vdu;

    auto operator<=>(const SliceKey&) const = default;
    std::string str() const { return slice + ":" + vdu; }
};

// A route from the CU (first node) down to a vDU (last node).
struct RoutePath {
    std::vector<NodeId> nodes;
    std::vector<double> link_distances_m;  // size nodes.size() - 1

    std::size_t hop_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

class Topology {
public:
    Topology() = default;
    Topology(std::vector<TransportNode> nodes, std::vector<Link> links);

    const TransportNode& node(const NodeId& id) const;
    bool has_node(const NodeId& id) const { return index_.count(id) > 0; }
    const std::vector<TransportNode>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    double link_distance(const NodeId& a, const NodeId& b) const;

    // All simple paths from cu to vdu, ordered by hop count then by the node-id
    // sequence, so the result is stable across runs. Throws TopologyError when
    // the vDU is unreachable. max_hops caps the search (0 = unlimited).
    std::vector<RoutePath> enumerate_paths(const NodeId& cu, const NodeId& vdu,
                                           std::size_t max_hops = 0) const;

private:
    std::vector<TransportNode> nodes_;
    std::vector<Link> links_;
    std::map<NodeId, std::size_t> index_;
    std::map<NodeId, std::vector<NodeId>> adjacency_;
};

// Per-node weight/share ledger for the GPS abstraction.
class ShareTable {
public:
    void set_share(const NodeId& node, const SliceKey& key, double share);
    double share(const NodeId& node, const SliceKey& key) const;  // absent => 0
    bool has_share(const NodeId& node, const SliceKey& key) const;

    // phi * R_v for the queue at this node; absent share => 0.
    double allocated_rate_bps(const Topology& topo, const NodeId& node, const SliceKey& key) const;

    // Sum of shares registered at a node.
    double node_total(const NodeId& node) const;

    const std::map<std::pair<NodeId, SliceKey>, double>& entries() const { return shares_; }

private:
    std::map<std::pair<NodeId, SliceKey>, double> shares_;
};

// phi_i = w_i / sum(w). Throws TopologyError when all weights are zero or any
// is negative. The result sums to 1 within 1e-12.
std::vector<double> weights_to_shares(std::span<const double> weights);

// Sum of link distances over the path divided by signal speed.
double propagation_delay_s(const RoutePath& path, double speed_mps);

// Checks that the union of directed edges used by the given routes is acyclic
// (feed-forward). Throws TopologyError naming a cycle otherwise.
void validate_feedforward(const Topology& topo, std::span<const RoutePath> routes);

}  // namespace slicebound

#endif  // SLICEBOUND_TOPOLOGY_HPP
