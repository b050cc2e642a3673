// topology.cpp - Graph, path enumeration and share bookkeeping. See topology.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/topology.hpp"

#include <algorithm>
#include <set>

namespace slicebound {

Topology::Topology(std::vector<TransportNode> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links))
{
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].capacity_bps <= 0.0) {
            throw TopologyError("node " + nodes_[i].id + " has non-positive capacity");
        }
        if (nodes_[i].latency_s < 0.0) {
            throw TopologyError("node " + nodes_[i].id + " has negative latency");
        }
        if (!index_.emplace(nodes_[i].id, i).second) {
            throw TopologyError("duplicate node id " + nodes_[i].id);
        }
    }
    for (const Link& link : links_) {
        if (!has_node(link.a) || !has_node(link.b)) {
            throw TopologyError("link " + link.a + "-" + link.b + " references unknown node");
        }
        if (link.distance_m < 0.0) {
            throw TopologyError("link " + link.a + "-" + link.b + " has negative distance");
        }
        adjacency_[link.a].push_back(link.b);
        adjacency_[link.b].push_back(link.a);
    }
    for (auto& [id, neighbors] : adjacency_) {
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    }
}

const TransportNode& Topology::node(const NodeId& id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw TopologyError("unknown node " + id);
    }
    return nodes_[it->second];
}

double Topology::link_distance(const NodeId& a, const NodeId& b) const
{
    for (const Link& link : links_) {
        if ((link.a == a && link.b == b) || (link.a == b && link.b == a)) {
            return link.distance_m;
        }
    }
    throw TopologyError("no link between " + a + " and " + b);
}

std::vector<RoutePath> Topology::enumerate_paths(const NodeId& cu, const NodeId& vdu,
                                                 std::size_t max_hops) const
{
    node(cu);
    node(vdu);
    std::vector<RoutePath> result;
    std::vector<NodeId> current{cu};
    std::set<NodeId> visited{cu};

    auto dfs = [&](auto&& self, const NodeId& at) -> void {
        if (at == vdu) {
            RoutePath path;
            path.nodes = current;
            for (std::size_t i = 0; i + 1 < current.size(); ++i) {
                path.link_distances_m.push_back(link_distance(current[i], current[i + 1]));
            }
            result.push_back(std::move(path));
            return;
        }
        // max_hops counts links: a path may grow to max_hops + 1 nodes.
        if (max_hops != 0 && current.size() > max_hops) {
            return;
        }
        auto it = adjacency_.find(at);
        if (it == adjacency_.end()) {
            return;
        }
        for (const NodeId& next : it->second) {
            if (visited.count(next)) {
                continue;
            }
            visited.insert(next);
            current.push_back(next);
            self(self, next);
            current.pop_back();
            visited.erase(next);
        }
    };
    dfs(dfs, cu);

    if (result.empty()) {
        throw TopologyError("vDU " + vdu + " is unreachable from " + cu);
    }
    std::sort(result.begin(), result.end(), [](const RoutePath& x, const RoutePath& y) {
        if (x.nodes.size() != y.nodes.size()) {
            return x.nodes.size() < y.nodes.size();
        }
        return x.nodes < y.nodes;
    });
    return result;
}

void ShareTable::set_share(const NodeId& node, const SliceKey& key, double share)
{
    if (share < 0.0 || share > 1.0) {
        throw TopologyError("share " + std::to_string(share) + " for " + key.str() + " at " +
                            node + " outside [0,1]");
    }
    shares_[{node, key}] = share;
}

double ShareTable::share(const NodeId& node, const SliceKey& key) const
{
    auto it = shares_.find({node, key});
    return it == shares_.end() ? 0.0 : it->second;
}

bool ShareTable::has_share(const NodeId& node, const SliceKey& key) const
{
    auto it = shares_.find({node, key});
    return it != shares_.end() && it->second > 0.0;
}

double ShareTable::allocated_rate_bps(const Topology& topo, const NodeId& node,
                                      const SliceKey& key) const
{
    return share(node, key) * topo.node(node).capacity_bps;
}

double ShareTable::node_total(const NodeId& node) const
{
    double total = 0.0;
    for (const auto& [node_key, share] : shares_) {
        if (node_key.first == node) {
            total += share;
        }
    }
    return total;
}

std::vector<double> weights_to_shares(std::span<const double> weights)
{
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw TopologyError("negative weight");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw TopologyError("all weights are zero");
    }
    std::vector<double> shares;
    shares.reserve(weights.size());
    for (double w : weights) {
        shares.push_back(w / total);
    }
    return shares;
}

double propagation_delay_s(const RoutePath& path, double speed_mps)
{
    double total_m = 0.0;
    for (double d : path.link_distances_m) {
        if (d < 0.0) {
            throw TopologyError("negative link distance");
        }
        total_m += d;
    }
    return total_m / speed_mps;
}

void validate_feedforward(const Topology& topo, std::span<const RoutePath> routes)
{
    std::set<std::pair<NodeId, NodeId>> edges;
    for (const RoutePath& route : routes) {
        for (std::size_t i = 0; i + 1 < route.nodes.size(); ++i) {
            topo.node(route.nodes[i]);
            topo.node(route.nodes[i + 1]);
            edges.insert({route.nodes[i], route.nodes[i + 1]});
        }
    }
    // DFS cycle detection on the union digraph.
    std::map<NodeId, int> state;  // 0 unseen, 1 on stack, 2 done
    std::map<NodeId, std::vector<NodeId>> out;
    for (const auto& [from, to] : edges) {
        out[from].push_back(to);
    }
    std::vector<NodeId> stack;
    auto dfs = [&](auto&& self, const NodeId& at) -> void {
        state[at] = 1;
        stack.push_back(at);
        for (const NodeId& next : out[at]) {
            if (state[next] == 1) {
                std::string cycle = next;
                for (auto it = std::find(stack.begin(), stack.end(), next); it != stack.end();
                     ++it) {
                    if (*it != next) {
                        cycle += " -> " + *it;
                    }
                }
                cycle += " -> " + next;
                throw TopologyError("routing graph has a cycle: " + cycle);
            }
            if (state[next] == 0) {
                self(self, next);
            }
        }
        stack.pop_back();
        state[at] = 2;
    };
    for (const auto& [from, tos] : out) {
        if (state[from] == 0) {
            dfs(dfs, from);
        }
    }
}

}  // namespace slicebound
