// delay.cpp - Tandem and tree delay bounds. See delay.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/delay.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace slicebound {

double tandem_delay(const ArrivalCurve& foi, std::span<const ArrivalCurve> cross,
                    std::span<const ServiceCurve> nodes)
{
    std::vector<SlicedNode> sliced;
    sliced.reserve(nodes.size());
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        sliced.push_back({"node" + std::to_string(v), nodes[v].rate_bps, nodes[v].latency_s, 1.0});
    }
    return sliced_tandem_delay(foi, cross, sliced);
}

double sliced_tandem_delay(const ArrivalCurve& foi, std::span<const ArrivalCurve> cross,
                           std::span<const SlicedNode> nodes)
{
    if (nodes.empty()) {
        throw std::invalid_argument("sliced_tandem_delay: empty path");
    }
    double rho_y = 0.0;
    double sigma_y = 0.0;
    for (const ArrivalCurve& c : cross) {
        rho_y += c.rate_bps;
        sigma_y += c.burst_bits;
    }

    double latency_sum = 0.0;
    double bottleneck = std::numeric_limits<double>::infinity();
    NodeId bottleneck_node;
    double cross_terms = 0.0;
    double upstream_latency = 0.0;
    for (const SlicedNode& node : nodes) {
        const double allocated = node.allocated_bps();
        const double residual = allocated - rho_y;
        if (residual <= 0.0) {
            throw SaturationError("sliced_tandem_delay: cross traffic saturates node " + node.id);
        }
        if (foi.rate_bps + rho_y > allocated) {
            throw InstabilityError("sliced_tandem_delay: queue rate exceeds allocation at node " +
                                   node.id);
        }
        if (residual < bottleneck) {
            bottleneck = residual;
            bottleneck_node = node.id;
        }
        latency_sum += node.latency_s;
        cross_terms += (rho_y * upstream_latency + sigma_y) / allocated;
        upstream_latency += node.latency_s;
    }
    return latency_sum + foi.burst_bits / bottleneck + cross_terms;
}

TreeDelayDetail tree_delay(const RoutedFlow& foi, std::span<const RoutedFlow> cross,
                           const ShareTable& shares, const Topology& topo)
{
    if (foi.path.nodes.empty()) {
        throw std::invalid_argument("tree_delay: flow of interest has an empty path");
    }
    for (const RoutedFlow& f : cross) {
        if (f.spec.key != foi.spec.key) {
            throw std::invalid_argument("tree_delay: cross flow " + f.spec.id +
                                        " belongs to queue " + f.spec.key.str() +
                                        ", flow of interest to " + foi.spec.key.str());
        }
    }

    // Position of each path node in the flow-of-interest order, to reject
    // cross flows whose route crosses the path against the traffic direction.
    std::map<NodeId, std::size_t> order;
    for (std::size_t v = 0; v < foi.path.nodes.size(); ++v) {
        order[foi.path.nodes[v]] = v;
    }
    struct CrossAtNode {
        double rho = 0.0;
        // Sum of fixed latencies of the servers the flow crossed before the
        // node, per its own route.
        double upstream_latency = 0.0;
        bool present = false;
    };
    // [cross index][path node index]
    std::vector<std::vector<CrossAtNode>> presence(cross.size());
    for (std::size_t i = 0; i < cross.size(); ++i) {
        presence[i].resize(foi.path.nodes.size());
        double upstream = 0.0;
        std::size_t last_position = 0;
        bool seen_any = false;
        for (const NodeId& hop : cross[i].path.nodes) {
            auto it = order.find(hop);
            if (it != order.end()) {
                if (seen_any && it->second <= last_position) {
                    throw TopologyError("tree_delay: cross flow " + cross[i].spec.id +
                                        " visits " + hop +
                                        " against the flow-of-interest direction");
                }
                seen_any = true;
                last_position = it->second;
                presence[i][it->second] = {cross[i].spec.rate_bps, upstream, true};
            }
            upstream += topo.node(hop).latency_s;
        }
    }

    TreeDelayDetail detail;
    detail.cross_burst_terms_s.resize(foi.path.nodes.size(), 0.0);
    detail.updated_bursts_bits.assign(foi.path.nodes.size(),
                                      std::vector<double>(cross.size(), 0.0));
    detail.bottleneck_bps = std::numeric_limits<double>::infinity();

    for (std::size_t v = 0; v < foi.path.nodes.size(); ++v) {
        const NodeId& node_id = foi.path.nodes[v];
        const double allocated = shares.allocated_rate_bps(topo, node_id, foi.spec.key);
        double rho_y = 0.0;
        double burst_sum = 0.0;
        for (std::size_t i = 0; i < cross.size(); ++i) {
            const CrossAtNode& at = presence[i][v];
            if (!at.present) {
                continue;
            }
            rho_y += at.rho;
            const double updated =
                cross[i].spec.burst_bits + cross[i].spec.rate_bps * at.upstream_latency;
            detail.updated_bursts_bits[v][i] = updated;
            burst_sum += updated;
        }
        const double residual = allocated - rho_y;
        if (residual <= 0.0) {
            throw SaturationError("tree_delay: no service left for queue " + foi.spec.key.str() +
                                  " at node " + node_id);
        }
        if (foi.spec.rate_bps + rho_y > allocated) {
            throw InstabilityError("tree_delay: queue " + foi.spec.key.str() +
                                   " overloads its allocation at node " + node_id);
        }
        if (residual < detail.bottleneck_bps) {
            detail.bottleneck_bps = residual;
            detail.bottleneck_node = node_id;
        }
        detail.latency_sum_s += topo.node(node_id).latency_s;
        detail.cross_burst_terms_s[v] = burst_sum / allocated;
    }

    detail.foi_burst_term_s = foi.spec.burst_bits / detail.bottleneck_bps;
    detail.total_s = detail.foi_burst_term_s + detail.latency_sum_s;
    for (double term : detail.cross_burst_terms_s) {
        detail.total_s += term;
    }
    return detail;
}

ProcessingDelay processing_delay(double sum_rate_bps,
                                 const std::array<VnfLocation, kVnfCount>& placement, int k_vdu,
                                 int k_cu, double z_ref_s, double x_ref_bps,
                                 const VnfProfiles& profiles)
{
    if (k_vdu < 1 || k_cu < 1) {
        throw std::invalid_argument("processing_delay: core counts must be >= 1");
    }
    const double load = z_ref_s / x_ref_bps * sum_rate_bps;
    ProcessingDelay d;
    for (std::size_t g = 0; g < kVnfCount; ++g) {
        const double fraction = profiles.fraction(static_cast<Vnf>(g));
        if (placement[g] == VnfLocation::CU) {
            d.cu_s += load * fraction / k_cu;
        } else {
            d.du_s += load * fraction / k_vdu;
        }
    }
    return d;
}

}  // namespace slicebound
