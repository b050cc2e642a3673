// delay.hpp - Closed-form worst-case end-to-end delay bounds for a flow
// crossing a tandem of FIFO servers: plain tandem bound, GPS-sliced variant,
// tree-topology variant with per-hop burst updates, and the RAN processing
// delay model.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_DELAY_HPP
#define SLICEBOUND_DELAY_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "slicebound/catalog.hpp"
#include "slicebound/minplus.hpp"
#include "slicebound/topology.hpp"

namespace slicebound {

// Traffic of one UE/PDU session, parameters as seen by the transport network.
struct FlowSpec {
    std::string id;
    SliceKey key;
    double rate_bps = 0.0;     // rho
    double burst_bits = 0.0;   // sigma, at least one packet
    double packet_bytes = 0.0;
};

// A flow bound to the route it takes through the transport network.
struct RoutedFlow {
    FlowSpec spec;
    RoutePath path;
};

// One server of a sliced tandem: the queue under analysis holds share of the
// node capacity.
struct SlicedNode {
    NodeId id;
    double capacity_bps = 0.0;
    double latency_s = 0.0;
    double share = 1.0;

    double allocated_bps() const { return share * capacity_bps; }
};

// Worst-case network delay for a flow competing with a fixed set of cross
// flows along every server of the path, at full node rates:
//   sum T_v + sigma_foi / (min_v R_v - rho_y)
//         + sum_v (rho_y * sum_{j<v} T_j + sigma_y) / R_v.
double tandem_delay(const ArrivalCurve& foi, std::span<const ArrivalCurve> cross,
                    std::span<const ServiceCurve> nodes);

// Same bound with per-node allocated rates share*R_v standing in for R_v.
// All cross flows traverse the whole path alongside the flow of interest.
double sliced_tandem_delay(const ArrivalCurve& foi, std::span<const ArrivalCurve> cross,
                           std::span<const SlicedNode> nodes);

// Everything the tree bound computed, for reporting and golden checks.
struct TreeDelayDetail {
    double total_s = 0.0;
    double bottleneck_bps = 0.0;  // min_v (allocated_v - rho_cross_v)
    NodeId bottleneck_node;
    double foi_burst_term_s = 0.0;
    double latency_sum_s = 0.0;
    // Indexed by path node: aggregate cross-burst term and the updated burst
    // of every cross flow present at that node (cross order preserved,
    // absent flows reported as 0).
    std::vector<double> cross_burst_terms_s;
    std::vector<std::vector<double>> updated_bursts_bits;
};

// Worst-case network delay over the flow of interest's route when cross flows
// may join after their own upstream stretch. Each cross flow's burst is grown
// by the fixed latencies of the servers it already crossed:
//   sigma_foi / min_v(allocated_v - rho_cross_v)
//         + sum_v ( T_v + sum_f updated_burst(f, v) / allocated_v ).
// Cross flows must hold the same queue (slice, vDU) as the flow of interest.
// Throws SaturationError (naming the node) when a server has no capacity left
// for the flow, InstabilityError when the queue's total rate exceeds its
// allocation, TopologyError when a cross flow visits the path nodes in an
// order inconsistent with the flow of interest.
TreeDelayDetail tree_delay(const RoutedFlow& foi, std::span<const RoutedFlow> cross,
                           const ShareTable& shares, const Topology& topo);

// Processing delay at the RAN nodes, split by placement side.
struct ProcessingDelay {
    double du_s = 0.0;
    double cu_s = 0.0;

    double total_s() const { return du_s + cu_s; }
};

// d_RAN = (Z/X) * sum(rho) * sum_g z_g / K(side of g). VNFs placed at the CU
// use the k_cu cores, vDU-resident ones the vDU's k_vdu cores.
ProcessingDelay processing_delay(double sum_rate_bps,
                                 const std::array<VnfLocation, kVnfCount>& placement, int k_vdu,
                                 int k_cu, double z_ref_s, double x_ref_bps,
                                 const VnfProfiles& profiles);

// Per-flow end-to-end delay decomposition.
struct DelayBreakdown {
    double queueing_s = 0.0;     // d_net, transport queueing + transmission
    double processing_du_s = 0.0;
    double processing_cu_s = 0.0;
    double propagation_s = 0.0;  // d_PD

    double processing_s() const { return processing_du_s + processing_cu_s; }
    double total_s() const { return queueing_s + processing_du_s + processing_cu_s + propagation_s; }
};

}  // namespace slicebound

#endif  // SLICEBOUND_DELAY_HPP
