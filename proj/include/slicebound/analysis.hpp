// analysis.hpp - Builds per-queue traffic from a scenario plus a decision
// (overhead-inflated transport flows, paths, shares) and composes per-flow
// end-to-end delay breakdowns.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_ANALYSIS_HPP
#define SLICEBOUND_ANALYSIS_HPP

#include <string>
#include <vector>

#include "slicebound/delay.hpp"
#include "slicebound/scenario.hpp"

namespace slicebound {

// Traffic of one (slice, vDU) queue as carried by the transport network.
struct QueueTraffic {
    SliceKey key;
    RoutePath path;
    double overhead_multiplier = 1.0;
    std::vector<FlowSpec> tn_flows;   // transport-side curves (inflated)
    double radio_rate_sum_bps = 0.0;  // uninflated aggregate, drives processing
    double sla_s = 0.0;               // 0: no delay SLA
    bool identical_flows = false;
};

// All queues implied by a decision: explicit scenario flows grouped by key,
// plus the admitted URLLC UEs and eMBB background per vDU. Queue order is
// deterministic (key order).
std::vector<QueueTraffic> build_queues(const Scenario& scenario, const Decision& decision);

struct FlowDelayRow {
    std::string flow_id;
    SliceKey key;
    std::vector<NodeId> path;
    DelayBreakdown breakdown;
    double sla_s = 0.0;  // 0: none
    double sla_margin_s = 0.0;
    TreeDelayDetail detail;
};

// End-to-end bound of one flow of a queue against the rest of the queue.
FlowDelayRow analyze_queue_flow(const Scenario& scenario, const Decision& decision,
                                const QueueTraffic& queue, std::size_t flow_index);

// Every flow of every queue. Identical flows within a queue share one
// computation.
std::vector<FlowDelayRow> analyze_all(const Scenario& scenario, const Decision& decision);

std::string delay_rows_to_csv(const std::vector<FlowDelayRow>& rows);

}  // namespace slicebound

#endif  // SLICEBOUND_ANALYSIS_HPP
