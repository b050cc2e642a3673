// simulator.hpp - Deterministic seeded packet-level simulator: per-(slice,vDU)
// FIFO queues, weighted round robin per node, token-bucket or Poisson sources.
// Validates the analytic bounds empirically.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_SIMULATOR_HPP
#define SLICEBOUND_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "slicebound/scenario.hpp"

namespace slicebound {

enum class TrafficModel { TokenBucket, Poisson };

struct SimOptions {
    TrafficModel model = TrafficModel::TokenBucket;
    std::uint64_t seed = 1;
    double duration_s = 1.0;
};

struct FlowStats {
    std::string flow_id;
    SliceKey key;
    std::uint64_t packets_delivered = 0;
    double max_delay_s = 0.0;
    double mean_delay_s = 0.0;
    double p50_s = 0.0;
    double p90_s = 0.0;
    double p99_s = 0.0;
    double p999_s = 0.0;
};

struct QueueStats {
    NodeId node;
    SliceKey key;
    std::uint64_t capacity_bits = 0;
    std::uint64_t max_backlog_bits = 0;
    std::uint64_t dropped_packets = 0;
};

struct DelayStats {
    std::vector<FlowStats> flows;
    std::vector<QueueStats> queues;
    std::uint64_t packets_delivered = 0;
    std::uint64_t packets_dropped = 0;
    bool conformance_ok = true;  // token-bucket sources stayed inside rho*t+sigma
    std::string prng = "mt19937_64";

    double max_delay_s() const;
};

// Per-queue buffer capacity from the backlog bound of the queue's aggregate
// (burst-updated) arrivals against its allocated service, rounded up to whole
// packets of the queue's largest packet; at least one packet.
std::map<std::pair<NodeId, SliceKey>, std::uint64_t> size_buffers(const Scenario& scenario,
                                                                  const Decision& decision);

// Runs the event loop. Deterministic: identical (scenario, decision, options)
// give identical DelayStats.
DelayStats run_simulation(const Scenario& scenario, const Decision& decision,
                          const SimOptions& options);

struct SweepPoint {
    int ue_count = 0;
    double max_delay_s = 0.0;  // max over seeds
    double bound_s = 0.0;      // analytic tree bound at this count
};

// Re-runs the simulation with the vDU's admission forced to each count in
// [n_from, n_to], keeping the decision's shares, and pairs the observed
// maximum with the analytic bound.
std::vector<SweepPoint> sweep_ue_count(const Scenario& scenario, const Decision& decision,
                                       const NodeId& vdu, int n_from, int n_to,
                                       std::span<const std::uint64_t> seeds,
                                       const SimOptions& base);

std::string stats_to_csv(const DelayStats& stats);
std::string sweep_to_csv(std::span<const SweepPoint> points);

}  // namespace slicebound

#endif  // SLICEBOUND_SIMULATOR_HPP
