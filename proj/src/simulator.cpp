// simulator.cpp - Event loop, WRR scheduling, sources. See simulator.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <random>
#include <sstream>

#include "slicebound/analysis.hpp"

namespace slicebound {

namespace {

using Ns = std::int64_t;

constexpr double kNsPerSec = 1e9;

Ns to_ns(double seconds)
{
    return static_cast<Ns>(std::llround(seconds * kNsPerSec));
}

Ns transmit_ns(double bits, double rate_bps)
{
    return static_cast<Ns>(std::ceil(bits * kNsPerSec / rate_bps));
}

struct Packet {
    std::uint32_t flow = 0;
    std::int64_t bits = 0;
    Ns emitted_ns = 0;
};

struct SimQueue {
    SliceKey key;
    std::deque<Packet> packets;
    std::int64_t bits = 0;
    std::int64_t capacity_bits = 0;
    std::int64_t max_backlog_bits = 0;
    std::uint64_t dropped = 0;
    int weight = 1;
    int quantum_left = 0;
};

struct SimNode {
    NodeId id;
    double rate_bps = 0.0;
    Ns latency_ns = 0;
    std::vector<SimQueue> queues;
    std::size_t rr_pos = 0;
    bool busy = false;

    int queue_of(const SliceKey& key) const
    {
        for (std::size_t i = 0; i < queues.size(); ++i) {
            if (queues[i].key == key) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }
};

struct SimFlow {
    std::string id;
    SliceKey key;
    std::vector<std::size_t> node_route;  // indices into nodes
    std::int64_t packet_bits = 0;
    double rate_bps = 0.0;
    double bucket_bits = 0.0;  // sigma (at least one packet)
    // token-bucket state
    double tokens = 0.0;
    Ns last_refill_ns = 0;
    // conformance mirror: an independent debit bucket checked on every send,
    // equivalent to testing every (tau, t) window of the arrival envelope
    double mirror_tokens = 0.0;
    Ns mirror_refill_ns = 0;
    // stats
    std::vector<double> delays_s;
};

enum class EventKind { SourceEmit, Arrival, ServiceDone };

struct Event {
    Ns time_ns = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SourceEmit;
    std::uint32_t flow = 0;
    std::uint32_t node = 0;
    Packet packet;

    bool operator>(const Event& other) const
    {
        if (time_ns != other.time_ns) {
            return time_ns > other.time_ns;
        }
        return seq > other.seq;
    }
};

struct Simulator {
    const Scenario& sc;
    const Decision& decision;
    SimOptions options;

    std::vector<SimNode> nodes;
    std::map<NodeId, std::size_t> node_index;
    std::vector<SimFlow> flows;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    std::uint64_t seq = 0;
    Ns horizon_ns = 0;
    std::mt19937_64 rng;
    bool conformance_ok = true;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;

    Simulator(const Scenario& scenario, const Decision& d, const SimOptions& opts)
        : sc(scenario), decision(d), options(opts), rng(opts.seed)
    {
        horizon_ns = to_ns(opts.duration_s);
        build();
    }

    void build()
    {
        const auto buffers = size_buffers(sc, decision);
        const std::vector<QueueTraffic> queue_traffic = build_queues(sc, decision);

        for (const TransportNode& n : sc.topology.nodes()) {
            node_index[n.id] = nodes.size();
            nodes.push_back({n.id, n.capacity_bps, to_ns(n.latency_s), {}, 0, false});
        }

        for (const QueueTraffic& qt : queue_traffic) {
            if (qt.tn_flows.empty()) {
                continue;
            }
            std::int64_t max_packet = 1;
            for (const FlowSpec& f : qt.tn_flows) {
                max_packet = std::max(max_packet, static_cast<std::int64_t>(
                                                      std::llround(f.packet_bytes * 8.0)));
            }
            for (const NodeId& node_id : qt.path.nodes) {
                SimNode& node = nodes[node_index.at(node_id)];
                SimQueue q;
                q.key = qt.key;
                auto it = buffers.find({node_id, qt.key});
                q.capacity_bits = it != buffers.end()
                                      ? static_cast<std::int64_t>(it->second)
                                      : max_packet;
                node.queues.push_back(std::move(q));
            }
            std::vector<std::size_t> route;
            for (const NodeId& node_id : qt.path.nodes) {
                route.push_back(node_index.at(node_id));
            }
            for (const FlowSpec& f : qt.tn_flows) {
                SimFlow flow;
                flow.id = f.id;
                flow.key = qt.key;
                flow.node_route = route;
                flow.packet_bits = std::max<std::int64_t>(1, std::llround(f.packet_bytes * 8.0));
                flow.rate_bps = f.rate_bps;
                flow.bucket_bits = std::max(f.burst_bits, static_cast<double>(flow.packet_bits));
                flow.tokens = flow.bucket_bits;
                flow.mirror_tokens = flow.bucket_bits;
                flows.push_back(std::move(flow));
            }
        }

        // Integer WRR weights: packets per round proportional to share over
        // packet size, so the per-round byte share tracks the allocation.
        for (SimNode& node : nodes) {
            if (node.queues.empty()) {
                continue;
            }
            std::vector<double> raw(node.queues.size(), 0.0);
            double raw_max = 0.0;
            for (std::size_t i = 0; i < node.queues.size(); ++i) {
                const double share = decision.shares.share(node.id, node.queues[i].key);
                std::int64_t typical = 1;
                for (const SimFlow& f : flows) {
                    if (f.key == node.queues[i].key) {
                        typical = std::max(typical, f.packet_bits);
                    }
                }
                raw[i] = std::max(share, 1e-6) / static_cast<double>(typical);
                raw_max = std::max(raw_max, raw[i]);
            }
            for (std::size_t i = 0; i < node.queues.size(); ++i) {
                node.queues[i].weight =
                    std::max(1, static_cast<int>(std::llround(raw[i] / raw_max * 64.0)));
                node.queues[i].quantum_left = node.queues[i].weight;
            }
        }

        for (std::uint32_t i = 0; i < flows.size(); ++i) {
            schedule_emit(i, 0);
        }
    }

    void push(Event e)
    {
        e.seq = seq++;
        events.push(std::move(e));
    }

    void schedule_emit(std::uint32_t flow_idx, Ns at)
    {
        Event e;
        e.time_ns = at;
        e.kind = EventKind::SourceEmit;
        e.flow = flow_idx;
        push(std::move(e));
    }

    void refill(SimFlow& f, Ns now)
    {
        f.tokens = std::min(f.bucket_bits,
                            f.tokens + f.rate_bps * (now - f.last_refill_ns) / kNsPerSec);
        f.last_refill_ns = now;
    }

    void emit(std::uint32_t flow_idx, Ns now)
    {
        SimFlow& f = flows[flow_idx];
        if (options.model == TrafficModel::TokenBucket) {
            refill(f, now);
            if (f.tokens + 1e-6 < static_cast<double>(f.packet_bits)) {
                if (f.rate_bps <= 0.0) {
                    return;  // drained zero-rate source never refills
                }
                const double deficit = static_cast<double>(f.packet_bits) - f.tokens;
                const Ns wait = static_cast<Ns>(std::ceil(deficit * kNsPerSec / f.rate_bps));
                schedule_emit(flow_idx, now + std::max<Ns>(wait, 1));
                return;
            }
            f.tokens -= static_cast<double>(f.packet_bits);
            send(flow_idx, now);
            if (now < horizon_ns) {
                schedule_emit(flow_idx, now);  // back-to-back while tokens last
            }
        } else {
            send(flow_idx, now);
            std::exponential_distribution<double> gap(f.rate_bps /
                                                      static_cast<double>(f.packet_bits));
            const Ns next = now + std::max<Ns>(1, to_ns(gap(rng)));
            if (next < horizon_ns) {
                schedule_emit(flow_idx, next);
            }
        }
    }

    void send(std::uint32_t flow_idx, Ns now)
    {
        SimFlow& f = flows[flow_idx];
        f.mirror_tokens = std::min(
            f.bucket_bits, f.mirror_tokens + f.rate_bps * (now - f.mirror_refill_ns) / kNsPerSec);
        f.mirror_refill_ns = now;
        if (f.mirror_tokens + 1e-3 < static_cast<double>(f.packet_bits)) {
            conformance_ok = false;
        }
        f.mirror_tokens -= static_cast<double>(f.packet_bits);
        Packet p;
        p.flow = flow_idx;
        p.bits = f.packet_bits;
        p.emitted_ns = now;
        Event e;
        e.time_ns = now;
        e.kind = EventKind::Arrival;
        e.node = static_cast<std::uint32_t>(f.node_route.front());
        e.packet = p;
        push(std::move(e));
    }

    void arrive(std::uint32_t node_idx, const Packet& p, Ns now)
    {
        SimNode& node = nodes[node_idx];
        const int qi = node.queue_of(flows[p.flow].key);
        SimQueue& q = node.queues[qi];
        if (q.bits + p.bits > q.capacity_bits) {
            ++q.dropped;
            ++dropped;
            return;
        }
        q.packets.push_back(p);
        q.bits += p.bits;
        q.max_backlog_bits = std::max(q.max_backlog_bits, q.bits);
        serve(node_idx, now);
    }

    void serve(std::uint32_t node_idx, Ns now)
    {
        SimNode& node = nodes[node_idx];
        if (node.busy) {
            return;
        }
        // WRR: up to weight packets per queue per round, skipping empty
        // queues; a new round starts when the quanta of every backlogged
        // queue are spent.
        int candidate = -1;
        for (int pass = 0; pass < 2 && candidate < 0; ++pass) {
            for (std::size_t step = 0; step < node.queues.size(); ++step) {
                const std::size_t i = (node.rr_pos + step) % node.queues.size();
                SimQueue& q = node.queues[i];
                if (q.packets.empty()) {
                    continue;
                }
                if (q.quantum_left > 0) {
                    candidate = static_cast<int>(i);
                    node.rr_pos = i;
                    break;
                }
            }
            if (candidate < 0) {
                bool backlog = false;
                for (const SimQueue& q : node.queues) {
                    backlog = backlog || !q.packets.empty();
                }
                if (!backlog) {
                    return;
                }
                for (SimQueue& q : node.queues) {
                    q.quantum_left = q.weight;
                }
            }
        }
        if (candidate < 0) {
            return;
        }
        SimQueue& q = node.queues[candidate];
        Packet p = q.packets.front();
        q.packets.pop_front();
        q.bits -= p.bits;
        q.quantum_left -= 1;
        node.busy = true;
        Event done;
        done.time_ns = now + transmit_ns(static_cast<double>(p.bits), node.rate_bps);
        done.kind = EventKind::ServiceDone;
        done.node = node_idx;
        done.packet = p;
        push(std::move(done));
    }

    void service_done(std::uint32_t node_idx, const Packet& p, Ns now)
    {
        SimNode& node = nodes[node_idx];
        node.busy = false;
        const auto& route = flows[p.flow].node_route;
        const Ns out = now + node.latency_ns;
        auto pos = std::find(route.begin(), route.end(), static_cast<std::size_t>(node_idx));
        if (pos + 1 == route.end()) {
            flows[p.flow].delays_s.push_back(static_cast<double>(out - p.emitted_ns) / kNsPerSec);
            ++delivered;
        } else {
            Event e;
            e.time_ns = out;
            e.kind = EventKind::Arrival;
            e.node = static_cast<std::uint32_t>(*(pos + 1));
            e.packet = p;
            push(std::move(e));
        }
        serve(node_idx, now);
    }

    DelayStats finish()
    {
        DelayStats stats;
        stats.packets_delivered = delivered;
        stats.packets_dropped = dropped;
        stats.conformance_ok = conformance_ok;
        for (SimFlow& f : flows) {
            FlowStats fs;
            fs.flow_id = f.id;
            fs.key = f.key;
            fs.packets_delivered = f.delays_s.size();
            if (!f.delays_s.empty()) {
                std::vector<double> sorted = f.delays_s;
                std::sort(sorted.begin(), sorted.end());
                fs.max_delay_s = sorted.back();
                double total = 0.0;
                for (double d : sorted) {
                    total += d;
                }
                fs.mean_delay_s = total / sorted.size();
                auto at = [&](double q) {
                    const auto idx = static_cast<std::size_t>(q * (sorted.size() - 1));
                    return sorted[idx];
                };
                fs.p50_s = at(0.50);
                fs.p90_s = at(0.90);
                fs.p99_s = at(0.99);
                fs.p999_s = at(0.999);
            }
            stats.flows.push_back(std::move(fs));
        }
        for (const SimNode& node : nodes) {
            for (const SimQueue& q : node.queues) {
                stats.queues.push_back({node.id, q.key, static_cast<std::uint64_t>(q.capacity_bits),
                                        static_cast<std::uint64_t>(q.max_backlog_bits), q.dropped});
            }
        }
        return stats;
    }

    DelayStats run()
    {
        while (!events.empty()) {
            Event e = events.top();
            events.pop();
            if (e.kind == EventKind::SourceEmit) {
                if (e.time_ns >= horizon_ns) {
                    continue;
                }
                emit(e.flow, e.time_ns);
            } else if (e.kind == EventKind::Arrival) {
                arrive(e.node, e.packet, e.time_ns);
            } else {
                service_done(e.node, e.packet, e.time_ns);
            }
        }
        return finish();
    }
};

}  // namespace

double DelayStats::max_delay_s() const
{
    double worst = 0.0;
    for (const FlowStats& f : flows) {
        worst = std::max(worst, f.max_delay_s);
    }
    return worst;
}

std::map<std::pair<NodeId, SliceKey>, std::uint64_t> size_buffers(const Scenario& scenario,
                                                                  const Decision& decision)
{
    std::map<std::pair<NodeId, SliceKey>, std::uint64_t> capacities;
    for (const QueueTraffic& qt : build_queues(scenario, decision)) {
        if (qt.tn_flows.empty()) {
            continue;
        }
        std::int64_t max_packet = 1;
        double rate_sum = 0.0;
        for (const FlowSpec& f : qt.tn_flows) {
            max_packet =
                std::max(max_packet, static_cast<std::int64_t>(std::llround(f.packet_bytes * 8.0)));
            rate_sum += f.rate_bps;
        }
        double upstream_latency = 0.0;
        for (const NodeId& node_id : qt.path.nodes) {
            const TransportNode& node = scenario.topology.node(node_id);
            const double alloc =
                decision.shares.allocated_rate_bps(scenario.topology, node_id, qt.key);
            if (alloc < rate_sum) {
                throw InstabilityError("size_buffers: queue " + qt.key.str() +
                                       " exceeds its allocation at " + node_id);
            }
            // Aggregate burst at this node, each flow's burst grown by the
            // upstream fixed latencies.
            double burst = 0.0;
            for (const FlowSpec& f : qt.tn_flows) {
                burst += f.burst_bits + f.rate_bps * upstream_latency;
            }
            const double bound = burst + rate_sum * node.latency_s;
            const auto packets =
                std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(
                                               bound / static_cast<double>(max_packet) - 1e-9)));
            capacities[{node_id, qt.key}] = packets * static_cast<std::uint64_t>(max_packet);
            upstream_latency += node.latency_s;
        }
    }
    return capacities;
}

DelayStats run_simulation(const Scenario& scenario, const Decision& decision,
                          const SimOptions& options)
{
    Simulator sim(scenario, decision, options);
    return sim.run();
}

std::vector<SweepPoint> sweep_ue_count(const Scenario& scenario, const Decision& decision,
                                       const NodeId& vdu, int n_from, int n_to,
                                       std::span<const std::uint64_t> seeds,
                                       const SimOptions& base)
{
    std::vector<SweepPoint> points;
    for (int n = n_from; n <= n_to; ++n) {
        Decision d = decision;
        d.admitted_urllc[vdu] = n;

        SweepPoint point;
        point.ue_count = n;
        for (const FlowDelayRow& row : analyze_all(scenario, d)) {
            const SliceSpec* slice = scenario.find_slice(row.key.slice);
            const bool urllc = slice == nullptr || slice->packet_class == PacketClass::URLLC;
            if (row.key.vdu == vdu && urllc) {
                point.bound_s = std::max(point.bound_s, row.breakdown.total_s());
            }
        }
        for (std::uint64_t seed : seeds) {
            SimOptions opts = base;
            opts.seed = seed;
            const DelayStats stats = run_simulation(scenario, d, opts);
            for (const FlowStats& f : stats.flows) {
                if (f.key.vdu == vdu) {
                    point.max_delay_s = std::max(point.max_delay_s, f.max_delay_s);
                }
            }
        }
        points.push_back(point);
    }
    return points;
}

std::string stats_to_csv(const DelayStats& stats)
{
    std::ostringstream out;
    out.precision(10);
    out << "flow,slice,vdu,packets,max_delay_s,mean_delay_s,p50_s,p90_s,p99_s,p999_s\n";
    for (const FlowStats& f : stats.flows) {
        out << f.flow_id << ',' << f.key.slice << ',' << f.key.vdu << ',' << f.packets_delivered
            << ',' << f.max_delay_s << ',' << f.mean_delay_s << ',' << f.p50_s << ',' << f.p90_s
            << ',' << f.p99_s << ',' << f.p999_s << '\n';
    }
    out << "node,queue,capacity_bits,max_backlog_bits,dropped\n";
    for (const QueueStats& q : stats.queues) {
        out << q.node << ',' << q.key.str() << ',' << q.capacity_bits << ',' << q.max_backlog_bits
            << ',' << q.dropped_packets << '\n';
    }
    return out.str();
}

std::string sweep_to_csv(std::span<const SweepPoint> points)
{
    std::ostringstream out;
    out.precision(10);
    out << "ue_count,max_delay_s,bound_s\n";
    for (const SweepPoint& p : points) {
        out << p.ue_count << ',' << p.max_delay_s << ',' << p.bound_s << '\n';
    }
    return out.str();
}

}  // namespace slicebound
