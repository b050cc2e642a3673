// analysis.cpp - Queue construction and end-to-end composition. See analysis.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace slicebound {

namespace {

const RoutePath& path_for(const Decision& decision, const SliceKey& key)
{
    auto it = decision.paths.find(key);
    if (it == decision.paths.end()) {
        throw ScenarioError("decision has no path for queue " + key.str());
    }
    return it->second;
}

double multiplier_for(const Scenario& scenario, const Decision& decision, const SliceKey& key)
{
    auto it = decision.split_per_vdu.find(key.vdu);
    if (it == decision.split_per_vdu.end()) {
        return 1.0;
    }
    const SliceSpec* slice = scenario.find_slice(key.slice);
    const PacketClass pc = slice != nullptr ? slice->packet_class : PacketClass::URLLC;
    return scenario.make_catalog().overhead_multiplier(it->second, pc);
}

}  // namespace

std::vector<QueueTraffic> build_queues(const Scenario& scenario, const Decision& decision)
{
    std::map<SliceKey, QueueTraffic> queues;

    auto queue_for = [&](const SliceKey& key) -> QueueTraffic& {
        auto it = queues.find(key);
        if (it == queues.end()) {
            QueueTraffic q;
            q.key = key;
            q.path = path_for(decision, key);
            q.overhead_multiplier = multiplier_for(scenario, decision, key);
            if (const SliceSpec* slice = scenario.find_slice(key.slice)) {
                q.sla_s = slice->d_sla_s;
            }
            it = queues.emplace(key, std::move(q)).first;
        }
        return it->second;
    };

    for (const FlowSpec& f : scenario.explicit_flows) {
        QueueTraffic& q = queue_for(f.key);
        FlowSpec tn = f;
        tn.rate_bps *= q.overhead_multiplier;
        tn.burst_bits *= q.overhead_multiplier;
        tn.packet_bytes *= q.overhead_multiplier;
        q.tn_flows.push_back(std::move(tn));
        q.radio_rate_sum_bps += f.rate_bps;
    }

    // Admitted URLLC UEs: identical flows, one packet of burst each.
    for (const auto& [vdu, count] : decision.admitted_urllc) {
        if (count <= 0) {
            continue;
        }
        const SliceSpec* urllc = nullptr;
        for (const SliceSpec& s : scenario.slices) {
            if (s.packet_class == PacketClass::URLLC && s.mu_sla_bps > 0.0) {
                urllc = &s;
                break;
            }
        }
        if (urllc == nullptr) {
            throw ScenarioError("decision admits UEs but the scenario has no URLLC slice");
        }
        QueueTraffic& q = queue_for({urllc->name, vdu});
        q.identical_flows = true;
        for (int i = 0; i < count; ++i) {
            FlowSpec tn;
            tn.id = urllc->name + ":" + vdu + ":" + std::to_string(i);
            tn.key = q.key;
            tn.rate_bps = urllc->mu_sla_bps * q.overhead_multiplier;
            tn.burst_bits = urllc->packet_bytes * 8.0 * q.overhead_multiplier;
            tn.packet_bytes = urllc->packet_bytes * q.overhead_multiplier;
            q.tn_flows.push_back(std::move(tn));
        }
        q.radio_rate_sum_bps += count * urllc->mu_sla_bps;
    }

    // eMBB background: one aggregate flow per vDU with a one-packet burst.
    for (const EmbbDemand& demand : scenario.embb_demands) {
        if (demand.rate_bps <= 0.0) {
            continue;
        }
        const SliceSpec* embb = nullptr;
        for (const SliceSpec& s : scenario.slices) {
            if (s.packet_class == PacketClass::EMBB) {
                embb = &s;
                break;
            }
        }
        if (embb == nullptr) {
            continue;
        }
        QueueTraffic& q = queue_for({embb->name, demand.vdu});
        FlowSpec tn;
        tn.id = embb->name + ":" + demand.vdu;
        tn.key = q.key;
        tn.rate_bps = demand.rate_bps * q.overhead_multiplier;
        tn.burst_bits = embb->packet_bytes * 8.0 * q.overhead_multiplier;
        tn.packet_bytes = embb->packet_bytes * q.overhead_multiplier;
        q.tn_flows.push_back(std::move(tn));
        q.radio_rate_sum_bps += demand.rate_bps;
    }

    std::vector<QueueTraffic> result;
    result.reserve(queues.size());
    for (auto& [key, q] : queues) {
        result.push_back(std::move(q));
    }
    return result;
}

FlowDelayRow analyze_queue_flow(const Scenario& scenario, const Decision& decision,
                                const QueueTraffic& queue, std::size_t flow_index)
{
    RoutedFlow foi{queue.tn_flows.at(flow_index), queue.path};
    std::vector<RoutedFlow> cross;
    cross.reserve(queue.tn_flows.size() - 1);
    for (std::size_t i = 0; i < queue.tn_flows.size(); ++i) {
        if (i != flow_index) {
            cross.push_back({queue.tn_flows[i], queue.path});
        }
    }

    FlowDelayRow row;
    row.flow_id = foi.spec.id;
    row.key = queue.key;
    row.path = queue.path.nodes;
    row.detail = tree_delay(foi, cross, decision.shares, scenario.topology);
    row.breakdown.queueing_s = row.detail.total_s;
    row.breakdown.propagation_s = propagation_delay_s(queue.path, scenario.speed_of_light_mps);

    auto split_it = decision.split_per_vdu.find(queue.key.vdu);
    if (split_it != decision.split_per_vdu.end()) {
        const SplitCatalog catalog = scenario.make_catalog();
        const ProcessingDelay proc =
            processing_delay(queue.radio_rate_sum_bps, catalog.placement_vector(split_it->second),
                             scenario.processing.k_vdu, scenario.processing.k_cu,
                             scenario.processing.z_ref_s, scenario.processing.x_ref_bps,
                             scenario.profiles);
        row.breakdown.processing_du_s = proc.du_s;
        row.breakdown.processing_cu_s = proc.cu_s;
    }

    row.sla_s = queue.sla_s;
    row.sla_margin_s = queue.sla_s > 0.0 ? queue.sla_s - row.breakdown.total_s() : 0.0;
    return row;
}

std::vector<FlowDelayRow> analyze_all(const Scenario& scenario, const Decision& decision)
{
    std::vector<FlowDelayRow> rows;
    for (const QueueTraffic& queue : build_queues(scenario, decision)) {
        if (queue.tn_flows.empty()) {
            continue;
        }
        if (queue.identical_flows) {
            FlowDelayRow first = analyze_queue_flow(scenario, decision, queue, 0);
            for (std::size_t i = 0; i < queue.tn_flows.size(); ++i) {
                FlowDelayRow row = first;
                row.flow_id = queue.tn_flows[i].id;
                rows.push_back(std::move(row));
            }
        } else {
            for (std::size_t i = 0; i < queue.tn_flows.size(); ++i) {
                rows.push_back(analyze_queue_flow(scenario, decision, queue, i));
            }
        }
    }
    return rows;
}

std::string delay_rows_to_csv(const std::vector<FlowDelayRow>& rows)
{
    std::ostringstream out;
    out.precision(12);
    out << "flow,slice,vdu,path,d_net_s,d_ran_s,d_pd_s,total_s,sla_s,sla_margin_s\n";
    for (const FlowDelayRow& row : rows) {
        std::string path;
        for (const NodeId& n : row.path) {
            if (!path.empty()) {
                path += '>';
            }
            path += n;
        }
        out << row.flow_id << ',' << row.key.slice << ',' << row.key.vdu << ',' << path << ','
            << row.breakdown.queueing_s << ',' << row.breakdown.processing_s() << ','
            << row.breakdown.propagation_s << ',' << row.breakdown.total_s() << ',' << row.sla_s
            << ',' << row.sla_margin_s << '\n';
    }
    return out.str();
}

}  // namespace slicebound
