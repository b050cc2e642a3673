// scenario.hpp - Scenario document: topology, slices and their SLAs, radio
// and economic parameters, optional explicit flows and an optional embedded
// decision. One scenario file drives analyze, optimize and simulate.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_SCENARIO_HPP
#define SLICEBOUND_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicebound/catalog.hpp"
#include "slicebound/delay.hpp"
#include "slicebound/economics.hpp"
#include "slicebound/topology.hpp"

namespace slicebound {

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct SliceSpec {
    std::string name;
    PacketClass packet_class = PacketClass::URLLC;
    double d_sla_s = 0.0;      // 0: no delay SLA
    double mu_sla_bps = 0.0;   // per-UE throughput SLA
    double packet_bytes = 0.0;
};

// Background eMBB load on one vDU: aggregate rate over the midhaul plus the
// radio resource blocks it occupies at the RU.
struct EmbbDemand {
    NodeId vdu;
    double rate_bps = 0.0;
    int rb_count = 0;
};

struct ProcessingParams {
    double z_ref_s = 750e-6;   // full-stack processing time of one core
    double x_ref_bps = 1e9;    // at this aggregate rate
    int k_vdu = 16;            // cores per vDU
    int k_cu = 32;             // cores at the CU per vDU
};

// A complete assignment of the decision variables.
struct Decision {
    std::map<NodeId, SplitId> split_per_vdu;
    std::map<SliceKey, RoutePath> paths;
    std::map<NodeId, int> admitted_urllc;
    ShareTable shares;
};

struct Scenario {
    std::string name;
    Topology topology;
    NodeId cu;
    std::vector<NodeId> dus;
    std::vector<NodeId> vdus;
    std::map<std::string, NodeId> rus;  // RU id -> co-located vDU
    double speed_of_light_mps = 3e8;
    std::size_t path_hop_limit = 0;
    std::vector<SliceSpec> slices;
    std::vector<EmbbDemand> embb_demands;
    RadioConfig radio;
    VnfProfiles profiles;
    EconParams econ;
    ProcessingParams processing;
    std::vector<SplitId> split_set;
    std::vector<FlowSpec> explicit_flows;
    std::optional<Decision> decision;

    const SliceSpec& slice(const std::string& name) const;
    const SliceSpec* find_slice(const std::string& name) const;
    const EmbbDemand* embb_demand_for(const NodeId& vdu) const;
    SplitCatalog make_catalog() const;
    // gamma derived from this scenario's vDU count and economics.
    double gamma_value() const;
    // Admission ceiling at one vDU: RB budget left by eMBB, capped by the
    // per-vDU share of F_max.
    int admission_cap(const NodeId& vdu) const;

    static Scenario from_json_text(const std::string& text);
    static Scenario load(const std::string& path);
    std::string to_json_text() const;
    void save(const std::string& path) const;

    // FNV-1a over the canonical serialization; stable under key reordering
    // of the input document.
    std::uint64_t digest() const;
};

Decision decision_from_json(const std::string& text);
std::string decision_to_json(const Decision& decision);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace slicebound

#endif  // SLICEBOUND_SCENARIO_HPP
