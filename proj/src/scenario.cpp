// scenario.cpp - Scenario document parsing and serialization. See scenario.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slicebound {

using nlohmann::json;

namespace {

json radio_to_json(const RadioConfig& rc)
{
    return {{"tbs_dl_bits", rc.tbs_dl_bits},
            {"n_rb", rc.n_rb},
            {"sample_rate_bps", rc.sample_rate_bps},
            {"n_sc_rb", rc.n_sc_rb},
            {"n_sym_sub", rc.n_sym_sub},
            {"n_layers", rc.n_layers},
            {"n_iq_bits", rc.n_iq_bits},
            {"n_antenna_ports", rc.n_antenna_ports},
            {"n_dl_tbs", rc.n_dl_tbs},
            {"fapi_dl_bps", rc.fapi_dl_bps},
            {"refsym_res", rc.refsym_res},
            {"pdcch_res", rc.pdcch_res},
            {"hdr_pdcp_bytes", rc.hdr_pdcp_bytes},
            {"hdr_rlc_bytes", rc.hdr_rlc_bytes},
            {"hdr_mac_bytes", rc.hdr_mac_bytes},
            {"tti_s", rc.tti_s}};
}

RadioConfig radio_from_json(const json& r)
{
    RadioConfig rc;
    rc.tbs_dl_bits = r.value("tbs_dl_bits", rc.tbs_dl_bits);
    rc.n_rb = r.value("n_rb", rc.n_rb);
    rc.sample_rate_bps = r.value("sample_rate_bps", rc.sample_rate_bps);
    rc.n_sc_rb = r.value("n_sc_rb", rc.n_sc_rb);
    rc.n_sym_sub = r.value("n_sym_sub", rc.n_sym_sub);
    rc.n_layers = r.value("n_layers", rc.n_layers);
    rc.n_iq_bits = r.value("n_iq_bits", rc.n_iq_bits);
    rc.n_antenna_ports = r.value("n_antenna_ports", rc.n_antenna_ports);
    rc.n_dl_tbs = r.value("n_dl_tbs", rc.n_dl_tbs);
    rc.fapi_dl_bps = r.value("fapi_dl_bps", rc.fapi_dl_bps);
    rc.refsym_res = r.value("refsym_res", rc.refsym_res);
    rc.pdcch_res = r.value("pdcch_res", rc.pdcch_res);
    rc.hdr_pdcp_bytes = r.value("hdr_pdcp_bytes", rc.hdr_pdcp_bytes);
    rc.hdr_rlc_bytes = r.value("hdr_rlc_bytes", rc.hdr_rlc_bytes);
    rc.hdr_mac_bytes = r.value("hdr_mac_bytes", rc.hdr_mac_bytes);
    rc.tti_s = r.value("tti_s", rc.tti_s);
    return rc;
}

json shares_to_json(const ShareTable& shares)
{
    json arr = json::array();
    for (const auto& [node_key, phi] : shares.entries()) {
        arr.push_back({{"node", node_key.first},
                       {"slice", node_key.second.slice},
                       {"vdu", node_key.second.vdu},
                       {"phi", phi}});
    }
    return arr;
}

json decision_to_json_value(const Decision& d)
{
    json splits = json::object();
    for (const auto& [vdu, split] : d.split_per_vdu) {
        splits[vdu] = to_string(split);
    }
    json admitted = json::object();
    for (const auto& [vdu, count] : d.admitted_urllc) {
        admitted[vdu] = count;
    }
    json paths = json::array();
    for (const auto& [key, path] : d.paths) {
        paths.push_back({{"slice", key.slice}, {"vdu", key.vdu}, {"nodes", path.nodes}});
    }
    return {{"splits", splits},
            {"admitted", admitted},
            {"paths", paths},
            {"shares", shares_to_json(d.shares)}};
}

Decision decision_from_json_value(const json& j, const Topology* topo)
{
    Decision d;
    if (j.contains("splits")) {
        for (const auto& [vdu, split] : j.at("splits").items()) {
            d.split_per_vdu[vdu] = split_from_string(split.get<std::string>());
        }
    }
    if (j.contains("admitted")) {
        for (const auto& [vdu, count] : j.at("admitted").items()) {
            d.admitted_urllc[vdu] = count.get<int>();
        }
    }
    if (j.contains("paths")) {
        for (const auto& p : j.at("paths")) {
            SliceKey key{p.at("slice").get<std::string>(), p.at("vdu").get<std::string>()};
            RoutePath path;
            path.nodes = p.at("nodes").get<std::vector<NodeId>>();
            if (topo != nullptr) {
                for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
                    path.link_distances_m.push_back(
                        topo->link_distance(path.nodes[i], path.nodes[i + 1]));
                }
            }
            d.paths[key] = std::move(path);
        }
    }
    if (j.contains("shares")) {
        for (const auto& s : j.at("shares")) {
            d.shares.set_share(s.at("node").get<std::string>(),
                               {s.at("slice").get<std::string>(), s.at("vdu").get<std::string>()},
                               s.at("phi").get<double>());
        }
    }
    return d;
}

}  // namespace

const SliceSpec& Scenario::slice(const std::string& name) const
{
    const SliceSpec* s = find_slice(name);
    if (s == nullptr) {
        throw ScenarioError("scenario has no slice named " + name);
    }
    return *s;
}

const SliceSpec* Scenario::find_slice(const std::string& name) const
{
    for (const SliceSpec& s : slices) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

const EmbbDemand* Scenario::embb_demand_for(const NodeId& vdu) const
{
    for (const EmbbDemand& d : embb_demands) {
        if (d.vdu == vdu) {
            return &d;
        }
    }
    return nullptr;
}

SplitCatalog Scenario::make_catalog() const
{
    SplitCatalog base;
    std::vector<SplitOption> options;
    for (SplitId id : base.selectable()) {
        options.push_back(base.option(id));
    }
    options.push_back(base.option(SplitId::O11));
    return SplitCatalog(std::move(options), radio, profiles);
}

double Scenario::gamma_value() const
{
    return gamma(static_cast<int>(vdus.size()), static_cast<int>(kVnfCount), econ.eta, econ.zeta,
                 econ.f_max);
}

int Scenario::admission_cap(const NodeId& vdu) const
{
    int rb_left = radio.n_rb;
    if (const EmbbDemand* d = embb_demand_for(vdu)) {
        rb_left -= d->rb_count;
    }
    const int per_vdu = vdus.empty() ? econ.f_max
                                     : econ.f_max / static_cast<int>(vdus.size());
    return std::max(0, std::min(rb_left, per_vdu));
}

Scenario Scenario::from_json_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }

    Scenario sc;
    sc.name = j.value("name", "");
    sc.speed_of_light_mps = j.value("speed_of_light_mps", 3e8);
    sc.path_hop_limit = j.value("path_hop_limit", std::size_t{0});

    std::vector<TransportNode> nodes;
    for (const auto& n : j.value("nodes", json::array())) {
        nodes.push_back({n.at("id").get<std::string>(), n.at("capacity_bps").get<double>(),
                         n.value("latency_s", 0.0)});
    }
    std::vector<Link> links;
    for (const auto& l : j.value("links", json::array())) {
        links.push_back({l.at("a").get<std::string>(), l.at("b").get<std::string>(),
                         l.value("distance_m", 0.0)});
    }
    sc.topology = Topology(std::move(nodes), std::move(links));

    if (j.contains("roles")) {
        const auto& roles = j.at("roles");
        sc.cu = roles.value("cu", "");
        sc.dus = roles.value("dus", std::vector<NodeId>{});
        sc.vdus = roles.value("vdus", std::vector<NodeId>{});
        for (const auto& ru : roles.value("rus", json::array())) {
            sc.rus[ru.at("id").get<std::string>()] = ru.at("vdu").get<std::string>();
        }
    }
    for (const NodeId& id : sc.vdus) {
        sc.topology.node(id);
    }
    if (!sc.cu.empty()) {
        sc.topology.node(sc.cu);
    }

    for (const auto& s : j.value("slices", json::array())) {
        SliceSpec spec;
        spec.name = s.at("name").get<std::string>();
        spec.packet_class =
            s.value("class", "URLLC") == "EMBB" ? PacketClass::EMBB : PacketClass::URLLC;
        spec.d_sla_s = s.value("d_sla_s", 0.0);
        spec.mu_sla_bps = s.value("mu_sla_bps", 0.0);
        spec.packet_bytes = s.value("packet_bytes", 0.0);
        sc.slices.push_back(spec);
    }
    for (const auto& d : j.value("embb_demand", json::array())) {
        sc.embb_demands.push_back({d.at("vdu").get<std::string>(), d.at("rate_bps").get<double>(),
                                   d.value("rb_count", 0)});
    }
    if (j.contains("radio")) {
        sc.radio = radio_from_json(j.at("radio"));
    }
    if (j.contains("profiles")) {
        const auto& p = j.at("profiles");
        if (p.contains("percent")) {
            sc.profiles.percent = p.at("percent").get<std::array<double, kVnfCount>>();
        }
        sc.profiles.ru_fft_percent = p.value("ru_fft_percent", sc.profiles.ru_fft_percent);
    }
    if (j.contains("econ")) {
        const auto& e = j.at("econ");
        sc.econ.eta = e.value("eta", sc.econ.eta);
        sc.econ.zeta = e.value("zeta", sc.econ.zeta);
        sc.econ.f_max = e.value("f_max", sc.econ.f_max);
        sc.econ.c_du = e.value("c_du", sc.econ.c_du);
    }
    if (j.contains("processing")) {
        const auto& p = j.at("processing");
        sc.processing.z_ref_s = p.value("z_ref_s", sc.processing.z_ref_s);
        sc.processing.x_ref_bps = p.value("x_ref_bps", sc.processing.x_ref_bps);
        sc.processing.k_vdu = p.value("k_vdu", sc.processing.k_vdu);
        sc.processing.k_cu = p.value("k_cu", sc.processing.k_cu);
    }
    for (const auto& name : j.value("split_set", std::vector<std::string>{})) {
        sc.split_set.push_back(split_from_string(name));
    }
    if (sc.split_set.empty()) {
        for (SplitId id : SplitCatalog().selectable()) {
            sc.split_set.push_back(id);
        }
    }
    for (const auto& f : j.value("flows", json::array())) {
        FlowSpec spec;
        spec.id = f.at("id").get<std::string>();
        spec.key = {f.at("slice").get<std::string>(), f.at("vdu").get<std::string>()};
        spec.rate_bps = f.at("rate_bps").get<double>();
        spec.burst_bits = f.at("burst_bits").get<double>();
        spec.packet_bytes = f.value("packet_bytes", 0.0);
        if (spec.burst_bits + 1e-9 < spec.packet_bytes * 8.0) {
            throw ScenarioError("flow " + spec.id + " has burst below one packet");
        }
        sc.explicit_flows.push_back(spec);
    }
    if (j.contains("decision")) {
        sc.decision = decision_from_json_value(j.at("decision"), &sc.topology);
    }
    return sc;
}

Scenario Scenario::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::string Scenario::to_json_text() const
{
    json j;
    j["name"] = name;
    j["speed_of_light_mps"] = speed_of_light_mps;
    if (path_hop_limit != 0) {
        j["path_hop_limit"] = path_hop_limit;
    }
    j["nodes"] = json::array();
    for (const TransportNode& n : topology.nodes()) {
        j["nodes"].push_back(
            {{"id", n.id}, {"capacity_bps", n.capacity_bps}, {"latency_s", n.latency_s}});
    }
    j["links"] = json::array();
    for (const Link& l : topology.links()) {
        j["links"].push_back({{"a", l.a}, {"b", l.b}, {"distance_m", l.distance_m}});
    }
    json rus_json = json::array();
    for (const auto& [id, vdu] : rus) {
        rus_json.push_back({{"id", id}, {"vdu", vdu}});
    }
    j["roles"] = {{"cu", cu}, {"dus", dus}, {"vdus", vdus}, {"rus", rus_json}};
    j["slices"] = json::array();
    for (const SliceSpec& s : slices) {
        j["slices"].push_back({{"name", s.name},
                               {"class", s.packet_class == PacketClass::EMBB ? "EMBB" : "URLLC"},
                               {"d_sla_s", s.d_sla_s},
                               {"mu_sla_bps", s.mu_sla_bps},
                               {"packet_bytes", s.packet_bytes}});
    }
    j["embb_demand"] = json::array();
    for (const EmbbDemand& d : embb_demands) {
        j["embb_demand"].push_back(
            {{"vdu", d.vdu}, {"rate_bps", d.rate_bps}, {"rb_count", d.rb_count}});
    }
    j["radio"] = radio_to_json(radio);
    j["profiles"] = {{"percent", profiles.percent}, {"ru_fft_percent", profiles.ru_fft_percent}};
    j["econ"] = {{"eta", econ.eta}, {"zeta", econ.zeta}, {"f_max", econ.f_max}, {"c_du", econ.c_du}};
    j["processing"] = {{"z_ref_s", processing.z_ref_s},
                       {"x_ref_bps", processing.x_ref_bps},
                       {"k_vdu", processing.k_vdu},
                       {"k_cu", processing.k_cu}};
    j["split_set"] = json::array();
    for (SplitId id : split_set) {
        j["split_set"].push_back(to_string(id));
    }
    if (!explicit_flows.empty()) {
        j["flows"] = json::array();
        for (const FlowSpec& f : explicit_flows) {
            j["flows"].push_back({{"id", f.id},
                                  {"slice", f.key.slice},
                                  {"vdu", f.key.vdu},
                                  {"rate_bps", f.rate_bps},
                                  {"burst_bits", f.burst_bits},
                                  {"packet_bytes", f.packet_bytes}});
        }
    }
    if (decision.has_value()) {
        j["decision"] = decision_to_json_value(*decision);
    }
    return j.dump(2) + "\n";
}

void Scenario::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw ScenarioError("cannot write scenario file " + path);
    }
    out << to_json_text();
}

std::uint64_t fnv1a64(const std::string& text)
{
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t Scenario::digest() const
{
    // dump() emits object keys sorted, so the digest does not depend on the
    // key order of the input document.
    return fnv1a64(json::parse(to_json_text()).dump());
}

Decision decision_from_json(const std::string& text)
{
    return decision_from_json_value(json::parse(text), nullptr);
}

std::string decision_to_json(const Decision& decision)
{
    return decision_to_json_value(decision).dump(2) + "\n";
}

}  // namespace slicebound
