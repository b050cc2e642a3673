// catalog.cpp - Split catalog data and capacity formulas. See catalog.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace slicebound {

namespace {

using Placement = std::array<VnfLocation, kVnfCount>;

// Placement with the first cu_from functions (RRC-first order) at the CU.
Placement centralize_first(std::size_t cu_from)
{
    Placement p{};
    for (std::size_t g = 0; g < kVnfCount; ++g) {
        p[g] = g < cu_from ? VnfLocation::CU : VnfLocation::DU;
    }
    return p;
}

std::vector<SplitOption> default_options()
{
    std::vector<SplitOption> opts;
    opts.push_back({SplitId::O1, centralize_first(1), 10e-3, 1.0000, 1.0000, false});
    opts.push_back({SplitId::O2, centralize_first(2), 1.5e-3, 1.0157, 1.0014, false});
    opts.push_back({SplitId::O4, centralize_first(3), 1e-3, 1.0547, 1.0047, false});
    opts.push_back({SplitId::O6, centralize_first(4), 250e-6, 1.0704, 1.0060, false});
    opts.push_back({SplitId::O8, centralize_first(5), 250e-6, 6.6214, 6.2235, false});
    opts.push_back({SplitId::O9, centralize_first(6), 250e-6, 7.6338, 7.1751, false});
    // O11 moves the whole PHY off the RU; it only ever dimensions the
    // fronthaul, so it carries no midhaul overhead multipliers.
    opts.push_back({SplitId::O11, centralize_first(6), 250e-6, 1.0, 1.0, true});
    return opts;
}

}  // namespace

std::string to_string(SplitId id)
{
    switch (id) {
        case SplitId::O1: return "O1";
        case SplitId::O2: return "O2";
        case SplitId::O3: return "O3";
        case SplitId::O4: return "O4";
        case SplitId::O5: return "O5";
        case SplitId::O6: return "O6";
        case SplitId::O7: return "O7";
        case SplitId::O8: return "O8";
        case SplitId::O9: return "O9";
        case SplitId::O10: return "O10";
        case SplitId::O11: return "O11";
        case SplitId::O12: return "O12";
    }
    return "?";
}

SplitId split_from_string(const std::string& name)
{
    static const std::array<SplitId, 12> all = {
        SplitId::O1, SplitId::O2, SplitId::O3, SplitId::O4, SplitId::O5, SplitId::O6,
        SplitId::O7, SplitId::O8, SplitId::O9, SplitId::O10, SplitId::O11, SplitId::O12};
    for (SplitId id : all) {
        if (to_string(id) == name) {
            return id;
        }
    }
    throw UnknownSplitError("unknown split option: " + name);
}

std::string to_string(Vnf vnf)
{
    switch (vnf) {
        case Vnf::RRC: return "RRC";
        case Vnf::PDCP: return "PDCP";
        case Vnf::RLC: return "RLC";
        case Vnf::MAC: return "MAC";
        case Vnf::PhyC: return "PHY-C";
        case Vnf::PhyB: return "PHY-B";
    }
    return "?";
}

double VnfProfiles::total_percent() const
{
    double total = ru_fft_percent;
    for (double p : percent) {
        total += p;
    }
    return total;
}

std::size_t SplitOption::cu_vnf_count() const
{
    return static_cast<std::size_t>(
        std::count(placement.begin(), placement.end(), VnfLocation::CU));
}

SplitCatalog::SplitCatalog() : SplitCatalog(default_options(), RadioConfig{}, VnfProfiles{}) {}

SplitCatalog::SplitCatalog(std::vector<SplitOption> options, RadioConfig radio, VnfProfiles profiles)
    : options_(std::move(options)), radio_(radio), profiles_(profiles)
{
    validate();
}

void SplitCatalog::validate() const
{
    // The published processing percentages sum to 100.01 due to rounding.
    if (std::abs(profiles_.total_percent() - 100.0) > 0.05) {
        throw std::invalid_argument("VNF processing fractions do not sum to 100%");
    }
    for (const SplitOption& opt : options_) {
        // Placement must respect the protocol chain: a function can only be
        // centralized if every function above it already is.
        for (std::size_t g = 1; g < kVnfCount; ++g) {
            if (opt.placement[g] == VnfLocation::CU && opt.placement[g - 1] == VnfLocation::DU) {
                throw std::invalid_argument("split " + to_string(opt.id) +
                                            " violates the placement chain at " +
                                            to_string(static_cast<Vnf>(g)));
            }
        }
        if (opt.overhead_multiplier_128 < 1.0 || opt.overhead_multiplier_1500 < 1.0) {
            throw std::invalid_argument("split " + to_string(opt.id) + " has multiplier < 1");
        }
    }
}

const SplitOption& SplitCatalog::option(SplitId id) const
{
    for (const SplitOption& opt : options_) {
        if (opt.id == id) {
            return opt;
        }
    }
    throw UnknownSplitError("split " + to_string(id) + " is not in the catalog");
}

bool SplitCatalog::contains(SplitId id) const
{
    return std::any_of(options_.begin(), options_.end(),
                       [id](const SplitOption& o) { return o.id == id; });
}

std::vector<SplitId> SplitCatalog::selectable() const
{
    std::vector<SplitId> ids;
    for (const SplitOption& opt : options_) {
        if (!opt.fronthaul_only) {
            ids.push_back(opt.id);
        }
    }
    return ids;
}

double SplitCatalog::required_capacity_bps(SplitId id, double ip_packet_bytes) const
{
    const SplitOption& opt = option(id);
    const RadioConfig& rc = radio_;
    const double hdr_all = rc.hdr_pdcp_bytes + rc.hdr_rlc_bytes + rc.hdr_mac_bytes;
    // IP packets that fit one transport block once every header is attached.
    const double ip_per_tti = rc.tbs_dl_bits / ((ip_packet_bytes + hdr_all) * 8.0);

    auto user_plane_bps = [&](double payload_bytes) {
        return ip_per_tti * payload_bytes * 8.0 * rc.n_dl_tbs / rc.tti_s;
    };

    switch (opt.id) {
        case SplitId::O1:
            return user_plane_bps(ip_packet_bytes);
        case SplitId::O2:
            return user_plane_bps(ip_packet_bytes + rc.hdr_pdcp_bytes);
        case SplitId::O4:
            return user_plane_bps(ip_packet_bytes + rc.hdr_pdcp_bytes + rc.hdr_rlc_bytes);
        case SplitId::O6:
            return user_plane_bps(ip_packet_bytes + hdr_all) + rc.fapi_dl_bps;
        case SplitId::O8: {
            // All resource blocks granted to a single UE.
            const double pdsch_res =
                rc.n_rb * rc.n_sc_rb * (rc.n_sym_sub - rc.refsym_res * rc.n_antenna_ports);
            return (pdsch_res + rc.pdcch_res) * rc.n_iq_bits * rc.n_layers / rc.tti_s;
        }
        case SplitId::O9:
            return static_cast<double>(rc.n_sc_rb) * rc.n_rb * rc.n_sym_sub * rc.n_layers *
                   rc.n_iq_bits / rc.tti_s;
        case SplitId::O11:
            return rc.sample_rate_bps * rc.n_antenna_ports * rc.n_iq_bits;
        default:
            throw UnknownSplitError("no capacity formula for split " + to_string(opt.id));
    }
}

double SplitCatalog::overhead_multiplier(SplitId id, PacketClass packet_class) const
{
    const SplitOption& opt = option(id);
    return packet_class == PacketClass::URLLC ? opt.overhead_multiplier_128
                                              : opt.overhead_multiplier_1500;
}

const std::array<VnfLocation, kVnfCount>& SplitCatalog::placement_vector(SplitId id) const
{
    return option(id).placement;
}

std::string SplitCatalog::to_json() const
{
    nlohmann::json j;
    j["radio"] = {{"tbs_dl_bits", radio_.tbs_dl_bits},
                  {"n_rb", radio_.n_rb},
                  {"sample_rate_bps", radio_.sample_rate_bps},
                  {"n_sc_rb", radio_.n_sc_rb},
                  {"n_sym_sub", radio_.n_sym_sub},
                  {"n_layers", radio_.n_layers},
                  {"n_iq_bits", radio_.n_iq_bits},
                  {"n_antenna_ports", radio_.n_antenna_ports},
                  {"n_dl_tbs", radio_.n_dl_tbs},
                  {"fapi_dl_bps", radio_.fapi_dl_bps},
                  {"refsym_res", radio_.refsym_res},
                  {"pdcch_res", radio_.pdcch_res},
                  {"hdr_pdcp_bytes", radio_.hdr_pdcp_bytes},
                  {"hdr_rlc_bytes", radio_.hdr_rlc_bytes},
                  {"hdr_mac_bytes", radio_.hdr_mac_bytes},
                  {"tti_s", radio_.tti_s}};
    j["profiles"] = {{"percent", profiles_.percent}, {"ru_fft_percent", profiles_.ru_fft_percent}};
    j["splits"] = nlohmann::json::array();
    for (const SplitOption& opt : options_) {
        nlohmann::json placement = nlohmann::json::array();
        for (std::size_t g = 0; g < kVnfCount; ++g) {
            placement.push_back(opt.placement[g] == VnfLocation::CU ? "CU" : "DU");
        }
        j["splits"].push_back({{"id", to_string(opt.id)},
                               {"placement", placement},
                               {"delay_requirement_s", opt.delay_requirement_s},
                               {"overhead_multiplier_128", opt.overhead_multiplier_128},
                               {"overhead_multiplier_1500", opt.overhead_multiplier_1500},
                               {"fronthaul_only", opt.fronthaul_only}});
    }
    return j.dump(2);
}

SplitCatalog SplitCatalog::from_json(const std::string& text)
{
    const nlohmann::json j = nlohmann::json::parse(text);
    RadioConfig rc;
    if (j.contains("radio")) {
        const auto& r = j.at("radio");
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
    }
    VnfProfiles profiles;
    if (j.contains("profiles")) {
        const auto& p = j.at("profiles");
        if (p.contains("percent")) {
            profiles.percent = p.at("percent").get<std::array<double, kVnfCount>>();
        }
        profiles.ru_fft_percent = p.value("ru_fft_percent", profiles.ru_fft_percent);
    }
    std::vector<SplitOption> options;
    if (j.contains("splits")) {
        for (const auto& s : j.at("splits")) {
            SplitOption opt;
            opt.id = split_from_string(s.at("id").get<std::string>());
            const auto& placement = s.at("placement");
            for (std::size_t g = 0; g < kVnfCount; ++g) {
                opt.placement[g] =
                    placement.at(g).get<std::string>() == "CU" ? VnfLocation::CU : VnfLocation::DU;
            }
            opt.delay_requirement_s = s.at("delay_requirement_s").get<double>();
            opt.overhead_multiplier_128 = s.at("overhead_multiplier_128").get<double>();
            opt.overhead_multiplier_1500 = s.at("overhead_multiplier_1500").get<double>();
            opt.fronthaul_only = s.value("fronthaul_only", false);
            options.push_back(opt);
        }
    } else {
        options = default_options();
    }
    return SplitCatalog(std::move(options), rc, profiles);
}

std::string SplitCatalog::to_csv() const
{
    std::ostringstream out;
    out << "split,placement_cu,capacity_128B_bps,capacity_1500B_bps,delay_requirement_s,"
           "multiplier_128B,multiplier_1500B\n";
    out.precision(12);
    for (const SplitOption& opt : options_) {
        if (opt.fronthaul_only) {
            continue;
        }
        std::string cu_list;
        for (std::size_t g = 0; g < kVnfCount; ++g) {
            if (opt.placement[g] == VnfLocation::CU) {
                if (!cu_list.empty()) {
                    cu_list += '+';
                }
                cu_list += to_string(static_cast<Vnf>(g));
            }
        }
        out << to_string(opt.id) << ',' << cu_list << ','
            << required_capacity_bps(opt.id, 128.0) << ',' << required_capacity_bps(opt.id, 1500.0)
            << ',' << opt.delay_requirement_s << ',' << opt.overhead_multiplier_128 << ','
            << opt.overhead_multiplier_1500 << '\n';
    }
    return out.str();
}

}  // namespace slicebound
