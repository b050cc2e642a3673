// catalog.hpp - Functional split catalog: per-split VNF placement, midhaul
// capacity and one-way latency requirements, packet overhead multipliers and
// per-VNF processing-time fractions.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_CATALOG_HPP
#define SLICEBOUND_CATALOG_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicebound {

struct UnknownSplitError : std::runtime_error {
    explicit UnknownSplitError(const std::string& what) : std::runtime_error(what) {}
};

// Split taxonomy. O3, O5, O7, O10 and O12 exist in the taxonomy but carry no
// catalog data and are never selectable; O11 is fronthaul-only.
enum class SplitId { O1, O2, O3, O4, O5, O6, O7, O8, O9, O10, O11, O12 };

std::string to_string(SplitId id);
SplitId split_from_string(const std::string& name);

// RAN VNFs that move between vDU and CU with the high-layer split. Index order
// follows the protocol chain: RRC is the most central function, PhyB the least.
// PhyA (RF/FFT) is pinned to the RU and is not part of this set.
enum class Vnf { RRC = 0, PDCP, RLC, MAC, PhyC, PhyB };
inline constexpr std::size_t kVnfCount = 6;

std::string to_string(Vnf vnf);

enum class VnfLocation { DU, CU };

enum class PacketClass { URLLC, EMBB };

// Radio-side parameters feeding the per-split capacity formulas.
struct RadioConfig {
    double tbs_dl_bits = 75376.0;       // transport block size per TTI
    int n_rb = 100;                     // resource blocks
    double sample_rate_bps = 30.72e6;   // SR
    int n_sc_rb = 12;                   // subcarriers per RB
    int n_sym_sub = 14;                 // symbols per subframe
    int n_layers = 2;                   // N_L
    int n_iq_bits = 32;                 // IQ sample bitwidth
    int n_antenna_ports = 2;            // N_AP
    int n_dl_tbs = 2;                   // transport blocks per TTI
    double fapi_dl_bps = 1.5e6;         // FAPI control stream
    int refsym_res = 6;                 // reference-symbol REs
    int pdcch_res = 144;                // PDCCH REs
    double hdr_pdcp_bytes = 2.0;
    double hdr_rlc_bytes = 5.0;
    double hdr_mac_bytes = 2.0;
    double tti_s = 1e-3;
};

// Processing-time share of the full NG-RAN stack per VNF (percent). The
// remainder (ru_fft_percent) always runs at the RU.
struct VnfProfiles {
    std::array<double, kVnfCount> percent = {2.17, 18.7, 0.91, 13.24, 49.28, 9.89};
    double ru_fft_percent = 5.82;

    double fraction(Vnf vnf) const { return percent[static_cast<std::size_t>(vnf)] / 100.0; }
    double total_percent() const;
};

// One selectable functional split.
struct SplitOption {
    SplitId id = SplitId::O1;
    std::array<VnfLocation, kVnfCount> placement{};
    double delay_requirement_s = 0.0;     // one-way latency budget of the split
    double overhead_multiplier_128 = 1.0; // URLLC packets
    double overhead_multiplier_1500 = 1.0; // eMBB packets
    bool fronthaul_only = false;          // O11: carries IQ samples RU<->DU only

    bool cu_placed(Vnf vnf) const { return placement[static_cast<std::size_t>(vnf)] == VnfLocation::CU; }
    std::size_t cu_vnf_count() const;
};

// Immutable after construction; safe to share across threads.
class SplitCatalog {
public:
    // Default catalog: eligible splits O1, O2, O4, O6, O8, O9 for the midhaul
    // plus the fronthaul-only O11.
    SplitCatalog();
    SplitCatalog(std::vector<SplitOption> options, RadioConfig radio, VnfProfiles profiles);

    const SplitOption& option(SplitId id) const;
    bool contains(SplitId id) const;

    // Splits selectable for the midhaul (high-layer split), catalog order.
    std::vector<SplitId> selectable() const;

    const RadioConfig& radio() const { return radio_; }
    const VnfProfiles& profiles() const { return profiles_; }

    // Midhaul/fronthaul capacity demanded by the split, in bits per second.
    // Per-TTI formulas are converted to rates by dividing by radio().tti_s.
    double required_capacity_bps(SplitId id, double ip_packet_bytes) const;
    double required_capacity_bps(SplitId id) const { return required_capacity_bps(id, 1500.0); }

    double overhead_multiplier(SplitId id, PacketClass packet_class) const;
    const std::array<VnfLocation, kVnfCount>& placement_vector(SplitId id) const;

    std::string to_json() const;
    static SplitCatalog from_json(const std::string& text);

    // CSV dump: one row per selectable split with placement, requirements and
    // multipliers under the current radio config.
    std::string to_csv() const;

private:
    void validate() const;

    std::vector<SplitOption> options_;
    RadioConfig radio_;
    VnfProfiles profiles_;
};

}  // namespace slicebound

#endif  // SLICEBOUND_CATALOG_HPP
