// test_catalog.cpp - Split catalog data, capacity formulas, invariants.
//
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slicebound/catalog.hpp"

using namespace slicebound;

TEST_CASE("capacity formulas under the default radio config")
{
    const SplitCatalog catalog;

    // Direct product per the IQ-stream row: 12 * 100 * 14 * 2 * 32 bits per
    // 1 ms TTI.
    const double o9_expected = 12.0 * 100 * 14 * 2 * 32 / 1e-3;
    CHECK(catalog.required_capacity_bps(SplitId::O9) ==
          doctest::Approx(o9_expected).epsilon(1e-12));
    CHECK(catalog.required_capacity_bps(SplitId::O9) == doctest::Approx(1.0752e9).epsilon(1e-12));

    // Sample-rate stream: SR * N_AP * N_IQ, already a rate.
    CHECK(catalog.required_capacity_bps(SplitId::O11) ==
          doctest::Approx(30.72e6 * 2 * 32).epsilon(1e-12));
    CHECK(catalog.required_capacity_bps(SplitId::O11) ==
          doctest::Approx(1.96608e9).epsilon(1e-12));

    // IP-packet row at 1500 B: packets per TTI times payload bits.
    const double ip_per_tti = 75376.0 / (1509.0 * 8.0);
    const double o1_expected = ip_per_tti * 1500.0 * 8.0 * 2.0 / 1e-3;
    CHECK(catalog.required_capacity_bps(SplitId::O1, 1500.0) ==
          doctest::Approx(o1_expected).epsilon(1e-12));
    CHECK(catalog.required_capacity_bps(SplitId::O1, 1500.0) ==
          doctest::Approx(149.9e6).epsilon(1e-3));

    // Resource-element row: one UE holding all RBs, reference symbols taken
    // off the subframe, plus the control region.
    const double pdsch_res = 100.0 * 12 * (14 - 6 * 2);
    const double o8_expected = (pdsch_res + 144) * 32 * 2 / 1e-3;
    CHECK(catalog.required_capacity_bps(SplitId::O8) ==
          doctest::Approx(o8_expected).epsilon(1e-12));

    CHECK_THROWS_AS(catalog.required_capacity_bps(SplitId::O5), UnknownSplitError);
}

TEST_CASE("capacity demand grows toward the lower-layer splits")
{
    const SplitCatalog catalog;
    const SplitId order[] = {SplitId::O1, SplitId::O2, SplitId::O4, SplitId::O6,
                             SplitId::O8, SplitId::O9, SplitId::O11};
    for (std::size_t i = 0; i + 1 < std::size(order); ++i) {
        CHECK(catalog.required_capacity_bps(order[i]) <=
              catalog.required_capacity_bps(order[i + 1]));
    }
}

TEST_CASE("overhead multipliers")
{
    const SplitCatalog catalog;
    CHECK(catalog.overhead_multiplier(SplitId::O9, PacketClass::URLLC) == 7.6338);
    CHECK(catalog.overhead_multiplier(SplitId::O1, PacketClass::URLLC) == 1.0000);
    CHECK(catalog.overhead_multiplier(SplitId::O1, PacketClass::EMBB) == 1.0000);
    CHECK(catalog.overhead_multiplier(SplitId::O6, PacketClass::EMBB) == 1.0060);

    // Small packets always pay at least as much relative overhead.
    for (SplitId id : catalog.selectable()) {
        CHECK(catalog.overhead_multiplier(id, PacketClass::URLLC) >=
              catalog.overhead_multiplier(id, PacketClass::EMBB));
    }
}

TEST_CASE("placement vectors")
{
    const SplitCatalog catalog;

    const auto& o9 = catalog.placement_vector(SplitId::O9);
    for (VnfLocation loc : o9) {
        CHECK(loc == VnfLocation::CU);
    }

    const auto& o1 = catalog.placement_vector(SplitId::O1);
    CHECK(o1[static_cast<std::size_t>(Vnf::RRC)] == VnfLocation::CU);
    for (Vnf vnf : {Vnf::PDCP, Vnf::RLC, Vnf::MAC, Vnf::PhyC, Vnf::PhyB}) {
        CHECK(o1[static_cast<std::size_t>(vnf)] == VnfLocation::DU);
    }

    const auto& o6 = catalog.placement_vector(SplitId::O6);
    CHECK(o6[static_cast<std::size_t>(Vnf::PhyB)] == VnfLocation::DU);
    CHECK(o6[static_cast<std::size_t>(Vnf::PhyC)] == VnfLocation::DU);
    for (Vnf vnf : {Vnf::RRC, Vnf::PDCP, Vnf::RLC, Vnf::MAC}) {
        CHECK(o6[static_cast<std::size_t>(vnf)] == VnfLocation::CU);
    }
}

TEST_CASE("every placement respects the protocol chain")
{
    const SplitCatalog catalog;
    for (SplitId id : catalog.selectable()) {
        const auto& placement = catalog.placement_vector(id);
        for (std::size_t g = 1; g < kVnfCount; ++g) {
            if (placement[g] == VnfLocation::CU) {
                CHECK(placement[g - 1] == VnfLocation::CU);
            }
        }
    }
}

TEST_CASE("processing fractions cover the full stack")
{
    const VnfProfiles profiles;
    // Published percentages sum to 100.01 because of rounding.
    CHECK(profiles.total_percent() == doctest::Approx(100.0).epsilon(5e-4));
    CHECK(profiles.fraction(Vnf::PhyC) == doctest::Approx(0.4928));
}

TEST_CASE("delay requirements per split")
{
    const SplitCatalog catalog;
    CHECK(catalog.option(SplitId::O1).delay_requirement_s == 10e-3);
    CHECK(catalog.option(SplitId::O2).delay_requirement_s == 1.5e-3);
    CHECK(catalog.option(SplitId::O4).delay_requirement_s == 1e-3);
    CHECK(catalog.option(SplitId::O6).delay_requirement_s == 250e-6);
    CHECK(catalog.option(SplitId::O8).delay_requirement_s == 250e-6);
    CHECK(catalog.option(SplitId::O9).delay_requirement_s == 250e-6);
}

TEST_CASE("catalog lists six midhaul splits and survives a JSON round trip")
{
    const SplitCatalog catalog;
    CHECK(catalog.selectable().size() == 6);
    CHECK(catalog.option(SplitId::O11).fronthaul_only);

    const SplitCatalog reloaded = SplitCatalog::from_json(catalog.to_json());
    CHECK(reloaded.selectable() == catalog.selectable());
    for (SplitId id : reloaded.selectable()) {
        CHECK(reloaded.required_capacity_bps(id) == catalog.required_capacity_bps(id));
        CHECK(reloaded.overhead_multiplier(id, PacketClass::URLLC) ==
              catalog.overhead_multiplier(id, PacketClass::URLLC));
    }
}

TEST_CASE("custom radio config recomputes capacities")
{
    SplitCatalog base;
    RadioConfig radio;
    radio.n_rb = 50;
    std::vector<SplitOption> options;
    for (SplitId id : base.selectable()) {
        options.push_back(base.option(id));
    }
    const SplitCatalog halved(options, radio, VnfProfiles{});
    CHECK(halved.required_capacity_bps(SplitId::O9) ==
          doctest::Approx(0.5 * base.required_capacity_bps(SplitId::O9)).epsilon(1e-12));
}

TEST_CASE("csv dump enumerates the selectable splits")
{
    const SplitCatalog catalog;
    const std::string csv = catalog.to_csv();
    CHECK(csv.find("O1,") != std::string::npos);
    CHECK(csv.find("O9,") != std::string::npos);
    CHECK(csv.find("O11") == std::string::npos);
}
