// test_economics.cpp - Cash-flow analysis and profit arithmetic.
//
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "slicebound/economics.hpp"

using namespace slicebound;

TEST_CASE("gamma from the evaluation parameters")
{
    CHECK(gamma(4, 6, 0.2585, 0.5571, 320) == doctest::Approx(0.118).epsilon(0.01));

    // Boundary: everything at one.
    CHECK(gamma(1, 1, 1.0, 1.0, 1) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(gamma(2, 6, 0.5, 0.5, 100) == doctest::Approx(0.22).epsilon(1e-12));
}

TEST_CASE("gamma homogeneity")
{
    const double base = gamma(4, 6, 0.2585, 0.5571, 320);
    CHECK(gamma(8, 6, 0.2585, 0.5571, 320) == doctest::Approx(2.0 * base).epsilon(1e-12));
    CHECK(gamma(4, 6, 0.2585, 0.5571, 640) == doctest::Approx(base / 2.0).epsilon(1e-12));
}

TEST_CASE("zeta from quarterly cash flow")
{
    // Q3'22 wireless cost 9,975.68M over ARPU 41.67/month for 3 months across
    // 143.243M connections.
    CashFlowInput verizon;
    verizon.wireless_revenue = 17904.91;
    verizon.wireless_cost = 9975.68;
    verizon.arpu_per_month = 41.67;
    verizon.months = 3;
    verizon.total_connections = 143.243;
    const CashFlowResult r = zeta_from_cashflow(verizon);
    CHECK(r.break_even_connections == doctest::Approx(9975.68 / 125.01).epsilon(1e-12));
    CHECK(r.zeta == doctest::Approx(0.5571).epsilon(1e-3));

    // Break-even exactly at full utilization.
    CashFlowInput full;
    full.wireless_cost = 125.01;
    full.arpu_per_month = 41.67;
    full.months = 3;
    full.total_connections = 1.0;
    CHECK(zeta_from_cashflow(full).zeta == doctest::Approx(1.0).epsilon(1e-12));

    CashFlowInput half = full;
    half.total_connections = 2.0;
    CHECK(zeta_from_cashflow(half).zeta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("deployment cost per placement")
{
    const SplitCatalog catalog;
    EconParams econ;

    // Four fully centralized vDUs: 4 * 6 * eta.
    std::vector<std::array<VnfLocation, kVnfCount>> all_o9(
        4, catalog.placement_vector(SplitId::O9));
    CHECK(deployment_cost(all_o9, econ) == doctest::Approx(4 * 6 * 0.2585).epsilon(1e-12));
    CHECK(deployment_cost(all_o9, econ) == doctest::Approx(6.204).epsilon(1e-12));

    // eta = 1 removes the placement sensitivity.
    EconParams flat;
    flat.eta = 1.0;
    for (SplitId id : catalog.selectable()) {
        std::vector<std::array<VnfLocation, kVnfCount>> one{catalog.placement_vector(id)};
        CHECK(deployment_cost(one, flat) == doctest::Approx(6.0).epsilon(1e-12));
    }

    // O6 keeps the two PHY functions at the vDU.
    std::vector<std::array<VnfLocation, kVnfCount>> one_o6{catalog.placement_vector(SplitId::O6)};
    CHECK(deployment_cost(one_o6, econ) == doctest::Approx(2.0 + 4 * 0.2585).epsilon(1e-12));
}

TEST_CASE("profit")
{
    const SplitCatalog catalog;
    EconParams econ;
    const double g = gamma(4, 6, econ.eta, econ.zeta, econ.f_max);

    // Nothing admitted, nothing deployed.
    CHECK(profit({}, {}, g, econ) == 0.0);

    // Reference admission pattern: 80+60+40+20 UEs.
    const std::vector<int> admitted{80, 60, 40, 20};
    std::vector<std::array<VnfLocation, kVnfCount>> placements{
        catalog.placement_vector(SplitId::O6), catalog.placement_vector(SplitId::O9),
        catalog.placement_vector(SplitId::O9), catalog.placement_vector(SplitId::O9)};
    const double expected_revenue = g * 200.0;
    CHECK(expected_revenue == doctest::Approx(0.118 * 200).epsilon(1e-3));
    const double expected_cost = (2.0 + 4 * 0.2585) + 3 * 6 * 0.2585;
    CHECK(profit(admitted, placements, g, econ) ==
          doctest::Approx(expected_revenue - expected_cost).epsilon(1e-12));
}

TEST_CASE("profit is monotone in admission")
{
    const SplitCatalog catalog;
    EconParams econ;
    const double g = 0.118;
    std::vector<std::array<VnfLocation, kVnfCount>> placements{
        catalog.placement_vector(SplitId::O6)};
    double last = -1e18;
    for (int f = 0; f <= 10; ++f) {
        const std::vector<int> admitted{f};
        const double p = profit(admitted, placements, g, econ);
        CHECK(p >= last);
        last = p;
    }
}
