// economics.hpp - Cash-flow model: revenue per UE vs VNF deployment cost,
// break-even utilization from operator financials, and profit.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_ECONOMICS_HPP
#define SLICEBOUND_ECONOMICS_HPP

#include <array>
#include <span>
#include <string>

#include "slicebound/catalog.hpp"

namespace slicebound {

struct EconParams {
    double eta = 0.2585;    // CU/DU cost ratio, (0, 1]
    double zeta = 0.5571;   // break-even utilization, (0, 1]
    int f_max = 320;        // revenue-generating UE capacity
    double c_du = 1.0;      // cost of one vDU-resident VNF (numeraire)
};

// Operator financials for one reporting period.
struct CashFlowInput {
    double wireless_revenue = 0.0;
    double wireless_cost = 0.0;
    double arpu_per_month = 0.0;
    int months = 3;
    double total_connections = 0.0;
};

// Revenue-per-UE over cost-per-vDU-VNF: U*(G + eta - 1) / (zeta * F_max).
double gamma(int vdu_count, int vnf_count, double eta, double zeta, int f_max);

struct CashFlowResult {
    double break_even_connections = 0.0;  // F_BE, same unit as total_connections
    double zeta = 0.0;
};

// F_BE = cost / (ARPU * months); zeta = F_BE / total connections.
CashFlowResult zeta_from_cashflow(const CashFlowInput& cf);

// Cost of one vDU's placement: c_du per vDU-resident VNF, eta*c_du per
// centralized one.
double placement_cost(const std::array<VnfLocation, kVnfCount>& placement, const EconParams& econ);

// Total cost over all vDUs' placements.
double deployment_cost(std::span<const std::array<VnfLocation, kVnfCount>> placements,
                       const EconParams& econ);

// Profit = gamma * c_du * total admitted UEs - deployment cost.
double profit(std::span<const int> admitted_per_vdu,
              std::span<const std::array<VnfLocation, kVnfCount>> placements, double gamma_value,
              const EconParams& econ);

}  // namespace slicebound

#endif  // SLICEBOUND_ECONOMICS_HPP
