// economics.cpp - Cash-flow and profit arithmetic. See economics.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/economics.hpp"

#include <stdexcept>

namespace slicebound {

double gamma(int vdu_count, int vnf_count, double eta, double zeta, int f_max)
{
    if (zeta <= 0.0 || f_max <= 0) {
        throw std::invalid_argument("gamma: zeta * F_max must be positive");
    }
    return vdu_count * (vnf_count + eta - 1.0) / (zeta * f_max);
}

CashFlowResult zeta_from_cashflow(const CashFlowInput& cf)
{
    if (cf.arpu_per_month <= 0.0 || cf.months <= 0 || cf.total_connections <= 0.0) {
        throw std::invalid_argument("zeta_from_cashflow: ARPU, months and connections must be positive");
    }
    CashFlowResult result;
    result.break_even_connections = cf.wireless_cost / (cf.arpu_per_month * cf.months);
    result.zeta = result.break_even_connections / cf.total_connections;
    return result;
}

double placement_cost(const std::array<VnfLocation, kVnfCount>& placement, const EconParams& econ)
{
    double cost = 0.0;
    for (VnfLocation loc : placement) {
        cost += loc == VnfLocation::CU ? econ.eta * econ.c_du : econ.c_du;
    }
    return cost;
}

double deployment_cost(std::span<const std::array<VnfLocation, kVnfCount>> placements,
                       const EconParams& econ)
{
    double cost = 0.0;
    for (const auto& placement : placements) {
        cost += placement_cost(placement, econ);
    }
    return cost;
}

double profit(std::span<const int> admitted_per_vdu,
              std::span<const std::array<VnfLocation, kVnfCount>> placements, double gamma_value,
              const EconParams& econ)
{
    double admitted = 0.0;
    for (int f : admitted_per_vdu) {
        if (f < 0) {
            throw std::invalid_argument("profit: negative admitted count");
        }
        admitted += f;
    }
    return gamma_value * econ.c_du * admitted - deployment_cost(placements, econ);
}

}  // namespace slicebound
