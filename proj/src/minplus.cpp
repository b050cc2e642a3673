// minplus.cpp - Curve algebra implementation. See minplus.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/minplus.hpp"

#include <limits>
#include <stdexcept>

namespace slicebound {

namespace {

void require_stable(const ArrivalCurve& a, const ServiceCurve& s, const char* op)
{
    if (a.rate_bps > s.rate_bps) {
        throw InstabilityError(std::string(op) + ": arrival rate " +
                               std::to_string(a.rate_bps) + " b/s exceeds service rate " +
                               std::to_string(s.rate_bps) + " b/s");
    }
}

}  // namespace

double delay_bound_single(const ArrivalCurve& a, const ServiceCurve& s)
{
    require_stable(a, s, "delay_bound_single");
    return s.latency_s + a.burst_bits / s.rate_bps;
}

double backlog_bound(const ArrivalCurve& a, const ServiceCurve& s)
{
    require_stable(a, s, "backlog_bound");
    return a.burst_bits + a.rate_bps * s.latency_s;
}

ServiceCurve concatenate(std::span<const ServiceCurve> curves)
{
    if (curves.empty()) {
        throw std::invalid_argument("concatenate: empty server list");
    }
    ServiceCurve net{std::numeric_limits<double>::infinity(), 0.0};
    for (const ServiceCurve& c : curves) {
        net.rate_bps = std::min(net.rate_bps, c.rate_bps);
        net.latency_s += c.latency_s;
    }
    return net;
}

double additive_delay(const ArrivalCurve& a, const ServiceCurve& s, std::size_t hop_count)
{
    if (hop_count < 1) {
        throw std::invalid_argument("additive_delay: hop_count must be >= 1");
    }
    require_stable(a, s, "additive_delay");
    const double v = static_cast<double>(hop_count);
    const double grown_burst = a.burst_bits + (v - 1.0) / 2.0 * a.rate_bps * s.latency_s;
    return v * s.latency_s + v * grown_burst / s.rate_bps;
}

ServiceCurve leftover_fifo(const ServiceCurve& s, const ArrivalCurve& cross)
{
    if (cross.rate_bps >= s.rate_bps) {
        throw SaturationError("leftover_fifo: cross traffic rate " +
                              std::to_string(cross.rate_bps) + " b/s saturates server rate " +
                              std::to_string(s.rate_bps) + " b/s");
    }
    return ServiceCurve{s.rate_bps - cross.rate_bps,
                        s.latency_s + cross.burst_bits / s.rate_bps};
}

double updated_burst(const ArrivalCurve& a, std::span<const double> upstream_latencies_s)
{
    double latency_sum = 0.0;
    for (double t : upstream_latencies_s) {
        if (t < 0.0) {
            throw std::invalid_argument("updated_burst: negative upstream latency");
        }
        latency_sum += t;
    }
    return a.burst_bits + a.rate_bps * latency_sum;
}

ServiceCurve packetize(const ServiceCurve& s, const PacketizerConfig& p)
{
    return ServiceCurve{s.rate_bps, s.latency_s + p.max_packet_bits / s.rate_bps};
}

}  // namespace slicebound
