// minplus.hpp - Leaky-bucket / rate-latency curve algebra: delay and backlog
// bounds, concatenation, FIFO leftover service, burst propagation, packetizer.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_MINPLUS_HPP
#define SLICEBOUND_MINPLUS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace slicebound {

// Thrown when an arrival rate exceeds the service rate of the server that is
// supposed to drain it (rho > R), i.e. no finite bound exists.
struct InstabilityError : std::runtime_error {
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when cross traffic consumes the full rate of a shared server, so the
// leftover service for the flow of interest is empty.
struct SaturationError : std::runtime_error {
    explicit SaturationError(const std::string& what) : std::runtime_error(what) {}
};

// Leaky-bucket arrival curve alpha(t) = rate * t + burst.
struct ArrivalCurve {
    double rate_bps = 0.0;    // rho, bits per second
    double burst_bits = 0.0;  // sigma, bits
};

// Rate-latency service curve beta(t) = rate * max(t - latency, 0).
struct ServiceCurve {
    double rate_bps = 0.0;   // R, bits per second, > 0
    double latency_s = 0.0;  // T, seconds, >= 0
};

// Packetizer correction: the served flow is only released in whole packets of
// at most max_packet_bits.
struct PacketizerConfig {
    double max_packet_bits = 0.0;  // l_max
};

// Worst-case delay T + sigma/R of a single leaky-bucket flow through a single
// FIFO rate-latency server. Throws InstabilityError when a.rate > s.rate.
double delay_bound_single(const ArrivalCurve& a, const ServiceCurve& s);

// Worst-case backlog sigma + rho*T (supremum of alpha - beta, attained at
// t = T when rho <= R). Throws InstabilityError when a.rate > s.rate.
double backlog_bound(const ArrivalCurve& a, const ServiceCurve& s);

// Min-plus convolution of rate-latency curves: (min of rates, sum of
// latencies). Throws std::invalid_argument on an empty list.
ServiceCurve concatenate(std::span<const ServiceCurve> curves);

// Worst-case delay over hop_count identical servers when every hop pays the
// (grown) burst again: V*T + V*(sigma + (V-1)/2 * rho*T)/R. Strictly looser
// than the concatenation bound whenever hop_count >= 2 and rho*T > 0.
double additive_delay(const ArrivalCurve& a, const ServiceCurve& s, std::size_t hop_count);

// Service left for a flow of interest at a FIFO server shared with leaky-bucket
// cross traffic: (R - rho_cross, T + sigma_cross/R). Throws SaturationError
// when cross.rate >= s.rate.
ServiceCurve leftover_fifo(const ServiceCurve& s, const ArrivalCurve& cross);

// Burst of a flow after it crossed upstream servers with the given fixed
// latencies: sigma + rho * sum(T_h).
double updated_burst(const ArrivalCurve& a, std::span<const double> upstream_latencies_s);

// Rate-latency form of [beta(t) - l_max]^+ for a fluid server followed by a
// packetizer: (R, T + l_max/R).
ServiceCurve packetize(const ServiceCurve& s, const PacketizerConfig& p);

}  // namespace slicebound

#endif  // SLICEBOUND_MINPLUS_HPP
