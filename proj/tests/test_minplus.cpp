// test_minplus.cpp - Curve algebra golden values and properties.
//
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "slicebound/minplus.hpp"

using namespace slicebound;

namespace {
constexpr double kRelTol = 1e-9;
}

TEST_CASE("single-node delay bound")
{
    // Worked-example bottleneck term: one 128 B packet over the leftover
    // rate of the last node.
    CHECK(delay_bound_single({0.0, 1024.0}, {14.857e6, 0.0}) ==
          doctest::Approx(1024.0 / 14.857e6).epsilon(kRelTol));
    CHECK(delay_bound_single({0.0, 1024.0}, {14.857e6, 0.0}) ==
          doctest::Approx(68.92e-6).epsilon(1e-3));

    // Zero burst: the bound collapses to the fixed latency.
    CHECK(delay_bound_single({5e6, 0.0}, {25e6, 40.96e-6}) == 40.96e-6);

    CHECK(delay_bound_single({0.0, 1024.0}, {25e6, 40.96e-6}) ==
          doctest::Approx(81.92e-6).epsilon(kRelTol));

    CHECK_THROWS_AS(delay_bound_single({30e6, 100.0}, {25e6, 0.0}), InstabilityError);
}

TEST_CASE("backlog bound")
{
    CHECK(backlog_bound({512e3, 4096.0}, {25e6, 40.96e-6}) ==
          doctest::Approx(4116.97152).epsilon(kRelTol));
    CHECK(backlog_bound({256e3, 2048.0}, {1e9, 40.96e-6}) ==
          doctest::Approx(2058.48576).epsilon(kRelTol));
    // rho = 0: backlog is the burst itself.
    CHECK(backlog_bound({0.0, 777.0}, {1e6, 1.0}) == 777.0);
    CHECK_THROWS_AS(backlog_bound({2e6, 1.0}, {1e6, 0.0}), InstabilityError);
}

TEST_CASE("concatenation")
{
    const std::vector<ServiceCurve> twin{{10.0, 1.0}, {10.0, 1.0}};
    ServiceCurve net = concatenate(twin);
    CHECK(net.rate_bps == 10.0);
    CHECK(net.latency_s == 2.0);

    // Worked-example leftover curves: the five allocated rates minus cross traffic;
    // the slowest node sets the network rate.
    const std::vector<ServiceCurve> leftover_chain{{0.5 * 0.05e9 - 768e3, 40.96e-6},
                                             {0.25 * 0.1e9 - 768e3, 40.96e-6},
                                             {0.25 * 0.25e9 - 768e3, 36.384e-6},
                                             {0.125 * 0.25e9 - 768e3, 28.192e-6},
                                             {0.0625 * 0.25e9 - 768e3, 24.096e-6}};
    CHECK(concatenate(leftover_chain).rate_bps == doctest::Approx(14.857e6).epsilon(kRelTol));

    const std::vector<ServiceCurve> mixed{{5.0, 0.1}, {3.0, 0.2}, {7.0, 0.0}};
    net = concatenate(mixed);
    CHECK(net.rate_bps == 3.0);
    CHECK(net.latency_s == doctest::Approx(0.3).epsilon(1e-12));

    CHECK_THROWS_AS(concatenate({}), std::invalid_argument);
}

TEST_CASE("additive method")
{
    // V = 1 collapses to the single-node bound.
    const ArrivalCurve a{512e3, 1024.0};
    const ServiceCurve s{25e6, 40.96e-6};
    CHECK(additive_delay(a, s, 1) == doctest::Approx(delay_bound_single(a, s)).epsilon(1e-15));

    // Direct evaluation: 5*40.96us + 5*(1024 + 2*512e3*40.96e-6)/25e6.
    CHECK(additive_delay(a, s, 5) == doctest::Approx(417.988608e-6).epsilon(kRelTol));

    CHECK_THROWS_AS(additive_delay({30e6, 1.0}, {25e6, 1e-6}, 2), InstabilityError);
    CHECK_THROWS_AS(additive_delay(a, s, 0), std::invalid_argument);
}

TEST_CASE("additive strictly dominates concatenation when bursts repay")
{
    // Pay-bursts-only-once: for V >= 2 and rho*T > 0 the additive estimate
    // strictly exceeds V*T + sigma/R.
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> sigma_d(1.0, 1e6);
    std::uniform_real_distribution<double> rate_d(1e3, 1e9);
    std::uniform_real_distribution<double> latency_d(1e-7, 1e-2);
    std::uniform_int_distribution<int> hops_d(2, 12);
    for (int i = 0; i < 500; ++i) {
        const double rate = rate_d(rng);
        const ArrivalCurve a{std::uniform_real_distribution<double>(1.0, rate)(rng),
                             sigma_d(rng)};
        const ServiceCurve s{rate, latency_d(rng)};
        const int hops = hops_d(rng);
        const double conc = hops * s.latency_s + a.burst_bits / s.rate_bps;
        CHECK(additive_delay(a, s, hops) > conc);
    }
}

TEST_CASE("concatenating identical servers keeps the pay-once bound")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> hops_d(1, 8);
    // Dyadic latencies make the repeated sum exact.
    const double latencies[] = {0.25, 0.5, 1.0, 0.125};
    for (int i = 0; i < 100; ++i) {
        const int hops = hops_d(rng);
        const double t = latencies[i % 4];
        const ArrivalCurve a{1e3, 4096.0};
        const ServiceCurve s{1e6, t};
        std::vector<ServiceCurve> tandem(hops, s);
        CHECK(delay_bound_single(a, concatenate(tandem)) == hops * t + a.burst_bits / s.rate_bps);
    }
}

TEST_CASE("FIFO leftover service")
{
    // Worked-example node 5: 6.25% of 0.25 Gb/s shared with 768 kb/s of cross traffic.
    ServiceCurve leftover = leftover_fifo({0.015625e9, 24.096e-6}, {768e3, 6144.0});
    CHECK(leftover.rate_bps == doctest::Approx(14.857e6).epsilon(kRelTol));

    // No cross traffic: unchanged curve.
    leftover = leftover_fifo({25e6, 40.96e-6}, {0.0, 0.0});
    CHECK(leftover.rate_bps == 25e6);
    CHECK(leftover.latency_s == 40.96e-6);

    leftover = leftover_fifo({0.025e9, 40.96e-6}, {768e3, 6144.0});
    CHECK(leftover.rate_bps == doctest::Approx(24.232e6).epsilon(kRelTol));
    CHECK(leftover.latency_s == doctest::Approx(286.72e-6).epsilon(kRelTol));

    CHECK_THROWS_AS(leftover_fifo({1e6, 0.0}, {1e6, 0.0}), SaturationError);
}

TEST_CASE("leftover service is monotone in cross traffic")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double rate = 1e6 + unit(rng) * 1e9;
        const ServiceCurve s{rate, unit(rng) * 1e-3};
        const ArrivalCurve cross{unit(rng) * rate * 0.9, unit(rng) * 1e5};
        const ArrivalCurve more{cross.rate_bps + unit(rng) * (rate - cross.rate_bps) * 0.09,
                                cross.burst_bits + unit(rng) * 1e5};
        const ServiceCurve lo = leftover_fifo(s, cross);
        const ServiceCurve lo_more = leftover_fifo(s, more);
        CHECK(lo_more.rate_bps <= lo.rate_bps);
        CHECK(lo_more.latency_s >= lo.latency_s);
    }
}

TEST_CASE("burst update across upstream servers")
{
    const double t1 = 40.96e-6;
    std::vector<double> one{t1};
    CHECK(updated_burst({512e3, 4096.0}, one) == doctest::Approx(4116.97152).epsilon(kRelTol));

    CHECK(updated_burst({512e3, 4096.0}, {}) == 4096.0);

    std::vector<double> four{40.96e-6, 40.96e-6, 36.384e-6, 28.192e-6};
    CHECK(updated_burst({256e3, 2048.0}, four) == doctest::Approx(2085.502976).epsilon(kRelTol));
}

TEST_CASE("burst update is linear in the latency sum")
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const ArrivalCurve a{unit(rng) * 1e7, unit(rng) * 1e5};
        const double t = unit(rng) * 1e-3;
        std::vector<double> once{t};
        std::vector<double> twice{t, t};
        CHECK(updated_burst(a, once) ==
              doctest::Approx(a.burst_bits + a.rate_bps * t).epsilon(1e-12));
        CHECK(updated_burst(a, twice) ==
              doctest::Approx(a.burst_bits + 2.0 * a.rate_bps * t).epsilon(1e-12));
    }
}

TEST_CASE("packetizer correction")
{
    ServiceCurve s = packetize({1e9, 0.0}, {0.0});
    CHECK(s.rate_bps == 1e9);
    CHECK(s.latency_s == 0.0);

    s = packetize({1e9, 0.0}, {12000.0});
    CHECK(s.latency_s == doctest::Approx(12e-6).epsilon(kRelTol));

    s = packetize({25e6, 40.96e-6}, {1024.0});
    CHECK(s.rate_bps == 25e6);
    CHECK(s.latency_s == doctest::Approx(81.92e-6).epsilon(kRelTol));
}
