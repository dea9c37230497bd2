#include <doctest.h>

#include <random>

#include "tierperf/tier_perf.hpp"

using namespace tierperf;

TEST_SUITE("tier_perf") {

TEST_CASE("composite bandwidth hits the dual-socket endpoints exactly") {
    CHECK(composite_bandwidth({1.0, 0.0}, 204, 78) == 204.0);
    CHECK(composite_bandwidth({0.0, 1.0}, 204, 78) == 78.0);
}

TEST_CASE("composite bandwidth at an even split") {
    // 1 / (0.5/204 + 0.5/78)
    CHECK(composite_bandwidth({0.5, 0.5}, 204, 78) == doctest::Approx(112.85).epsilon(0.0001));
}

TEST_CASE("composite bandwidth equals the weighted harmonic mean") {
    // Independent algebraic route: bw0*bw1 / (m*bw1 + (1-m)*bw0).
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> fraction(0.0, 1.0);
    std::uniform_real_distribution<double> bandwidth(0.5, 500.0);
    for (int i = 0; i < 1000; ++i) {
        const double m = fraction(rng);
        const double bw0 = bandwidth(rng);
        const double bw1 = bandwidth(rng);
        const double got = composite_bandwidth({m, 1.0 - m}, bw0, bw1);
        const double oracle = bw0 * bw1 / (m * bw1 + (1.0 - m) * bw0);
        CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(got >= std::min(bw0, bw1) - 1e-12);
        CHECK(got <= std::max(bw0, bw1) + 1e-12);
    }
}

TEST_CASE("composite bandwidth increases with the DRAM share") {
    double previous = 0;
    for (int i = 0; i <= 100; ++i) {
        const double m = i / 100.0;
        const double bw = composite_bandwidth({m, 1.0 - m}, 204, 78);
        CHECK(bw > previous);
        previous = bw;
    }
}

TEST_CASE("spill fraction follows capacity over data size") {
    CHECK(spill_fraction(64'000'000'000ULL, 192'000'000'000ULL).dram_fraction == 1.0);
    CHECK(spill_fraction(384'000'000'000ULL, 192'000'000'000ULL).dram_fraction == 0.5);

    const TrafficSplit split = spill_fraction(1'540'000'000'000ULL, 192'000'000'000ULL);
    CHECK(split.dram_fraction == doctest::Approx(0.1247).epsilon(0.001));
    CHECK(composite_bandwidth(split, 204, 78) == doctest::Approx(84.5).epsilon(0.005));
}

TEST_CASE("spilled bandwidth never increases with data size") {
    double previous = 1e9;
    for (std::uint64_t size = 100; size <= 2000; size += 20) {
        const TrafficSplit split = spill_fraction(size * 1'000'000'000ULL, 192'000'000'000ULL);
        const double bw = composite_bandwidth(split, 204, 78);
        CHECK(bw <= previous + 1e-12);
        previous = bw;
    }
}

TEST_CASE("write amplification is the media line over touched bytes") {
    CHECK(write_amplification(256) == 1.0);
    CHECK(write_amplification(64) == 4.0);
    CHECK(write_amplification(8) == 32.0);
    CHECK_THROWS_AS(write_amplification(0), DomainError);
    CHECK_THROWS_AS(write_amplification(257), DomainError);
}

TEST_CASE("write amplification scales exactly with touched bytes") {
    for (std::uint32_t touched : {1u, 2u, 4u, 8u, 16u, 32u}) {
        for (std::uint32_t k : {2u, 4u, 8u}) {
            if (touched * k > 256) continue;
            CHECK(write_amplification(touched) ==
                  doctest::Approx(write_amplification(touched * k) * k));
        }
        CHECK(write_amplification(touched) >= 1.0);
    }
}

TEST_CASE("access latency lookups match the calibration") {
    const MachineConfig c = reference_machine();
    CHECK(access_latency(c, TierKind::Dram, Pattern::Sequential, Locality::Local) == 79.0);
    CHECK(access_latency(c, TierKind::Pmm, Pattern::Random, Locality::Local) == 302.0);
    CHECK(access_latency(c, TierKind::Dram, Pattern::Sequential, Locality::Remote) == 154.0);
}

TEST_CASE("pattern bandwidth saturates at the tier peak") {
    const MachineConfig c = reference_machine();
    const BandwidthEstimate dram =
        pattern_bandwidth(c, TierKind::Dram, preset("read_only"), Locality::Local);
    CHECK(dram.gbps == doctest::Approx(104.0));
    CHECK(dram.limited_by == BandwidthLimit::TierPeak);

    const BandwidthEstimate pmm =
        pattern_bandwidth(c, TierKind::Pmm, preset("write_only"), Locality::Local);
    CHECK(pmm.gbps == doctest::Approx(12.1));
}

TEST_CASE("few threads are scaling-limited") {
    const MachineConfig c = reference_machine();
    WorkloadSpec spec = preset("read_only");
    spec.threads = 2;
    const BandwidthEstimate est = pattern_bandwidth(c, TierKind::Dram, spec, Locality::Local);
    CHECK(est.gbps == doctest::Approx(2 * 104.0 / 12.0));
    CHECK(est.limited_by == BandwidthLimit::ThreadScaling);
}

TEST_CASE("remote PMM writes collapse at high thread counts") {
    const MachineConfig c = reference_machine();
    const BandwidthEstimate est =
        pattern_bandwidth(c, TierKind::Pmm, preset("mix_1r1w"), Locality::Remote);
    CHECK(est.gbps <= 1.0 + 1e-12);
    CHECK(est.limited_by == BandwidthLimit::RemoteCollapse);
}

TEST_CASE("bandwidth is monotone in threads except in the collapse regime") {
    const MachineConfig c = reference_machine();
    for (const char* name : {"read_only", "mix_1r1w", "write_only"}) {
        WorkloadSpec spec = preset(name);
        double previous = 0;
        for (int threads = 1; threads <= 24; ++threads) {
            spec.threads = threads;
            const double bw =
                pattern_bandwidth(c, TierKind::Dram, spec, Locality::Local).gbps;
            CHECK(bw >= previous - 1e-12);
            previous = bw;
        }
    }
    // Remote PMM with writes: nonincreasing past the onset.
    WorkloadSpec spec = preset("mix_1r1w");
    double previous = 1e9;
    for (int threads = c.tiers.remote_collapse.onset_threads + 1; threads <= 24; ++threads) {
        spec.threads = threads;
        const double bw = pattern_bandwidth(c, TierKind::Pmm, spec, Locality::Remote).gbps;
        CHECK(bw <= previous + 1e-12);
        previous = bw;
    }
}

TEST_CASE("PMM never beats DRAM at the same local mix") {
    const MachineConfig c = reference_machine();
    for (const char* name :
         {"read_only", "write_only", "nt_write_only", "mix_1r1w", "mix_2r1w", "mix_3r1w"}) {
        const WorkloadSpec spec = preset(name);
        const double dram = pattern_bandwidth(c, TierKind::Dram, spec, Locality::Local).gbps;
        const double pmm = pattern_bandwidth(c, TierKind::Pmm, spec, Locality::Local).gbps;
        CHECK(pmm <= dram);
    }
}

TEST_CASE("mix interpolation passes through the table points") {
    const MachineConfig c = reference_machine();
    CHECK(mix_bandwidth(c, TierKind::Pmm, 0.0, false) == 39.0);
    CHECK(mix_bandwidth(c, TierKind::Pmm, 0.25, false) == 21.6);
    CHECK(mix_bandwidth(c, TierKind::Pmm, 0.5, false) == 7.6);
    CHECK(mix_bandwidth(c, TierKind::Pmm, 1.0, false) == 12.1);
    // Between 3:1 and 2:1: linear.
    const double mid = mix_bandwidth(c, TierKind::Pmm, (0.25 + 1.0 / 3.0) / 2.0, false);
    CHECK(mid == doctest::Approx((21.6 + 15.0) / 2.0));
}

TEST_CASE("the NT flag swaps the write-only anchor") {
    const MachineConfig c = reference_machine();
    CHECK(mix_bandwidth(c, TierKind::Dram, 1.0, true) == 90.4);
    CHECK(mix_bandwidth(c, TierKind::Dram, 1.0, false) == 45.2);
    // Halfway between the 1:1 mix and the NT anchor.
    CHECK(mix_bandwidth(c, TierKind::Dram, 0.75, true) ==
          doctest::Approx((84.9 + 90.4) / 2.0));
}

TEST_CASE("dual-socket read peaks are the measured platform values") {
    const MachineConfig c = reference_machine();
    CHECK(mix_bandwidth(c, TierKind::Dram, 0.0, false, 2) == 204.0);
    CHECK(mix_bandwidth(c, TierKind::Pmm, 0.0, false, 2) == 78.0);
}

TEST_CASE("traffic splits must sum to one") {
    CHECK_THROWS_AS(validate(TrafficSplit{0.6, 0.6}), ValidationError);
    CHECK_THROWS_AS(validate(TrafficSplit{-0.1, 1.1}), ValidationError);
    CHECK_NOTHROW(validate(TrafficSplit{0.25, 0.75}));
}

}  // TEST_SUITE
