#include <doctest.h>

#include <sstream>
#include <unordered_map>

#include "tierperf/dram_cache.hpp"
#include "tierperf/tier_perf.hpp"

using namespace tierperf;

namespace {

CacheConfig make_cache(std::uint64_t sets) {
    CacheConfig config;
    config.line_bytes = 64;
    config.capacity_bytes = sets * 64;
    return config;
}

/// Independent reference: per-set map of the resident line and dirty bit.
CacheStats oracle_sim(const AccessTrace& trace, std::uint64_t sets) {
    struct Slot {
        std::uint64_t line;
        bool dirty;
    };
    std::unordered_map<std::uint64_t, Slot> resident;
    CacheStats stats;
    for (const auto& event : trace.events) {
        ++stats.accesses;
        const std::uint64_t set = event.line % sets;
        auto it = resident.find(set);
        if (it != resident.end() && it->second.line == event.line) {
            ++stats.hits;
            if (event.kind == AccessKind::Write) it->second.dirty = true;
        } else {
            ++stats.misses;
            if (it != resident.end() && it->second.dirty) ++stats.dirty_evictions;
            resident[set] = {event.line, event.kind == AccessKind::Write};
        }
    }
    return stats;
}

AccessTrace sequential_trace(std::uint64_t lines, AccessKind kind) {
    AccessTrace trace;
    for (std::uint64_t i = 0; i < lines; ++i) trace.events.push_back({i, kind});
    return trace;
}

}  // namespace

TEST_SUITE("dram_cache") {

TEST_CASE("a fitting working set hits 100% after warmup") {
    const CacheConfig config = make_cache(256);
    DirectMappedCache cache(config);
    const AccessTrace trace = sequential_trace(200, AccessKind::Read);
    cache.replay(trace);
    cache.reset_stats();
    cache.replay(trace);
    CHECK(cache.stats().hits == 200);
    CHECK(cache.stats().misses == 0);
}

TEST_CASE("same-set conflicts never hit") {
    const CacheConfig config = make_cache(128);
    AccessTrace trace;
    for (int i = 0; i < 50; ++i) {
        trace.events.push_back({7, AccessKind::Read});
        trace.events.push_back({7 + 128, AccessKind::Read});
    }
    const CacheStats stats = trace_sim(trace, config);
    CHECK(stats.hits == 0);
    CHECK(stats.misses == 100);
}

TEST_CASE("streaming writes over twice the sets evict one dirty set each") {
    const std::uint64_t sets = 512;
    const CacheStats stats =
        trace_sim(sequential_trace(2 * sets, AccessKind::Write), make_cache(sets));
    CHECK(stats.accesses == 2 * sets);
    CHECK(stats.misses == 2 * sets);
    CHECK(stats.dirty_evictions == sets);
}

TEST_CASE("simulator agrees with an independent oracle on random traces") {
    WorkloadSpec spec = preset("random_read");
    spec.read_fraction = 0.6;
    for (std::uint64_t sets : {64ULL, 257ULL, 1024ULL}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            spec.data_size_bytes = sets * 3 * 64;
            const AccessTrace trace = generate_trace(spec, seed, 20000);
            const CacheStats got = trace_sim(trace, make_cache(sets));
            const CacheStats want = oracle_sim(trace, sets);
            CHECK(got.accesses == want.accesses);
            CHECK(got.hits == want.hits);
            CHECK(got.misses == want.misses);
            CHECK(got.dirty_evictions == want.dirty_evictions);
            CHECK(got.hits + got.misses == got.accesses);
            CHECK(got.dirty_evictions <= got.misses);
        }
    }
}

TEST_CASE("replaying distinct lines into ample sets misses exactly once each") {
    WorkloadSpec spec = preset("random_read");
    spec.data_size_bytes = 700 * 64;
    const AccessTrace trace = generate_trace(spec, 9, 30000);
    std::uint64_t distinct = 0;
    std::vector<bool> seen(700, false);
    for (const auto& event : trace.events) {
        if (!seen[event.line]) {
            seen[event.line] = true;
            ++distinct;
        }
    }
    const CacheStats stats = trace_sim(trace, make_cache(1024));
    CHECK(stats.misses == distinct);
}

TEST_CASE("analytic hit rate covers the three regimes") {
    const CacheConfig cache = make_cache(1 << 14);
    WorkloadSpec spec = preset("read_only");
    spec.threads = 1;

    spec.data_size_bytes = cache.capacity_bytes / 2;
    CHECK(analytic_hit_rate(spec, cache) == 1.0);

    spec.pattern = Pattern::Random;
    spec.data_size_bytes = cache.capacity_bytes * 2;
    CHECK(analytic_hit_rate(spec, cache) == doctest::Approx(0.5));

    spec.pattern = Pattern::Sequential;
    spec.data_size_bytes = cache.capacity_bytes * 10;
    CHECK(analytic_hit_rate(spec, cache) == 0.0);
}

TEST_CASE("analytic hit rate is bounded and monotone in data size") {
    const CacheConfig cache = make_cache(1 << 12);
    WorkloadSpec spec = preset("random_read");
    spec.threads = 24;
    double previous = 1.0;
    for (std::uint64_t factor = 1; factor <= 64; factor *= 2) {
        spec.data_size_bytes = cache.capacity_bytes * factor / 2;
        const double h = analytic_hit_rate(spec, cache);
        CHECK(h >= 0.0);
        CHECK(h <= 1.0);
        CHECK(h <= previous + 1e-12);
        previous = h;
    }
}

TEST_CASE("analytic hit rate tracks the exact simulator within 0.02") {
    // Warm the cache with one pass, then measure a long steady-state window.
    for (std::uint64_t sets : {1ULL << 10, 1ULL << 12}) {
        for (double ratio : {0.5, 2.0, 4.0}) {
            const CacheConfig cache = make_cache(sets);
            WorkloadSpec spec = preset("random_read");
            spec.threads = 1;
            spec.data_size_bytes =
                static_cast<std::uint64_t>(ratio * static_cast<double>(cache.capacity_bytes));

            DirectMappedCache sim(cache);
            sim.replay(generate_trace(spec, 100, 4 * sets));
            sim.reset_stats();
            sim.replay(generate_trace(spec, 200, 120000));
            const double measured = static_cast<double>(sim.stats().hits) /
                                    static_cast<double>(sim.stats().accesses);
            const double predicted = analytic_hit_rate(spec, cache);
            CHECK(std::abs(measured - predicted) < 0.02);
        }
    }
}

TEST_CASE("memory mode keeps DRAM latency while the data fits") {
    const MachineConfig c = reference_machine();
    WorkloadSpec spec = preset("read_only");
    spec.data_size_bytes = 64'000'000'000ULL;
    const MemoryModePerf perf = memory_mode_perf(spec, c, 1);
    CHECK(perf.latency_ns == doctest::Approx(79.0).epsilon(0.05));
}

TEST_CASE("memory mode latency grows with data size and stays above DRAM") {
    const MachineConfig c = reference_machine();
    WorkloadSpec spec = preset("random_read");
    double previous = 0;
    for (std::uint64_t gb : {16ULL, 64ULL, 96ULL, 192ULL, 400ULL, 1000ULL, 1280ULL}) {
        spec.data_size_bytes = gb * 1'000'000'000ULL;
        const MemoryModePerf perf = memory_mode_perf(spec, c, 2);
        CHECK(perf.latency_ns >= 87.0);
        CHECK(perf.latency_ns >= previous - 1e-9);
        previous = perf.latency_ns;
    }
}

TEST_CASE("large sequential reads saturate at the optimization-mode cap") {
    MachineConfig c = reference_machine();
    WorkloadSpec spec = preset("read_only");
    spec.data_size_bytes = 1'000'000'000'000ULL;

    CHECK(memory_mode_perf(spec, c, 2).bandwidth_gbps == doctest::Approx(40.0));
    c.mode_options.memory_mode_optimization = MemoryModeOpt::Latency;
    CHECK(memory_mode_perf(spec, c, 2).bandwidth_gbps == doctest::Approx(5.0));
}

TEST_CASE("stream copy beyond DRAM lands at the measured Memory-mode value") {
    const MachineConfig c = reference_machine();
    WorkloadSpec spec = preset("stream_copy");
    spec.data_size_bytes = 336'000'000'000ULL;
    const MemoryModePerf perf = memory_mode_perf(spec, c, 2);
    CHECK(perf.bandwidth_gbps == doctest::Approx(27.0).epsilon(0.04));
}

TEST_CASE("dirty evictions only ever slow the miss stream") {
    const MachineConfig c = reference_machine();
    const WorkloadSpec spec = preset("stream_copy");
    double previous = 1e9;
    for (int i = 0; i <= 9; ++i) {
        const double dirty = i / 9.0;
        const double bw = memory_mode_bandwidth(c, spec, 0.5, dirty, 2);
        CHECK(bw <= previous + 1e-12);
        previous = bw;
    }
}

TEST_CASE("NT stores forfeit the DRAM write buffer") {
    const MachineConfig c = reference_machine();
    WorkloadSpec spec = preset("nt_write_only");
    spec.data_size_bytes = 10'000'000'000ULL;
    const MemoryModePerf nt = memory_mode_perf(spec, c, 1);
    const double dram_nt = mix_bandwidth(c, TierKind::Dram, 1.0, true, 1);
    CHECK(nt.bandwidth_gbps == doctest::Approx(0.47 * dram_nt));
}

TEST_CASE("trace files parse and reject garbage") {
    std::istringstream good("R 0\nW 5\n# comment\nR 5\n");
    const AccessTrace trace = parse_trace(good);
    REQUIRE(trace.events.size() == 3);
    CHECK(trace.events[1].kind == AccessKind::Write);
    CHECK(trace.events[1].line == 5);

    std::istringstream bad("R 0\nX 5\n");
    CHECK_THROWS_AS(parse_trace(bad), ValidationError);
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_trace(empty), ValidationError);
}

}  // TEST_SUITE
