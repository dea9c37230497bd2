// Acceptance suite: end-to-end checks of the calibrated models against the
// reference platform's measured behavior. One pass/fail line per criterion.

#include <cmath>
#include <random>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "tierperf/cli.hpp"
#include "tierperf/dram_cache.hpp"
#include "tierperf/engine.hpp"
#include "tierperf/sweeps.hpp"
#include "tierperf/tier_perf.hpp"

using namespace tierperf;

namespace {

int failures = 0;

void report(int criterion, const std::string& description, bool ok,
            const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion,
                description.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Scenario make(ScenarioMode mode, const char* workload, std::uint64_t size = 0) {
    Scenario s;
    s.mode = mode;
    s.workload = preset(workload);
    if (size > 0) s.workload.data_size_bytes = size;
    return s;
}

constexpr std::uint64_t GB = 1'000'000'000ULL;

void criterion_1_eq1_endpoints() {
    const double all_dram = composite_bandwidth({1.0, 0.0}, 204, 78);
    const double all_pmm = composite_bandwidth({0.0, 1.0}, 204, 78);
    const bool ok = std::abs(all_dram - 204.0) <= 1e-9 && std::abs(all_pmm - 78.0) <= 1e-9;
    report(1, "bandwidth composition endpoints are 204 and 78 GB/s", ok,
           fmt(all_dram) + " / " + fmt(all_pmm));
}

void criterion_2_spill_curve() {
    const MachineConfig c = reference_machine();
    bool in_range = true;
    double worst = 0;
    for (std::uint64_t size : {1010ULL * GB, 1100ULL * GB, 1200ULL * GB, 1300ULL * GB,
                               1400ULL * GB, 1540ULL * GB}) {
        const double bw =
            evaluate(make(ScenarioMode::PolicySpill, "accumulate", size), c).bandwidth_gbps;
        if (bw < 76.0 || bw > 97.0) in_range = false;
        worst = bw;
    }
    const double mm_bw =
        evaluate(make(ScenarioMode::MemoryModeTwoSocket, "accumulate", 1280 * GB), c)
            .bandwidth_gbps;
    const double ratio = worst / mm_bw;
    const bool ok = in_range && ratio >= 1.9;
    report(2, "spilling sustains 76-97 GB/s past 1 TB and ~2x Memory mode", ok,
           "1.54 TB: " + fmt(worst) + " GB/s, ratio " + fmt(ratio));
}

void criterion_3_capacity() {
    const MachineConfig c = reference_machine();
    const std::uint64_t spill = capacity_limit(ScenarioMode::PolicySpill, c);
    const std::uint64_t mm = capacity_limit(ScenarioMode::MemoryModeTwoSocket, c);
    const double ratio = static_cast<double>(spill) / static_cast<double>(mm);
    const bool ok = ratio >= 1.20;
    report(3, "spilling supports at least 20% more data than Memory mode", ok,
           fmt(spill / 1e12) + " TB vs " + fmt(mm / 1e12) + " TB, ratio " + fmt(ratio));
}

void criterion_4_write_isolation() {
    const MachineConfig c = reference_machine();
    const std::uint64_t max_size = write_isolation_capacity(preset("stream_copy"), c);
    const double isolation =
        evaluate(make(ScenarioMode::PolicyWriteIsolation, "stream_copy", max_size), c)
            .bandwidth_gbps;
    const double mm =
        evaluate(make(ScenarioMode::MemoryModeTwoSocket, "stream_copy", max_size), c)
            .bandwidth_gbps;
    const double ratio = isolation / mm;
    const bool ok = ratio >= 2.6 && ratio <= 3.6 && std::abs(isolation - 83.0) <= 8.3 &&
                    std::abs(mm - 27.0) <= 2.7;
    report(4, "write isolation reaches ~83 GB/s vs ~27 GB/s in Memory mode", ok,
           fmt(isolation) + " vs " + fmt(mm) + " GB/s, ratio " + fmt(ratio));
}

void criterion_5_latency_table() {
    const MachineConfig c = reference_machine();
    const double dram_seq = access_latency(c, TierKind::Dram, Pattern::Sequential, Locality::Local);
    const double dram_rand = access_latency(c, TierKind::Dram, Pattern::Random, Locality::Local);
    const double pmm_seq = access_latency(c, TierKind::Pmm, Pattern::Sequential, Locality::Local);
    const double pmm_rand = access_latency(c, TierKind::Pmm, Pattern::Random, Locality::Local);
    bool ok = dram_seq == 79.0 && dram_rand == 87.0 && pmm_seq == 174.0 && pmm_rand == 302.0;
    double min_adder = 1e300, max_adder = 0;
    for (TierKind tier : {TierKind::Dram, TierKind::Pmm}) {
        for (Pattern pattern : {Pattern::Sequential, Pattern::Random}) {
            const double adder = access_latency(c, tier, pattern, Locality::Remote) -
                                 access_latency(c, tier, pattern, Locality::Local);
            min_adder = std::min(min_adder, adder);
            max_adder = std::max(max_adder, adder);
        }
    }
    ok = ok && min_adder >= 66.0 && max_adder <= 85.0;
    report(5, "latencies are 79/87/174/302 ns with a 66-85 ns remote adder", ok,
           fmt(dram_seq) + "/" + fmt(dram_rand) + "/" + fmt(pmm_seq) + "/" + fmt(pmm_rand) +
               ", adder " + fmt(min_adder) + ".." + fmt(max_adder));
}

void criterion_6_asymmetry() {
    const MachineConfig c = reference_machine();
    const double read =
        pattern_bandwidth(c, TierKind::Pmm, preset("read_only"), Locality::Local).gbps;
    const double write =
        pattern_bandwidth(c, TierKind::Pmm, preset("write_only"), Locality::Local).gbps;
    const double ratio = read / write;
    const bool ok = std::abs(ratio - 3.22) <= 0.1;
    report(6, "PMM read/write bandwidth asymmetry is ~3.2x", ok,
           fmt(read) + "/" + fmt(write) + " = " + fmt(ratio));
}

void criterion_7_cache_oracle() {
    bool ok = true;
    double worst = 0;
    for (std::uint64_t sets : {1ULL << 10, 1ULL << 12, 1ULL << 14}) {
        for (double ratio : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            CacheConfig cache;
            cache.line_bytes = 64;
            cache.capacity_bytes = sets * 64;
            WorkloadSpec spec = preset("random_read");
            spec.threads = 1;
            spec.data_size_bytes =
                static_cast<std::uint64_t>(ratio * static_cast<double>(cache.capacity_bytes));

            DirectMappedCache sim(cache);
            sim.replay(generate_trace(spec, 17, 6 * sets));  // warm to steady state
            sim.reset_stats();
            sim.replay(generate_trace(spec, 18, 200000));
            const CacheStats stats = sim.stats();
            const double measured =
                static_cast<double>(stats.hits) / static_cast<double>(stats.accesses);
            const double predicted = analytic_hit_rate(spec, cache);
            const double delta = std::abs(measured - predicted);
            worst = std::max(worst, delta);
            if (delta >= 0.02) ok = false;
            if (stats.hits + stats.misses != stats.accesses) ok = false;
            if (stats.dirty_evictions > stats.misses) ok = false;
        }
    }
    // Warm fully-fitting replay hits 100%.
    CacheConfig cache;
    cache.line_bytes = 64;
    cache.capacity_bytes = (1ULL << 12) * 64;
    WorkloadSpec spec = preset("random_read");
    spec.data_size_bytes = cache.capacity_bytes / 2;
    const AccessTrace trace = generate_trace(spec, 5, 100000);
    DirectMappedCache warm(cache);
    warm.replay(trace);
    warm.reset_stats();
    warm.replay(trace);
    if (warm.stats().misses != 0) ok = false;
    report(7, "analytic hit rate matches the exact simulator within 0.02", ok,
           "max |delta| " + fmt(worst));
}

void criterion_8_throttling() {
    const MachineConfig c = reference_machine();
    const WorkloadSpec spec = preset("stream_copy");
    bool ok = true;
    double previous = 1e300;
    for (int i = 0; i < 10; ++i) {
        const double dirty = static_cast<double>(i) / 9.0;
        const double bw = memory_mode_bandwidth(c, spec, 0.5, dirty, 2);
        if (bw > previous + 1e-12) ok = false;
        previous = bw;
    }
    const double full_range = memory_mode_bandwidth(c, spec, 0.5, 0.0, 2) -
                              memory_mode_bandwidth(c, spec, 0.5, 1.0, 2);
    report(8, "read bandwidth never rises with the dirty-eviction fraction", ok,
           "drop over sweep " + fmt(full_range) + " GB/s");
}

void criterion_9_power() {
    const MachineConfig c = reference_machine();
    const double dram_read_power = dynamic_memory_power(104.0, 0.0, preset("read_only"), c);
    const double static_power = static_memory_power(1, c);
    const double dram_read_eff = power_efficiency(104.0, dram_read_power);
    const double pmm_read_eff =
        power_efficiency(39.0, dynamic_memory_power(0.0, 39.0, preset("read_only"), c));
    const double dram_write_eff = power_efficiency(
        45.2, dynamic_memory_power(45.2, 0.0, preset("write_only"), c));
    const double pmm_write_eff = power_efficiency(
        12.1, dynamic_memory_power(0.0, 12.1, preset("write_only"), c));
    const bool ok = std::abs(dram_read_power - 60.0) <= 3.0 && static_power == 38.0 &&
                    pmm_read_eff >= dram_read_eff && pmm_write_eff <= 0.85 * dram_write_eff;
    report(9, "power defaults: 60 W DRAM read, 38 W static, efficiency ordering", ok,
           fmt(dram_read_power) + " W, read eff " + fmt(pmm_read_eff) + " vs " +
               fmt(dram_read_eff) + ", write eff " + fmt(pmm_write_eff) + " vs 0.85*" +
               fmt(dram_write_eff));
}

void criterion_10_sweep_identities() {
    const MachineConfig c = reference_machine();
    const SweepGrid grid = SweepGrid::defaults();
    const SweepResult result = archline(c, grid);

    bool ok = true;
    for (std::size_t di = 0; di < grid.distributions.size(); ++di) {
        const double product =
            result.ridge_flops_per_byte[di] * result.at(di, 0).bandwidth_gbps;
        if (std::abs(product - c.mode_options.peak_compute_gflops) > 1e-9) ok = false;
    }
    const double ridge0 = result.ridge_flops_per_byte[0];
    if (ridge0 < 1.0 || ridge0 > 2.0) ok = false;

    std::size_t two = 0;
    for (std::size_t ai = 0; ai < grid.ai_values.size(); ++ai) {
        if (grid.ai_values[ai] == 2.0) two = ai;
    }
    for (std::size_t di = 1; di < grid.distributions.size(); ++di) {
        std::size_t argmax = 0;
        double best = -1;
        for (std::size_t ai = 0; ai < grid.ai_values.size(); ++ai) {
            if (result.at(di, ai).total_power_w > best) {
                best = result.at(di, ai).total_power_w;
                argmax = ai;
            }
        }
        if (argmax + 1 < two || argmax > two + 1) ok = false;
    }

    const double eff_0 = result.at(0, two).efficiency_gflops_per_j;
    const double eff_10 = result.at(1, two).efficiency_gflops_per_j;
    const double eff_90 = result.at(9, two).efficiency_gflops_per_j;
    const double eff_100 = result.at(10, two).efficiency_gflops_per_j;
    if (!(eff_10 > eff_0 && eff_90 > eff_100)) ok = false;

    report(10, "ridge identity, power peaks at ~2 flops/byte, archline ranking", ok,
           "ridge(0%) " + fmt(ridge0) + ", eff 10%/0% " + fmt(eff_10) + "/" + fmt(eff_0) +
               ", eff 90%/100% " + fmt(eff_90) + "/" + fmt(eff_100));
}

void criterion_11_placement_properties() {
    std::mt19937_64 rng(4242);
    bool ok = true;
    const WorkloadSpec probe = preset("read_only");
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const std::uint64_t block = 1ULL << (20 + trial % 4);
        std::uniform_int_distribution<std::uint64_t> dram_blocks(0, 48);
        std::uniform_int_distribution<std::uint64_t> pmm_blocks(16, 192);
        const std::uint64_t dram_each = dram_blocks(rng) * block;
        const std::uint64_t pmm0 = pmm_blocks(rng) * block;
        const std::uint64_t pmm1 = pmm_blocks(rng) * block;

        MemoryState state;
        state.sockets.resize(2);
        state.sockets[0].dram = {dram_each, dram_each};
        state.sockets[0].pmm = {pmm0, pmm0};
        state.sockets[1].dram = {dram_each, dram_each};
        state.sockets[1].pmm = {pmm1, pmm1};
        const std::uint64_t total = 2 * dram_each + pmm0 + pmm1;
        std::uniform_int_distribution<std::uint64_t> size_blocks(1, total / block);
        const std::uint64_t size = size_blocks(rng) * block;

        MemoryState state2 = state;
        MemoryState replay = state;
        const PlacementMap map = spill_alloc(size, state, block);
        const PlacementMap map2 = spill_alloc(size, state2, block);

        std::uint64_t placed = 0;
        for (const auto& b : map.blocks) placed += b.size_bytes;
        if (placed != size) ok = false;
        if (total - state.total_free() != size) ok = false;

        if (map.blocks.size() != map2.blocks.size()) ok = false;
        for (std::size_t i = 0; ok && i < map.blocks.size(); ++i) {
            if (map.blocks[i].size_bytes != map2.blocks[i].size_bytes ||
                map.blocks[i].socket != map2.blocks[i].socket ||
                map.blocks[i].tier != map2.blocks[i].tier) {
                ok = false;
            }
        }

        for (const auto& b : map.blocks) {
            if (b.tier == TierKind::Pmm &&
                replay.space(b.socket, TierKind::Dram).free_bytes >= b.size_bytes) {
                ok = false;  // spilled while DRAM had room
            }
            replay.space(b.socket, b.tier).free_bytes -= b.size_bytes;
        }

        const std::uint64_t socket_room0 = dram_each + pmm0;
        const std::uint64_t socket_room1 = dram_each + pmm1;
        if (size <= 2 * std::min(socket_room0, socket_room1)) {
            const std::uint64_t on0 = map.bytes_on(0);
            const std::uint64_t on1 = map.bytes_on(1);
            if ((on0 > on1 ? on0 - on1 : on1 - on0) > block) ok = false;
        }

        const double expected =
            std::min(1.0, static_cast<double>(2 * dram_each) / static_cast<double>(size));
        if (traffic_split(map, probe).dram_fraction != expected) ok = false;
    }
    report(11, "1000 randomized spills: conservation, determinism, balance, split", ok,
           ok ? "all cases hold" : "a property failed");
}

void criterion_12_cli_determinism() {
    std::ostringstream out_a, out_b, err;
    const int code_a = cli::run({"sweep", "--kind", "roofline"}, out_a, err);
    const int code_b = cli::run({"sweep", "--kind", "roofline"}, out_b, err);
    const bool ok = code_a == 0 && code_b == 0 && out_a.str() == out_b.str() &&
                    !out_a.str().empty();
    report(12, "repeated roofline sweeps emit byte-identical CSV", ok,
           std::to_string(out_a.str().size()) + " bytes");
}

}  // namespace

int main() {
    criterion_1_eq1_endpoints();
    criterion_2_spill_curve();
    criterion_3_capacity();
    criterion_4_write_isolation();
    criterion_5_latency_table();
    criterion_6_asymmetry();
    criterion_7_cache_oracle();
    criterion_8_throttling();
    criterion_9_power();
    criterion_10_sweep_identities();
    criterion_11_placement_properties();
    criterion_12_cli_determinism();

    if (failures == 0) {
        std::printf("all 12 acceptance criteria pass\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
