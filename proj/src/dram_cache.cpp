#include "tierperf/dram_cache.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "tierperf/tier_perf.hpp"

namespace tierperf {

namespace {
constexpr std::uint8_t kValid = 1;
constexpr std::uint8_t kDirty = 2;
}  // namespace

DirectMappedCache::DirectMappedCache(const CacheConfig& config) : sets_(config.sets()) {
    if (sets_ < 1) throw ValidationError("cache must have at least one set");
    tags_.assign(sets_, 0);
    flags_.assign(sets_, 0);
}

void DirectMappedCache::access(std::uint64_t line, AccessKind kind) {
    const std::uint64_t set = line % sets_;
    const std::uint64_t tag = line / sets_;
    ++stats_.accesses;

    std::uint8_t& flag = flags_[set];
    if ((flag & kValid) && tags_[set] == tag) {
        ++stats_.hits;
    } else {
        ++stats_.misses;
        if ((flag & kValid) && (flag & kDirty)) ++stats_.dirty_evictions;
        tags_[set] = tag;
        flag = kValid;
    }
    if (kind == AccessKind::Write) flag |= kDirty;
}

void DirectMappedCache::replay(const AccessTrace& trace) {
    for (const AccessEvent& event : trace.events) access(event.line, event.kind);
}

CacheStats trace_sim(const AccessTrace& trace, const CacheConfig& config) {
    if (trace.events.empty()) throw ValidationError("trace must be non-empty");
    DirectMappedCache cache(config);
    cache.replay(trace);
    return cache.stats();
}

double analytic_hit_rate(const WorkloadSpec& spec, const CacheConfig& cache,
                         double conflict_alpha) {
    validate(spec);
    if (cache.sets() < 1) throw ValidationError("cache must have at least one set");

    if (spec.data_size_bytes <= cache.capacity_bytes) {
        const double t = static_cast<double>(spec.threads);
        return 1.0 - conflict_alpha * (t - 1.0) / t;
    }
    if (spec.pattern == Pattern::Random) {
        return static_cast<double>(cache.capacity_bytes) /
               static_cast<double>(spec.data_size_bytes);
    }
    return 0.0;  // streaming beyond capacity: no reuse at line granularity
}

double memory_mode_bandwidth(const MachineConfig& config, const WorkloadSpec& spec,
                             double hit_rate, double dirty_fraction, int sockets) {
    if (hit_rate < 0 || hit_rate > 1) throw DomainError("hit_rate must lie in [0, 1]");
    if (dirty_fraction < 0 || dirty_fraction > 1) {
        throw DomainError("dirty_fraction must lie in [0, 1]");
    }
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);

    if (spec.nt_store && spec.write_fraction() > 0) {
        // NT stores forfeit the DRAM write buffering; the cache does
        // read-modify-write work internally and application bandwidth drops.
        const double dram_nt = mix_bandwidth(config, TierKind::Dram, w_eff, true, sockets);
        return config.mode_options.nt_dram_cache_bw_factor * dram_nt;
    }

    const double bw_dram = mix_bandwidth(config, TierKind::Dram, w_eff, false, sockets);
    const double bw_pmm_read = mix_bandwidth(config, TierKind::Pmm, 0.0, false, sockets);
    const double bw_pmm_write = mix_bandwidth(config, TierKind::Pmm, 1.0, false, sockets);

    const double hit_time = hit_rate / bw_dram;
    const double miss_time =
        (1.0 - hit_rate) * (1.0 / bw_pmm_read + dirty_fraction / bw_pmm_write);
    return 1.0 / (hit_time + miss_time);
}

MemoryModePerf memory_mode_perf(const WorkloadSpec& spec, const MachineConfig& config,
                                int sockets) {
    validate(spec);
    if (sockets != 1 && sockets != 2) {
        throw DomainError("memory_mode_perf supports 1 or 2 sockets");
    }

    CacheConfig cache;
    cache.capacity_bytes = sockets == 2 ? config.topology.dram_total_bytes()
                                        : config.topology.dram_per_socket_bytes();
    cache.line_bytes = config.tiers.cache_line_bytes;

    MemoryModePerf perf;
    perf.hit_rate = analytic_hit_rate(spec, cache, config.mode_options.cache_conflict_alpha);
    perf.dirty_fraction = spec.write_fraction();

    perf.bandwidth_gbps =
        memory_mode_bandwidth(config, spec, perf.hit_rate, perf.dirty_fraction, sockets);
    if (spec.data_size_bytes > cache.capacity_bytes) {
        const double platform_cap =
            config.mode_options.memory_mode_optimization == MemoryModeOpt::Bandwidth
                ? config.mode_options.large_size_bandwidth_opt_gbps
                : config.mode_options.large_size_latency_opt_gbps;
        perf.bandwidth_gbps = std::min(perf.bandwidth_gbps, platform_cap * sockets / 2.0);
    }

    // Unloaded latency: a single dependency chain sees no thread conflicts.
    WorkloadSpec unloaded = spec;
    unloaded.threads = 1;
    const double h_lat =
        analytic_hit_rate(unloaded, cache, config.mode_options.cache_conflict_alpha);
    const double l_dram = access_latency(config, TierKind::Dram, spec.pattern, Locality::Local);
    const double l_pmm = access_latency(config, TierKind::Pmm, spec.pattern, Locality::Local);
    const double l_fill = config.mode_options.fill_latency_factor * l_dram;
    perf.latency_ns = h_lat * l_dram + (1.0 - h_lat) * (l_pmm + l_fill);
    return perf;
}

AccessTrace parse_trace(std::istream& in, std::uint32_t line_bytes) {
    AccessTrace trace;
    trace.line_bytes = line_bytes;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string kind;
        std::uint64_t index = 0;
        if (!(fields >> kind >> index) || (kind != "R" && kind != "W")) {
            throw ValidationError("trace line " + std::to_string(lineno) +
                                  ": expected 'R <index>' or 'W <index>'");
        }
        trace.events.push_back({index, kind == "R" ? AccessKind::Read : AccessKind::Write});
    }
    if (trace.events.empty()) throw ValidationError("trace must be non-empty");
    return trace;
}

}  // namespace tierperf
