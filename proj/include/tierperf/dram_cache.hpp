#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tierperf/machine_config.hpp"
#include "tierperf/workload.hpp"

namespace tierperf {

/// Memory mode turns DRAM into a direct-mapped write-back cache in front of
/// PMM; it can only cache accesses to NVDIMMs behind the same controllers.
struct CacheConfig {
    std::uint64_t capacity_bytes = 0;
    std::uint32_t line_bytes = 64;
    bool socket_local_only = true;

    std::uint64_t sets() const { return capacity_bytes / line_bytes; }
};

struct CacheStats {
    std::uint64_t accesses = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t dirty_evictions = 0;
};

/// Exact direct-mapped write-back simulator; cold start, set = line mod sets.
/// Mutable state: single-threaded per instance.
class DirectMappedCache {
public:
    explicit DirectMappedCache(const CacheConfig& config);

    void access(std::uint64_t line, AccessKind kind);
    void replay(const AccessTrace& trace);

    const CacheStats& stats() const { return stats_; }
    void reset_stats() { stats_ = CacheStats{}; }

private:
    std::uint64_t sets_;
    std::vector<std::uint64_t> tags_;
    std::vector<std::uint8_t> flags_;  // bit 0 valid, bit 1 dirty
    CacheStats stats_;
};

/// One-shot exact simulation of a trace against a cold cache.
CacheStats trace_sim(const AccessTrace& trace, const CacheConfig& config);

/// Steady-state hit rate model: fits-in-cache workloads lose
/// alpha*(threads-1)/threads to multi-thread set conflicts; uniform random
/// over a larger footprint hits with probability capacity/data; streaming
/// over a larger footprint has no line-granular reuse.
double analytic_hit_rate(const WorkloadSpec& spec, const CacheConfig& cache,
                         double conflict_alpha = 0.1);

struct MemoryModePerf {
    double latency_ns = 0;
    double bandwidth_gbps = 0;
    double hit_rate = 0;
    double dirty_fraction = 0;
};

/// Bandwidth blend of the hit and miss streams. A miss costs a PMM line
/// fetch; a miss whose direct-mapped victim is dirty first writes the victim
/// back to PMM, serialized ahead of the fetch (the throttling effect).
double memory_mode_bandwidth(const MachineConfig& config, const WorkloadSpec& spec,
                             double hit_rate, double dirty_fraction, int sockets = 2);

/// Latency and bandwidth of Memory mode for a workload, on one socket or the
/// whole platform. Applies the large-footprint optimization-mode cap and the
/// NT-store penalty. Latency is unloaded (single dependency chain).
MemoryModePerf memory_mode_perf(const WorkloadSpec& spec, const MachineConfig& config,
                                int sockets = 2);

/// Reads `R <index>` / `W <index>` lines; throws ValidationError on garbage.
AccessTrace parse_trace(std::istream& in, std::uint32_t line_bytes = 64);

}  // namespace tierperf
