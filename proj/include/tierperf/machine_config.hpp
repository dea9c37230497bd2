#pragma once

#include <cstdint>
#include <string>

#include "tierperf/errors.hpp"

namespace tierperf {

enum class TierKind { Dram, Pmm };
enum class Pattern { Sequential, Random };
enum class Locality { Local, Remote };
enum class MemoryModeOpt { Bandwidth, Latency };

/// The six read:write mixes the bandwidth and power tables are calibrated at.
enum class MixPoint { ReadOnly, Mix3R1W, Mix2R1W, Mix1R1W, WriteOnly, NtWriteOnly };

/// One value per calibrated mix. Arbitrary write fractions are served by
/// piecewise-linear interpolation between the table points; when `nt` is set
/// the write-only anchor is replaced by the non-temporal one.
struct MixTable {
    double read_only = 0;
    double mix_3r1w = 0;   // write fraction 1/4
    double mix_2r1w = 0;   // write fraction 1/3
    double mix_1r1w = 0;   // write fraction 1/2
    double write_only = 0;
    double nt_write_only = 0;

    double at(MixPoint p) const;
    double interpolate(double write_fraction, bool nt) const;
};

struct SocketTopology {
    int sockets = 2;
    int controllers_per_socket = 2;
    int channels_per_controller = 3;
    double channel_transfer_gts = 2.4;            // giga-transfers per second
    std::uint64_t dram_dimm_bytes = 16'000'000'000ULL;   // per channel
    std::uint64_t nvdimm_bytes = 128'000'000'000ULL;     // per channel
    int cores_per_socket = 24;
    double core_frequency_ghz = 2.4;

    int channels_per_socket() const { return controllers_per_socket * channels_per_controller; }
    int channels_total() const { return channels_per_socket() * sockets; }
    double channel_peak_gbps() const { return channel_transfer_gts * 8.0; }
    double platform_peak_gbps() const { return channel_peak_gbps() * channels_total(); }
    std::uint64_t dram_per_socket_bytes() const {
        return dram_dimm_bytes * static_cast<std::uint64_t>(channels_per_socket());
    }
    std::uint64_t pmm_per_socket_bytes() const {
        return nvdimm_bytes * static_cast<std::uint64_t>(channels_per_socket());
    }
    std::uint64_t dram_total_bytes() const { return dram_per_socket_bytes() * sockets; }
    std::uint64_t pmm_total_bytes() const { return pmm_per_socket_bytes() * sockets; }
};

/// Idle read latencies in nanoseconds. Remote entries default to
/// local + remote_latency_adder_ns when a config document omits them.
struct LatencyTable {
    double dram_sequential = 79;
    double dram_random = 87;
    double pmm_sequential = 174;
    double pmm_random = 302;
    double dram_sequential_remote = 154;
    double dram_random_remote = 162;
    double pmm_sequential_remote = 249;
    double pmm_random_remote = 377;

    double local(TierKind tier, Pattern pattern) const;
    double remote(TierKind tier, Pattern pattern) const;
};

struct RemoteCollapse {
    int onset_threads = 3;     // remote PMM writes degrade beyond this
    double floor_gbps = 1.0;   // bandwidth reached at one thread per core
};

struct TierParams {
    LatencyTable latency_ns;
    double remote_latency_adder_ns = 75;

    // Single-socket peak bandwidths, GB/s (1e9 bytes/s), at one thread per core.
    MixTable dram_peak_gbps{104.0, 98.7, 91.8, 84.9, 45.2, 90.4};
    MixTable pmm_peak_gbps{39.0, 21.6, 15.0, 7.6, 12.1, 12.1};

    // Single-thread bandwidth = peak / divisor; saturation occurs near the
    // thread counts seen on the reference platform.
    double dram_single_thread_divisor = 12;
    double pmm_single_thread_divisor = 10;

    // Remote accesses scale peak and per-thread bandwidth by this factor.
    double numa_bandwidth_factor = 0.55;

    // Measured dual-socket read peaks; not simply 2x the single-socket values.
    double dual_socket_read_peak_dram_gbps = 204;
    double dual_socket_read_peak_pmm_gbps = 78;
    // Write scaling across sockets is poorer for PMM; mixes interpolate.
    double pmm_dual_socket_write_scale = 1.7;

    RemoteCollapse remote_collapse;

    std::uint32_t media_line_bytes = 256;
    std::uint32_t cache_line_bytes = 64;
};

struct PowerParams {
    double static_memory_power_per_socket_w = 38;

    // Dynamic power per GB/s of media traffic, by mix. Derived by dividing
    // the measured per-socket dynamic powers by the peak bandwidths.
    MixTable dram_dynamic_w_per_gbps{60.0 / 104.0, 60.0 / 98.7, 60.0 / 91.8,
                                     60.0 / 84.9,  60.0 / 45.2, 60.0 / 90.4};
    MixTable pmm_dynamic_w_per_gbps{15.3 / 39.0, 8.0 / 21.6,  5.0 / 15.0,
                                    2.0 / 7.6,   19.1 / 12.1, 19.1 / 12.1};

    double nt_write_cache_power_surcharge = 0.13;
    double cpu_static_power_per_socket_w = 142;
    double cpu_dynamic_peak_power_per_socket_w = 20;
    double platform_power_cap_w = 480;
};

struct ModeOptions {
    MemoryModeOpt memory_mode_optimization = MemoryModeOpt::Bandwidth;
    // Dual-socket Memory-mode bandwidth once the data no longer fits in DRAM.
    double large_size_bandwidth_opt_gbps = 40;
    double large_size_latency_opt_gbps = 5;

    double cache_conflict_alpha = 0.1;    // multi-thread conflict loss, fits-in-DRAM
    double fill_latency_factor = 0.3;     // DRAM fill cost as a fraction of DRAM latency
    double nt_dram_cache_bw_factor = 0.47;  // Memory-mode NT-store bandwidth cap

    // App-usable PMM shares; calibrated against the measured capacity limits.
    double memory_mode_pmm_fraction = 5.0 / 6.0;
    double app_direct_pmm_fraction = 343.0 / 384.0;

    double peak_compute_gflops = 408;
    std::uint64_t block_size_bytes = 1ULL << 30;
    double write_intensity_threshold = 0.5;
};

struct MachineConfig {
    SocketTopology topology;
    TierParams tiers;
    PowerParams power;
    ModeOptions mode_options;

    std::uint64_t metadata_bytes() const;
    std::uint64_t usable_dram_bytes() const;
    std::uint64_t usable_dram_per_socket_bytes() const;
    double peak_bandwidth_gbps(TierKind tier, MixPoint mix) const;
};

/// Namespace page metadata: 64 bytes per 4 KiB page of PMM.
std::uint64_t metadata_overhead(std::uint64_t pmm_bytes);

/// The embedded calibration of the reference two-socket DRAM+NVM platform.
MachineConfig reference_machine();

/// Parses a JSON config document; unspecified fields keep reference defaults.
/// Throws ValidationError naming the offending field or constraint.
MachineConfig load_config(const std::string& json_text);

/// Stable-ordered JSON, suitable for golden files; load_config round-trips it.
std::string serialize_config(const MachineConfig& config);

/// Checks invariants (latency ordering, positivity, line-size divisibility).
void validate(const MachineConfig& config);

const char* to_string(TierKind tier);
const char* to_string(Pattern pattern);
const char* to_string(Locality locality);

}  // namespace tierperf
