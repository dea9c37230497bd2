#pragma once

#include <cstdint>

#include "tierperf/machine_config.hpp"
#include "tierperf/workload.hpp"

namespace tierperf {

struct PowerReport {
    double memory_static_w = 0;
    double memory_dynamic_w = 0;
    double cpu_w = 0;

    double total_w() const { return memory_static_w + memory_dynamic_w + cpu_w; }
};

struct EnergyReport {
    double static_j = 0;
    double dynamic_j = 0;
    double cpu_j = 0;
    double per_gigabyte_j = 0;

    double total_j() const { return static_j + dynamic_j + cpu_j; }
};

/// Media traffic per tier plus the information needed to pick the per-mix
/// dynamic-power coefficients. Traffic is what the DIMMs actually move,
/// which can exceed application bandwidth (cache fills, write-backs,
/// read-modify-write inside the DRAM cache).
struct TierTraffic {
    double dram_gbps = 0;
    double pmm_gbps = 0;
    double dram_write_fraction = 0;
    double pmm_write_fraction = 0;
    bool nt_store = false;
    bool nt_through_dram_cache = false;  // adds the NT surcharge to the DRAM term
};

/// P = c_dram(mix) * dram traffic + c_pmm(mix) * pmm traffic.
double dynamic_memory_power(const TierTraffic& traffic, const MachineConfig& config);

/// Convenience overload: both tiers at the workload's own mix.
double dynamic_memory_power(double dram_gbps, double pmm_gbps, const WorkloadSpec& spec,
                            const MachineConfig& config);

/// Idle-socket memory power; constant with respect to traffic.
double static_memory_power(int sockets, const MachineConfig& config);

/// Bandwidth per watt of dynamic memory power. Throws DomainError at zero power.
double power_efficiency(double bandwidth_gbps, double dynamic_power_w);

/// Component energies are component powers times runtime.
EnergyReport energy_accounting(double runtime_s, const PowerReport& power,
                               std::uint64_t bytes_moved);

/// Affine CPU model: static plus dynamic share proportional to achieved
/// flops, clamped so the platform total stays at or under the power cap.
double cpu_power(double achieved_gflops, const MachineConfig& config,
                 double other_platform_power_w = 0);

}  // namespace tierperf
