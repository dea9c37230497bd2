#include "tierperf/power_energy.hpp"

#include <algorithm>

namespace tierperf {

double dynamic_memory_power(const TierTraffic& traffic, const MachineConfig& config) {
    if (traffic.dram_gbps < 0 || traffic.pmm_gbps < 0) {
        throw DomainError("traffic rates must be >= 0");
    }
    const double c_dram = config.power.dram_dynamic_w_per_gbps.interpolate(
        traffic.dram_write_fraction, traffic.nt_store);
    const double c_pmm = config.power.pmm_dynamic_w_per_gbps.interpolate(
        traffic.pmm_write_fraction, traffic.nt_store);

    double dram_term = c_dram * traffic.dram_gbps;
    if (traffic.nt_through_dram_cache) {
        dram_term *= 1.0 + config.power.nt_write_cache_power_surcharge;
    }
    return dram_term + c_pmm * traffic.pmm_gbps;
}

double dynamic_memory_power(double dram_gbps, double pmm_gbps, const WorkloadSpec& spec,
                            const MachineConfig& config) {
    TierTraffic traffic;
    traffic.dram_gbps = dram_gbps;
    traffic.pmm_gbps = pmm_gbps;
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    traffic.dram_write_fraction = w_eff;
    traffic.pmm_write_fraction = w_eff;
    traffic.nt_store = spec.nt_store;
    return dynamic_memory_power(traffic, config);
}

double static_memory_power(int sockets, const MachineConfig& config) {
    if (sockets < 0) throw DomainError("socket count must be >= 0");
    return config.power.static_memory_power_per_socket_w * sockets;
}

double power_efficiency(double bandwidth_gbps, double dynamic_power_w) {
    if (dynamic_power_w <= 0) {
        throw DomainError("power efficiency is undefined at zero dynamic power");
    }
    return bandwidth_gbps / dynamic_power_w;
}

EnergyReport energy_accounting(double runtime_s, const PowerReport& power,
                               std::uint64_t bytes_moved) {
    if (runtime_s <= 0) throw DomainError("runtime must be > 0");
    EnergyReport energy;
    energy.static_j = power.memory_static_w * runtime_s;
    energy.dynamic_j = power.memory_dynamic_w * runtime_s;
    energy.cpu_j = power.cpu_w * runtime_s;
    const double gigabytes = static_cast<double>(bytes_moved) / 1e9;
    energy.per_gigabyte_j = gigabytes > 0 ? energy.total_j() / gigabytes : 0;
    return energy;
}

double cpu_power(double achieved_gflops, const MachineConfig& config,
                 double other_platform_power_w) {
    if (achieved_gflops < 0) throw DomainError("achieved flops must be >= 0");
    const int sockets = config.topology.sockets;
    const double peak = config.mode_options.peak_compute_gflops;
    const double utilization = peak > 0 ? std::min(1.0, achieved_gflops / peak) : 0;
    const double raw = config.power.cpu_static_power_per_socket_w * sockets +
                       config.power.cpu_dynamic_peak_power_per_socket_w * sockets * utilization;
    const double headroom = config.power.platform_power_cap_w - other_platform_power_w;
    return std::clamp(raw, 0.0, std::max(0.0, headroom));
}

}  // namespace tierperf
