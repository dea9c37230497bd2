#pragma once

#include <string>
#include <vector>

#include "tierperf/machine_config.hpp"

namespace tierperf {

enum class SweepKind { Roofline, Powerline, Archline };

const char* to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

/// Arithmetic intensities crossed with PMM traffic fractions. The sweep
/// studies read traffic only.
struct SweepGrid {
    std::vector<double> ai_values;      // flops per byte, strictly increasing
    std::vector<double> distributions;  // PMM fraction, strictly increasing

    /// Powers of two from 2^-3 to 2^6, distributions 0%..100% in 10% steps.
    static SweepGrid defaults();
};

void validate(const SweepGrid& grid);

struct SweepPoint {
    double ai = 0;
    double pmm_fraction = 0;
    double bandwidth_gbps = 0;        // composed two-socket read bandwidth
    double attainable_gflops = 0;     // min(peak_compute, ai * bandwidth)
    double sustained_gflops = 0;      // attainable throttled by the power cap
    double memory_power_w = 0;        // static + dynamic, both sockets
    double cpu_power_w = 0;
    double total_power_w = 0;         // clamped at the platform cap
    double efficiency_gflops_per_j = 0;  // sustained / total power
};

struct SweepResult {
    std::vector<SweepPoint> points;   // sorted by (distribution, ai)
    std::vector<double> ridge_flops_per_byte;  // per distribution

    const SweepPoint& at(std::size_t dist_index, std::size_t ai_index) const;
    std::size_t ai_count = 0;
};

/// Attainable-performance plane over the grid.
SweepResult roofline(const MachineConfig& config, const SweepGrid& grid);
/// Total platform power plane; nonzero-PMM curves peak near the ridge.
SweepResult powerline(const MachineConfig& config, const SweepGrid& grid);
/// Energy-efficiency plane (flops per joule).
SweepResult archline(const MachineConfig& config, const SweepGrid& grid);

/// `ai,distribution_pmm,perf_gflops,power_w,eff_gflops_per_j`, one row per
/// grid point, 6 significant digits; byte-identical across invocations.
std::string to_csv(const SweepResult& result);

/// Simple static line chart of the requested plane.
std::string to_svg(const SweepResult& result, SweepKind kind);

/// Parses {"ai_values": [...], "distributions": [...]} with defaults.
SweepGrid grid_from_json(const std::string& json_text);

}  // namespace tierperf
