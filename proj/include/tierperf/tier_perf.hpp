#pragma once

#include <cstdint>

#include "tierperf/machine_config.hpp"
#include "tierperf/workload.hpp"

namespace tierperf {

/// How an allocation's memory traffic divides between the tiers.
struct TrafficSplit {
    double dram_fraction = 1.0;
    double pmm_fraction = 0.0;
};

/// Throws ValidationError unless the fractions are in range and sum to 1
/// within 1e-12.
void validate(const TrafficSplit& split);

enum class BandwidthLimit { TierPeak, ThreadScaling, RemoteCollapse, NtWritePenalty };

struct BandwidthEstimate {
    double gbps = 0;
    BandwidthLimit limited_by = BandwidthLimit::TierPeak;
};

const char* to_string(BandwidthLimit limit);

/// Weighted harmonic composition of the two tiers' bandwidths:
/// 1 / (m/bw_dram + (1-m)/bw_pmm). The endpoints are returned exactly.
double composite_bandwidth(const TrafficSplit& split, double bw_dram_gbps,
                           double bw_pmm_gbps);

/// Traffic split of a spilling allocation, assuming traffic proportional to
/// data size: dram fraction = min(1, dram_capacity / data_size).
TrafficSplit spill_fraction(std::uint64_t data_size_bytes, std::uint64_t dram_capacity_bytes);

/// Full-media-line cost of partial-line writes: media_line / touched bytes.
/// Throws DomainError outside [1, media_line].
double write_amplification(std::uint32_t touched_bytes, std::uint32_t media_line_bytes = 256);

/// Idle read latency lookup; remote values carry the NUMA adder.
double access_latency(const MachineConfig& config, TierKind tier, Pattern pattern,
                      Locality locality);

/// Peak bandwidth of one tier at the given effective write fraction,
/// interpolating the calibrated mix table. sockets must be 1 or 2; the
/// dual-socket value applies the measured cross-socket scaling.
double mix_bandwidth(const MachineConfig& config, TierKind tier, double write_fraction,
                     bool nt, int sockets = 1);

/// Single-socket bandwidth of a workload against one tier: mix interpolation,
/// thread scaling, NUMA penalty, and the remote-PMM write collapse.
BandwidthEstimate pattern_bandwidth(const MachineConfig& config, TierKind tier,
                                    const WorkloadSpec& spec, Locality locality);

}  // namespace tierperf
