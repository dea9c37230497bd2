#include "tierperf/tier_perf.hpp"

#include <algorithm>
#include <cmath>

namespace tierperf {

void validate(const TrafficSplit& split) {
    if (split.dram_fraction < 0 || split.dram_fraction > 1 || split.pmm_fraction < 0 ||
        split.pmm_fraction > 1) {
        throw ValidationError("traffic split fractions must lie in [0, 1]");
    }
    if (std::abs(split.dram_fraction + split.pmm_fraction - 1.0) > 1e-12) {
        throw ValidationError("traffic split fractions must sum to 1");
    }
}

const char* to_string(BandwidthLimit limit) {
    switch (limit) {
        case BandwidthLimit::TierPeak: return "tier_peak";
        case BandwidthLimit::ThreadScaling: return "thread_scaling";
        case BandwidthLimit::RemoteCollapse: return "remote_collapse";
        case BandwidthLimit::NtWritePenalty: return "nt_write_penalty";
    }
    return "unknown";
}

double composite_bandwidth(const TrafficSplit& split, double bw_dram_gbps,
                           double bw_pmm_gbps) {
    validate(split);
    if (bw_dram_gbps <= 0 || bw_pmm_gbps <= 0) {
        throw DomainError("composite_bandwidth requires positive tier bandwidths");
    }
    // Exact endpoints, free of the double rounding in 1/(1/bw).
    if (split.dram_fraction == 1.0) return bw_dram_gbps;
    if (split.dram_fraction == 0.0) return bw_pmm_gbps;
    return 1.0 / (split.dram_fraction / bw_dram_gbps + split.pmm_fraction / bw_pmm_gbps);
}

TrafficSplit spill_fraction(std::uint64_t data_size_bytes, std::uint64_t dram_capacity_bytes) {
    if (data_size_bytes == 0) throw DomainError("spill_fraction requires data_size > 0");
    const double m = std::min(1.0, static_cast<double>(dram_capacity_bytes) /
                                       static_cast<double>(data_size_bytes));
    return TrafficSplit{m, 1.0 - m};
}

double write_amplification(std::uint32_t touched_bytes, std::uint32_t media_line_bytes) {
    if (touched_bytes < 1 || touched_bytes > media_line_bytes) {
        throw DomainError("touched bytes must lie in [1, media_line_bytes]");
    }
    return static_cast<double>(media_line_bytes) / static_cast<double>(touched_bytes);
}

double access_latency(const MachineConfig& config, TierKind tier, Pattern pattern,
                      Locality locality) {
    const LatencyTable& lat = config.tiers.latency_ns;
    return locality == Locality::Local ? lat.local(tier, pattern) : lat.remote(tier, pattern);
}

double mix_bandwidth(const MachineConfig& config, TierKind tier, double write_fraction,
                     bool nt, int sockets) {
    if (sockets != 1 && sockets != 2) throw DomainError("mix_bandwidth supports 1 or 2 sockets");
    const MixTable& table =
        tier == TierKind::Dram ? config.tiers.dram_peak_gbps : config.tiers.pmm_peak_gbps;
    const double local = table.interpolate(write_fraction, nt);
    if (sockets == 1) return local;

    if (tier == TierKind::Dram) {
        const double scale =
            config.tiers.dual_socket_read_peak_dram_gbps / config.tiers.dram_peak_gbps.read_only;
        // Keep the measured dual-socket read peak exact at the endpoint.
        if (write_fraction == 0.0) return config.tiers.dual_socket_read_peak_dram_gbps;
        return local * scale;
    }
    const double read_scale =
        config.tiers.dual_socket_read_peak_pmm_gbps / config.tiers.pmm_peak_gbps.read_only;
    if (write_fraction == 0.0) return config.tiers.dual_socket_read_peak_pmm_gbps;
    const double scale =
        read_scale + (config.tiers.pmm_dual_socket_write_scale - read_scale) * write_fraction;
    return local * scale;
}

BandwidthEstimate pattern_bandwidth(const MachineConfig& config, TierKind tier,
                                    const WorkloadSpec& spec, Locality locality) {
    validate(spec);
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    double peak = mix_bandwidth(config, tier, w_eff, spec.nt_store, 1);
    const double divisor = tier == TierKind::Dram ? config.tiers.dram_single_thread_divisor
                                                  : config.tiers.pmm_single_thread_divisor;
    double single_thread = peak / divisor;

    if (locality == Locality::Remote) {
        peak *= config.tiers.numa_bandwidth_factor;
        single_thread *= config.tiers.numa_bandwidth_factor;
    }

    auto scaled = [&](int threads) {
        return std::min(static_cast<double>(threads) * single_thread, peak);
    };

    BandwidthEstimate est;
    est.gbps = scaled(spec.threads);
    est.limited_by = est.gbps < peak ? BandwidthLimit::ThreadScaling
                     : (spec.nt_store && w_eff > 0) ? BandwidthLimit::NtWritePenalty
                                                    : BandwidthLimit::TierPeak;

    // Remote PMM writes contend on the inter-socket links: past the onset
    // thread count, bandwidth decays linearly to the floor at one thread
    // per core.
    const RemoteCollapse& collapse = config.tiers.remote_collapse;
    if (tier == TierKind::Pmm && locality == Locality::Remote && w_eff > 0 &&
        spec.threads > collapse.onset_threads) {
        const double at_onset = scaled(collapse.onset_threads);
        if (at_onset > collapse.floor_gbps) {
            const int cores = config.topology.cores_per_socket;
            const double span = static_cast<double>(std::max(1, cores - collapse.onset_threads));
            const double t = std::min(1.0, (spec.threads - collapse.onset_threads) / span);
            est.gbps = at_onset + t * (collapse.floor_gbps - at_onset);
        } else {
            est.gbps = at_onset;
        }
        est.limited_by = BandwidthLimit::RemoteCollapse;
    }
    return est;
}

}  // namespace tierperf
