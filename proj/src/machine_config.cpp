#include "tierperf/machine_config.hpp"

#include <array>
#include <cmath>
#include <utility>

#include <json.hpp>

namespace tierperf {

using ordered_json = nlohmann::ordered_json;

double MixTable::at(MixPoint p) const {
    switch (p) {
        case MixPoint::ReadOnly: return read_only;
        case MixPoint::Mix3R1W: return mix_3r1w;
        case MixPoint::Mix2R1W: return mix_2r1w;
        case MixPoint::Mix1R1W: return mix_1r1w;
        case MixPoint::WriteOnly: return write_only;
        case MixPoint::NtWriteOnly: return nt_write_only;
    }
    return 0;
}

double MixTable::interpolate(double write_fraction, bool nt) const {
    if (write_fraction < 0 || write_fraction > 1) {
        throw DomainError("write fraction must lie in [0, 1]");
    }
    const double w_anchor = nt ? nt_write_only : write_only;
    const std::array<std::pair<double, double>, 5> points{{
        {0.0, read_only},
        {0.25, mix_3r1w},
        {1.0 / 3.0, mix_2r1w},
        {0.5, mix_1r1w},
        {1.0, w_anchor},
    }};
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (write_fraction <= points[i].first) {
            const auto& [x0, y0] = points[i - 1];
            const auto& [x1, y1] = points[i];
            const double t = (write_fraction - x0) / (x1 - x0);
            return y0 + t * (y1 - y0);
        }
    }
    return w_anchor;
}

double LatencyTable::local(TierKind tier, Pattern pattern) const {
    if (tier == TierKind::Dram) {
        return pattern == Pattern::Sequential ? dram_sequential : dram_random;
    }
    return pattern == Pattern::Sequential ? pmm_sequential : pmm_random;
}

double LatencyTable::remote(TierKind tier, Pattern pattern) const {
    if (tier == TierKind::Dram) {
        return pattern == Pattern::Sequential ? dram_sequential_remote : dram_random_remote;
    }
    return pattern == Pattern::Sequential ? pmm_sequential_remote : pmm_random_remote;
}

std::uint64_t metadata_overhead(std::uint64_t pmm_bytes) {
    constexpr std::uint64_t page_bytes = 4096;
    constexpr std::uint64_t per_page_metadata = 64;
    return pmm_bytes / page_bytes * per_page_metadata;
}

std::uint64_t MachineConfig::metadata_bytes() const {
    return metadata_overhead(topology.pmm_total_bytes());
}

std::uint64_t MachineConfig::usable_dram_bytes() const {
    const std::uint64_t dram = topology.dram_total_bytes();
    const std::uint64_t meta = metadata_bytes();
    return dram > meta ? dram - meta : 0;
}

std::uint64_t MachineConfig::usable_dram_per_socket_bytes() const {
    return usable_dram_bytes() / static_cast<std::uint64_t>(topology.sockets);
}

double MachineConfig::peak_bandwidth_gbps(TierKind tier, MixPoint mix) const {
    return tier == TierKind::Dram ? tiers.dram_peak_gbps.at(mix) : tiers.pmm_peak_gbps.at(mix);
}

MachineConfig reference_machine() {
    return MachineConfig{};
}

const char* to_string(TierKind tier) {
    return tier == TierKind::Dram ? "dram" : "pmm";
}

const char* to_string(Pattern pattern) {
    return pattern == Pattern::Sequential ? "sequential" : "random";
}

const char* to_string(Locality locality) {
    return locality == Locality::Local ? "local" : "remote";
}

namespace {

void require(bool ok, const std::string& constraint) {
    if (!ok) throw ValidationError("config invariant violated: " + constraint);
}

ordered_json mix_to_json(const MixTable& t) {
    return ordered_json{{"read_only", t.read_only},
                        {"mix_3r1w", t.mix_3r1w},
                        {"mix_2r1w", t.mix_2r1w},
                        {"mix_1r1w", t.mix_1r1w},
                        {"write_only", t.write_only},
                        {"nt_write_only", t.nt_write_only}};
}

class FieldReader {
public:
    FieldReader(const ordered_json& node, std::string path)
        : node_(&node), path_(std::move(path)) {}

    bool has(const char* key) const { return node_->contains(key); }

    const ordered_json& child(const char* key) const { return (*node_)[key]; }

    template <typename T>
    void get(const char* key, T& out) const {
        if (!node_->contains(key)) return;
        try {
            out = (*node_)[key].get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ValidationError("field '" + path_ + key + "' has the wrong type");
        }
    }

    void get_mix(const char* key, MixTable& out) const {
        if (!node_->contains(key)) return;
        FieldReader sub(child(key), path_ + key + ".");
        sub.get("read_only", out.read_only);
        sub.get("mix_3r1w", out.mix_3r1w);
        sub.get("mix_2r1w", out.mix_2r1w);
        sub.get("mix_1r1w", out.mix_1r1w);
        sub.get("write_only", out.write_only);
        sub.get("nt_write_only", out.nt_write_only);
    }

    FieldReader sub(const char* key) const {
        return FieldReader(child(key), path_ + key + ".");
    }

private:
    const ordered_json* node_;
    std::string path_;
};

}  // namespace

void validate(const MachineConfig& c) {
    const auto& topo = c.topology;
    require(topo.sockets >= 1, "topology.sockets >= 1");
    require(topo.controllers_per_socket >= 1, "topology.controllers_per_socket >= 1");
    require(topo.channels_per_controller >= 1, "topology.channels_per_controller >= 1");
    require(topo.cores_per_socket >= 1, "topology.cores_per_socket >= 1");
    require(topo.channel_transfer_gts > 0, "topology.channel_transfer_gts > 0");
    require(topo.dram_dimm_bytes > 0, "topology.dram_dimm_bytes > 0");
    require(topo.nvdimm_bytes > 0, "topology.nvdimm_bytes > 0");
    require(topo.core_frequency_ghz > 0, "topology.core_frequency_ghz > 0");
    require(c.usable_dram_bytes() > 0, "usable DRAM after namespace metadata > 0");

    const auto& lat = c.tiers.latency_ns;
    require(lat.dram_sequential > 0 && lat.dram_random > 0 && lat.pmm_sequential > 0 &&
                lat.pmm_random > 0,
            "local latencies > 0");
    for (TierKind tier : {TierKind::Dram, TierKind::Pmm}) {
        for (Pattern pattern : {Pattern::Sequential, Pattern::Random}) {
            if (lat.remote(tier, pattern) < lat.local(tier, pattern)) {
                throw ValidationError(std::string("remote latency must be >= local (") +
                                      to_string(tier) + " " + to_string(pattern) + ")");
            }
        }
    }
    for (Pattern pattern : {Pattern::Sequential, Pattern::Random}) {
        for (Locality loc : {Locality::Local, Locality::Remote}) {
            const double d = loc == Locality::Local ? lat.local(TierKind::Dram, pattern)
                                                    : lat.remote(TierKind::Dram, pattern);
            const double p = loc == Locality::Local ? lat.local(TierKind::Pmm, pattern)
                                                    : lat.remote(TierKind::Pmm, pattern);
            if (p < d) {
                throw ValidationError(std::string("PMM latency must be >= DRAM latency (") +
                                      to_string(pattern) + " " + to_string(loc) + ")");
            }
        }
    }
    require(lat.pmm_random >= lat.pmm_sequential, "PMM random latency >= sequential");
    require(lat.pmm_random_remote >= lat.pmm_sequential_remote,
            "remote PMM random latency >= sequential");
    require(c.tiers.remote_latency_adder_ns >= 0, "tiers.remote_latency_adder_ns >= 0");

    for (MixPoint mix : {MixPoint::ReadOnly, MixPoint::Mix3R1W, MixPoint::Mix2R1W,
                         MixPoint::Mix1R1W, MixPoint::WriteOnly, MixPoint::NtWriteOnly}) {
        require(c.tiers.dram_peak_gbps.at(mix) > 0, "DRAM peak bandwidths > 0");
        require(c.tiers.pmm_peak_gbps.at(mix) > 0, "PMM peak bandwidths > 0");
        require(c.power.dram_dynamic_w_per_gbps.at(mix) >= 0, "DRAM power coefficients >= 0");
        require(c.power.pmm_dynamic_w_per_gbps.at(mix) >= 0, "PMM power coefficients >= 0");
    }
    require(c.tiers.dram_single_thread_divisor > 0, "tiers.single_thread_divisor.dram > 0");
    require(c.tiers.pmm_single_thread_divisor > 0, "tiers.single_thread_divisor.pmm > 0");
    require(c.tiers.numa_bandwidth_factor > 0 && c.tiers.numa_bandwidth_factor <= 1,
            "tiers.numa_bandwidth_factor in (0, 1]");
    require(c.tiers.dual_socket_read_peak_dram_gbps > 0, "dual-socket DRAM read peak > 0");
    require(c.tiers.dual_socket_read_peak_pmm_gbps > 0, "dual-socket PMM read peak > 0");
    require(c.tiers.pmm_dual_socket_write_scale > 0, "tiers.pmm_dual_socket_write_scale > 0");
    require(c.tiers.remote_collapse.onset_threads >= 1, "remote_collapse.onset_threads >= 1");
    require(c.tiers.remote_collapse.floor_gbps > 0, "remote_collapse.floor_gbps > 0");
    require(c.tiers.cache_line_bytes > 0, "tiers.cache_line_bytes > 0");
    require(c.tiers.media_line_bytes > 0 &&
                c.tiers.media_line_bytes % c.tiers.cache_line_bytes == 0,
            "media_line_bytes is a positive multiple of cache_line_bytes");

    require(c.power.static_memory_power_per_socket_w >= 0,
            "power.static_memory_power_per_socket >= 0");
    require(c.power.nt_write_cache_power_surcharge >= 0,
            "power.nt_write_cache_power_surcharge >= 0");
    require(c.power.cpu_static_power_per_socket_w >= 0, "power.cpu_static_power_per_socket >= 0");
    require(c.power.cpu_dynamic_peak_power_per_socket_w >= 0,
            "power.cpu_dynamic_peak_power_per_socket >= 0");
    require(c.power.platform_power_cap_w > 0, "power.platform_power_cap > 0");

    const auto& mo = c.mode_options;
    require(mo.large_size_bandwidth_opt_gbps > 0, "mode_options large-size bandwidth > 0");
    require(mo.large_size_latency_opt_gbps > 0, "mode_options large-size latency-opt bandwidth > 0");
    require(mo.cache_conflict_alpha >= 0 && mo.cache_conflict_alpha <= 1,
            "mode_options.cache_conflict_alpha in [0, 1]");
    require(mo.fill_latency_factor >= 0, "mode_options.fill_latency_factor >= 0");
    require(mo.nt_dram_cache_bw_factor > 0 && mo.nt_dram_cache_bw_factor <= 1,
            "mode_options.nt_dram_cache_bandwidth_factor in (0, 1]");
    require(mo.memory_mode_pmm_fraction > 0 && mo.memory_mode_pmm_fraction <= 1,
            "mode_options.memory_mode_pmm_fraction in (0, 1]");
    require(mo.app_direct_pmm_fraction > 0 && mo.app_direct_pmm_fraction <= 1,
            "mode_options.app_direct_pmm_fraction in (0, 1]");
    require(mo.peak_compute_gflops > 0, "mode_options.peak_compute_gflops > 0");
    require(mo.block_size_bytes > 0, "mode_options.block_size_bytes > 0");
    require(mo.write_intensity_threshold >= 0 && mo.write_intensity_threshold <= 1,
            "mode_options.write_intensity_threshold in [0, 1]");
}

std::string serialize_config(const MachineConfig& c) {
    ordered_json j;
    j["topology"] = ordered_json{
        {"sockets", c.topology.sockets},
        {"controllers_per_socket", c.topology.controllers_per_socket},
        {"channels_per_controller", c.topology.channels_per_controller},
        {"channel_transfer_gts", c.topology.channel_transfer_gts},
        {"dram_dimm_bytes", c.topology.dram_dimm_bytes},
        {"nvdimm_bytes", c.topology.nvdimm_bytes},
        {"cores_per_socket", c.topology.cores_per_socket},
        {"core_frequency_ghz", c.topology.core_frequency_ghz},
    };
    const auto& lat = c.tiers.latency_ns;
    j["tiers"] = ordered_json{
        {"latency_ns",
         ordered_json{{"dram",
                       ordered_json{{"sequential", lat.dram_sequential},
                                    {"random", lat.dram_random},
                                    {"remote_sequential", lat.dram_sequential_remote},
                                    {"remote_random", lat.dram_random_remote}}},
                      {"pmm",
                       ordered_json{{"sequential", lat.pmm_sequential},
                                    {"random", lat.pmm_random},
                                    {"remote_sequential", lat.pmm_sequential_remote},
                                    {"remote_random", lat.pmm_random_remote}}}}},
        {"remote_latency_adder_ns", c.tiers.remote_latency_adder_ns},
        {"peak_bandwidth_gbps",
         ordered_json{{"dram", mix_to_json(c.tiers.dram_peak_gbps)},
                      {"pmm", mix_to_json(c.tiers.pmm_peak_gbps)}}},
        {"single_thread_divisor",
         ordered_json{{"dram", c.tiers.dram_single_thread_divisor},
                      {"pmm", c.tiers.pmm_single_thread_divisor}}},
        {"numa_bandwidth_factor", c.tiers.numa_bandwidth_factor},
        {"dual_socket_read_peak_gbps",
         ordered_json{{"dram", c.tiers.dual_socket_read_peak_dram_gbps},
                      {"pmm", c.tiers.dual_socket_read_peak_pmm_gbps}}},
        {"pmm_dual_socket_write_scale", c.tiers.pmm_dual_socket_write_scale},
        {"remote_collapse",
         ordered_json{{"onset_threads", c.tiers.remote_collapse.onset_threads},
                      {"floor_gbps", c.tiers.remote_collapse.floor_gbps}}},
        {"media_line_bytes", c.tiers.media_line_bytes},
        {"cache_line_bytes", c.tiers.cache_line_bytes},
    };
    j["power"] = ordered_json{
        {"static_memory_power_per_socket", c.power.static_memory_power_per_socket_w},
        {"dram_dynamic_w_per_gbps", mix_to_json(c.power.dram_dynamic_w_per_gbps)},
        {"pmm_dynamic_w_per_gbps", mix_to_json(c.power.pmm_dynamic_w_per_gbps)},
        {"nt_write_cache_power_surcharge", c.power.nt_write_cache_power_surcharge},
        {"cpu_static_power_per_socket", c.power.cpu_static_power_per_socket_w},
        {"cpu_dynamic_peak_power_per_socket", c.power.cpu_dynamic_peak_power_per_socket_w},
        {"platform_power_cap", c.power.platform_power_cap_w},
    };
    j["mode_options"] = ordered_json{
        {"memory_mode_optimization",
         c.mode_options.memory_mode_optimization == MemoryModeOpt::Bandwidth ? "bandwidth"
                                                                             : "latency"},
        {"memory_mode_large_size_bandwidth",
         ordered_json{{"bandwidth_opt", c.mode_options.large_size_bandwidth_opt_gbps},
                      {"latency_opt", c.mode_options.large_size_latency_opt_gbps}}},
        {"cache_conflict_alpha", c.mode_options.cache_conflict_alpha},
        {"fill_latency_factor", c.mode_options.fill_latency_factor},
        {"nt_dram_cache_bandwidth_factor", c.mode_options.nt_dram_cache_bw_factor},
        {"memory_mode_pmm_fraction", c.mode_options.memory_mode_pmm_fraction},
        {"app_direct_pmm_fraction", c.mode_options.app_direct_pmm_fraction},
        {"peak_compute_gflops", c.mode_options.peak_compute_gflops},
        {"block_size_bytes", c.mode_options.block_size_bytes},
        {"write_intensity_threshold", c.mode_options.write_intensity_threshold},
    };
    return j.dump(2) + "\n";
}

MachineConfig load_config(const std::string& json_text) {
    MachineConfig c = reference_machine();

    std::string text = json_text;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) text = "{}";

    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config document must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "topology" && key != "tiers" && key != "power" && key != "mode_options") {
            throw ValidationError("unknown top-level config key '" + key + "'");
        }
    }

    FieldReader root(doc, "");
    if (root.has("topology")) {
        FieldReader topo = root.sub("topology");
        topo.get("sockets", c.topology.sockets);
        topo.get("controllers_per_socket", c.topology.controllers_per_socket);
        topo.get("channels_per_controller", c.topology.channels_per_controller);
        topo.get("channel_transfer_gts", c.topology.channel_transfer_gts);
        topo.get("dram_dimm_bytes", c.topology.dram_dimm_bytes);
        topo.get("nvdimm_bytes", c.topology.nvdimm_bytes);
        topo.get("cores_per_socket", c.topology.cores_per_socket);
        topo.get("core_frequency_ghz", c.topology.core_frequency_ghz);
    }
    if (root.has("tiers")) {
        FieldReader tiers = root.sub("tiers");
        tiers.get("remote_latency_adder_ns", c.tiers.remote_latency_adder_ns);
        // Remote latencies default to local + adder unless given explicitly.
        bool dram_seq_remote_set = false, dram_rand_remote_set = false;
        bool pmm_seq_remote_set = false, pmm_rand_remote_set = false;
        if (tiers.has("latency_ns")) {
            FieldReader lat = tiers.sub("latency_ns");
            if (lat.has("dram")) {
                FieldReader d = lat.sub("dram");
                d.get("sequential", c.tiers.latency_ns.dram_sequential);
                d.get("random", c.tiers.latency_ns.dram_random);
                dram_seq_remote_set = d.has("remote_sequential");
                dram_rand_remote_set = d.has("remote_random");
                d.get("remote_sequential", c.tiers.latency_ns.dram_sequential_remote);
                d.get("remote_random", c.tiers.latency_ns.dram_random_remote);
            }
            if (lat.has("pmm")) {
                FieldReader p = lat.sub("pmm");
                p.get("sequential", c.tiers.latency_ns.pmm_sequential);
                p.get("random", c.tiers.latency_ns.pmm_random);
                pmm_seq_remote_set = p.has("remote_sequential");
                pmm_rand_remote_set = p.has("remote_random");
                p.get("remote_sequential", c.tiers.latency_ns.pmm_sequential_remote);
                p.get("remote_random", c.tiers.latency_ns.pmm_random_remote);
            }
        }
        const double adder = c.tiers.remote_latency_adder_ns;
        auto& lat = c.tiers.latency_ns;
        if (!dram_seq_remote_set) lat.dram_sequential_remote = lat.dram_sequential + adder;
        if (!dram_rand_remote_set) lat.dram_random_remote = lat.dram_random + adder;
        if (!pmm_seq_remote_set) lat.pmm_sequential_remote = lat.pmm_sequential + adder;
        if (!pmm_rand_remote_set) lat.pmm_random_remote = lat.pmm_random + adder;

        if (tiers.has("peak_bandwidth_gbps")) {
            FieldReader bw = tiers.sub("peak_bandwidth_gbps");
            bw.get_mix("dram", c.tiers.dram_peak_gbps);
            bw.get_mix("pmm", c.tiers.pmm_peak_gbps);
        }
        if (tiers.has("single_thread_divisor")) {
            FieldReader st = tiers.sub("single_thread_divisor");
            st.get("dram", c.tiers.dram_single_thread_divisor);
            st.get("pmm", c.tiers.pmm_single_thread_divisor);
        }
        tiers.get("numa_bandwidth_factor", c.tiers.numa_bandwidth_factor);
        if (tiers.has("dual_socket_read_peak_gbps")) {
            FieldReader ds = tiers.sub("dual_socket_read_peak_gbps");
            ds.get("dram", c.tiers.dual_socket_read_peak_dram_gbps);
            ds.get("pmm", c.tiers.dual_socket_read_peak_pmm_gbps);
        }
        tiers.get("pmm_dual_socket_write_scale", c.tiers.pmm_dual_socket_write_scale);
        if (tiers.has("remote_collapse")) {
            FieldReader rc = tiers.sub("remote_collapse");
            rc.get("onset_threads", c.tiers.remote_collapse.onset_threads);
            rc.get("floor_gbps", c.tiers.remote_collapse.floor_gbps);
        }
        tiers.get("media_line_bytes", c.tiers.media_line_bytes);
        tiers.get("cache_line_bytes", c.tiers.cache_line_bytes);
    }
    if (root.has("power")) {
        FieldReader power = root.sub("power");
        power.get("static_memory_power_per_socket", c.power.static_memory_power_per_socket_w);
        power.get_mix("dram_dynamic_w_per_gbps", c.power.dram_dynamic_w_per_gbps);
        power.get_mix("pmm_dynamic_w_per_gbps", c.power.pmm_dynamic_w_per_gbps);
        power.get("nt_write_cache_power_surcharge", c.power.nt_write_cache_power_surcharge);
        power.get("cpu_static_power_per_socket", c.power.cpu_static_power_per_socket_w);
        power.get("cpu_dynamic_peak_power_per_socket",
                  c.power.cpu_dynamic_peak_power_per_socket_w);
        power.get("platform_power_cap", c.power.platform_power_cap_w);
    }
    if (root.has("mode_options")) {
        FieldReader mo = root.sub("mode_options");
        if (mo.has("memory_mode_optimization")) {
            std::string opt;
            mo.get("memory_mode_optimization", opt);
            if (opt == "bandwidth") {
                c.mode_options.memory_mode_optimization = MemoryModeOpt::Bandwidth;
            } else if (opt == "latency") {
                c.mode_options.memory_mode_optimization = MemoryModeOpt::Latency;
            } else {
                throw ValidationError(
                    "mode_options.memory_mode_optimization must be 'bandwidth' or 'latency'");
            }
        }
        if (mo.has("memory_mode_large_size_bandwidth")) {
            FieldReader ls = mo.sub("memory_mode_large_size_bandwidth");
            ls.get("bandwidth_opt", c.mode_options.large_size_bandwidth_opt_gbps);
            ls.get("latency_opt", c.mode_options.large_size_latency_opt_gbps);
        }
        mo.get("cache_conflict_alpha", c.mode_options.cache_conflict_alpha);
        mo.get("fill_latency_factor", c.mode_options.fill_latency_factor);
        mo.get("nt_dram_cache_bandwidth_factor", c.mode_options.nt_dram_cache_bw_factor);
        mo.get("memory_mode_pmm_fraction", c.mode_options.memory_mode_pmm_fraction);
        mo.get("app_direct_pmm_fraction", c.mode_options.app_direct_pmm_fraction);
        mo.get("peak_compute_gflops", c.mode_options.peak_compute_gflops);
        mo.get("block_size_bytes", c.mode_options.block_size_bytes);
        mo.get("write_intensity_threshold", c.mode_options.write_intensity_threshold);
    }

    validate(c);
    return c;
}

}  // namespace tierperf
