#include "tierperf/engine.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "tierperf/format.hpp"
#include "tierperf/tier_perf.hpp"

namespace tierperf {

namespace {

struct ModeName {
    ScenarioMode mode;
    const char* name;
};

constexpr ModeName kModeNames[] = {
    {ScenarioMode::DramLocal, "dram_local"},
    {ScenarioMode::DramRemote, "dram_remote"},
    {ScenarioMode::PmmNumaLocal, "pmm_numa_local"},
    {ScenarioMode::PmmNumaRemote, "pmm_numa_remote"},
    {ScenarioMode::PmmFsdaxLocal, "pmm_fsdax_local"},
    {ScenarioMode::PmmFsdaxRemote, "pmm_fsdax_remote"},
    {ScenarioMode::MemoryModeLocal, "memory_mode_local"},
    {ScenarioMode::MemoryModeRemote, "memory_mode_remote"},
    {ScenarioMode::DramTwoSocket, "dram_two_socket"},
    {ScenarioMode::PmmTwoSocket, "pmm_two_socket"},
    {ScenarioMode::DramPmmInterleave, "dram_pmm_interleave"},
    {ScenarioMode::MemoryModeTwoSocket, "memory_mode_two_socket"},
    {ScenarioMode::PolicySpill, "policy_spill"},
    {ScenarioMode::PolicyWriteIsolation, "policy_write_isolation"},
};

std::uint64_t fraction_of(std::uint64_t bytes, double fraction) {
    return static_cast<std::uint64_t>(
        std::llround(static_cast<double>(bytes) * fraction));
}

}  // namespace

const char* to_string(ScenarioMode mode) {
    for (const auto& entry : kModeNames) {
        if (entry.mode == mode) return entry.name;
    }
    return "unknown";
}

ScenarioMode mode_from_string(const std::string& name) {
    for (const auto& entry : kModeNames) {
        if (name == entry.name) return entry.mode;
    }
    std::string msg = "unknown scenario mode '" + name + "'; valid modes:";
    for (const auto& entry : kModeNames) msg += std::string(" ") + entry.name;
    throw ValidationError(msg);
}

const std::vector<std::string>& mode_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& entry : kModeNames) v.emplace_back(entry.name);
        return v;
    }();
    return names;
}

std::uint64_t capacity_limit(ScenarioMode mode, const MachineConfig& config) {
    const auto& topo = config.topology;
    const std::uint64_t app_direct_total =
        config.usable_dram_bytes() +
        fraction_of(topo.pmm_total_bytes(), config.mode_options.app_direct_pmm_fraction);
    switch (mode) {
        case ScenarioMode::DramLocal:
        case ScenarioMode::DramRemote:
            return topo.dram_per_socket_bytes();
        case ScenarioMode::PmmNumaLocal:
        case ScenarioMode::PmmNumaRemote:
        case ScenarioMode::PmmFsdaxLocal:
        case ScenarioMode::PmmFsdaxRemote:
            return topo.pmm_per_socket_bytes();
        case ScenarioMode::MemoryModeLocal:
        case ScenarioMode::MemoryModeRemote:
            return fraction_of(topo.pmm_per_socket_bytes(),
                               config.mode_options.memory_mode_pmm_fraction);
        case ScenarioMode::DramTwoSocket:
            return config.usable_dram_bytes();
        case ScenarioMode::PmmTwoSocket:
            return topo.pmm_total_bytes();
        case ScenarioMode::MemoryModeTwoSocket:
            return fraction_of(topo.pmm_total_bytes(),
                               config.mode_options.memory_mode_pmm_fraction);
        case ScenarioMode::DramPmmInterleave:
        case ScenarioMode::PolicySpill:
        case ScenarioMode::PolicyWriteIsolation:
            return app_direct_total;
    }
    return 0;
}

std::uint64_t write_isolation_capacity(const WorkloadSpec& workload,
                                       const MachineConfig& config) {
    const std::uint64_t policy_cap = capacity_limit(ScenarioMode::PolicyWriteIsolation, config);
    const double write_share = workload.write_fraction();
    if (write_share <= 0) return policy_cap;
    const std::uint64_t dram_bound = static_cast<std::uint64_t>(
        static_cast<double>(config.usable_dram_bytes()) / write_share);
    return std::min(policy_cap, dram_bound);
}

std::vector<StructureSpec> default_structures(const WorkloadSpec& workload) {
    const std::uint64_t total = workload.data_size_bytes;
    const std::uint64_t read_bytes = fraction_of(total, workload.read_fraction);
    std::vector<StructureSpec> structures;
    if (read_bytes > 0) structures.push_back({"read_set", read_bytes, 0.0});
    if (total > read_bytes) structures.push_back({"write_set", total - read_bytes, 1.0});
    return structures;
}

namespace {

struct Prediction {
    double bandwidth_gbps = 0;
    double latency_ns = 0;
    std::optional<double> hit_rate;
    TierTraffic traffic;
};

/// Two-socket latency blend: threads touch both sockets, half the accesses
/// cross the interconnect.
double two_socket_latency(const MachineConfig& config, TierKind tier, Pattern pattern) {
    return access_latency(config, tier, pattern, Locality::Local) +
           0.5 * config.tiers.remote_latency_adder_ns;
}

double two_socket_bandwidth(const MachineConfig& config, TierKind tier,
                            const WorkloadSpec& spec) {
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    const double peak = mix_bandwidth(config, tier, w_eff, spec.nt_store, 2);
    const double divisor = tier == TierKind::Dram ? config.tiers.dram_single_thread_divisor
                                                  : config.tiers.pmm_single_thread_divisor;
    const double single = mix_bandwidth(config, tier, w_eff, spec.nt_store, 1) / divisor;
    return std::min(static_cast<double>(spec.threads) * single * 2.0, peak);
}

/// Media bytes per application byte on PMM: writes pay full-line
/// amplification.
double pmm_media_factor(const MachineConfig& config, const WorkloadSpec& spec) {
    const double amplification = write_amplification(spec.touched_bytes_per_media_line,
                                                     config.tiers.media_line_bytes);
    return spec.read_fraction + spec.write_fraction() * amplification;
}

Prediction predict_direct(const MachineConfig& config, const WorkloadSpec& spec,
                          TierKind tier, Locality locality) {
    Prediction p;
    p.bandwidth_gbps = pattern_bandwidth(config, tier, spec, locality).gbps;
    p.latency_ns = access_latency(config, tier, spec.pattern, locality);
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    if (tier == TierKind::Dram) {
        p.traffic.dram_gbps = p.bandwidth_gbps;
        p.traffic.dram_write_fraction = spec.write_fraction();
    } else {
        p.traffic.pmm_gbps = p.bandwidth_gbps * pmm_media_factor(config, spec);
        p.traffic.pmm_write_fraction = w_eff;
    }
    p.traffic.nt_store = spec.nt_store;
    return p;
}

Prediction predict_two_socket(const MachineConfig& config, const WorkloadSpec& spec,
                              TierKind tier) {
    Prediction p;
    p.bandwidth_gbps = two_socket_bandwidth(config, tier, spec);
    p.latency_ns = two_socket_latency(config, tier, spec.pattern);
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    if (tier == TierKind::Dram) {
        p.traffic.dram_gbps = p.bandwidth_gbps;
        p.traffic.dram_write_fraction = spec.write_fraction();
    } else {
        p.traffic.pmm_gbps = p.bandwidth_gbps * pmm_media_factor(config, spec);
        p.traffic.pmm_write_fraction = w_eff;
    }
    p.traffic.nt_store = spec.nt_store;
    return p;
}

Prediction predict_memory_mode(const MachineConfig& config, const WorkloadSpec& spec,
                               int sockets) {
    Prediction p;
    const MemoryModePerf mm = memory_mode_perf(spec, config, sockets);
    p.bandwidth_gbps = mm.bandwidth_gbps;
    p.latency_ns = mm.latency_ns;
    p.hit_rate = mm.hit_rate;

    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    const bool nt_writes = spec.nt_store && spec.write_fraction() > 0;
    if (nt_writes) {
        // The DRAM cache absorbs NT stores with internal read-modify-write
        // work; media traffic stays at the cache's own rate.
        p.traffic.dram_gbps = mix_bandwidth(config, TierKind::Dram, w_eff, true, sockets);
        p.traffic.nt_through_dram_cache = true;
    } else {
        p.traffic.dram_gbps = mm.bandwidth_gbps;
    }
    p.traffic.dram_write_fraction = w_eff;
    p.traffic.nt_store = spec.nt_store;

    const double miss = 1.0 - mm.hit_rate;
    const double fills = miss * mm.bandwidth_gbps;
    const double writebacks = miss * mm.dirty_fraction * mm.bandwidth_gbps;
    p.traffic.pmm_gbps = fills + writebacks;
    p.traffic.pmm_write_fraction =
        p.traffic.pmm_gbps > 0 ? writebacks / p.traffic.pmm_gbps : 0.0;
    return p;
}

Prediction predict_memory_mode_remote(const MachineConfig& config, const WorkloadSpec& spec) {
    // Local DRAM cannot cache accesses to the other socket's PMM, so the
    // remote Memory-mode path behaves like uncached remote PMM plus the
    // cache-fill overhead.
    Prediction p;
    p.bandwidth_gbps = pattern_bandwidth(config, TierKind::Pmm, spec, Locality::Remote).gbps;
    const double l_dram = access_latency(config, TierKind::Dram, spec.pattern, Locality::Local);
    p.latency_ns = access_latency(config, TierKind::Pmm, spec.pattern, Locality::Remote) +
                   config.mode_options.fill_latency_factor * l_dram;
    p.hit_rate = 0.0;
    p.traffic.pmm_gbps = p.bandwidth_gbps * pmm_media_factor(config, spec);
    p.traffic.pmm_write_fraction = effective_write_fraction(spec, config.tiers.media_line_bytes);
    p.traffic.nt_store = spec.nt_store;
    return p;
}

Prediction predict_composed(const MachineConfig& config, const WorkloadSpec& spec,
                            const TrafficSplit& split) {
    Prediction p;
    const double w_eff = effective_write_fraction(spec, config.tiers.media_line_bytes);
    const double bw_dram = mix_bandwidth(config, TierKind::Dram, w_eff, spec.nt_store, 2);
    const double bw_pmm = mix_bandwidth(config, TierKind::Pmm, w_eff, spec.nt_store, 2);
    p.bandwidth_gbps = composite_bandwidth(split, bw_dram, bw_pmm);
    p.latency_ns =
        split.dram_fraction * two_socket_latency(config, TierKind::Dram, spec.pattern) +
        split.pmm_fraction * two_socket_latency(config, TierKind::Pmm, spec.pattern);
    p.traffic.dram_gbps = split.dram_fraction * p.bandwidth_gbps;
    p.traffic.pmm_gbps =
        split.pmm_fraction * p.bandwidth_gbps * pmm_media_factor(config, spec);
    p.traffic.dram_write_fraction = spec.write_fraction();
    p.traffic.pmm_write_fraction = w_eff;
    p.traffic.nt_store = spec.nt_store;
    return p;
}

Prediction predict_spill(const MachineConfig& config, const WorkloadSpec& spec) {
    MemoryState state = default_memory_state(config);
    const PlacementMap placement =
        spill_alloc(spec.data_size_bytes, state, config.mode_options.block_size_bytes);
    return predict_composed(config, spec, traffic_split(placement, spec));
}

Prediction predict_write_isolation(const MachineConfig& config, const WorkloadSpec& spec,
                                   const std::vector<StructureSpec>& structures_in) {
    std::vector<StructureSpec> structures =
        structures_in.empty() ? default_structures(spec) : structures_in;
    MemoryState state = default_memory_state(config);
    isolate_writes(structures, state, config.mode_options.write_intensity_threshold);

    // Writes stream against DRAM, reads against the PMM of both sockets.
    const double r = spec.read_fraction;
    const double w = spec.write_fraction();
    const double bw_dram_write = mix_bandwidth(config, TierKind::Dram, 1.0, spec.nt_store, 2);
    const double bw_pmm_read = mix_bandwidth(config, TierKind::Pmm, 0.0, false, 2);

    Prediction p;
    if (w == 0) {
        p.bandwidth_gbps = bw_pmm_read;
    } else if (r == 0) {
        p.bandwidth_gbps = bw_dram_write;
    } else {
        p.bandwidth_gbps = 1.0 / (w / bw_dram_write + r / bw_pmm_read);
    }
    p.latency_ns = r * two_socket_latency(config, TierKind::Pmm, spec.pattern) +
                   w * two_socket_latency(config, TierKind::Dram, spec.pattern);
    p.traffic.dram_gbps = w * p.bandwidth_gbps;
    p.traffic.dram_write_fraction = 1.0;
    p.traffic.pmm_gbps = r * p.bandwidth_gbps;
    p.traffic.pmm_write_fraction = 0.0;
    p.traffic.nt_store = spec.nt_store;
    return p;
}

}  // namespace

EvalReport evaluate(const Scenario& scenario, const MachineConfig& config) {
    const WorkloadSpec& spec = scenario.workload;
    validate(spec);
    if (scenario.passes < 1) throw ValidationError("scenario passes must be >= 1");

    const std::uint64_t limit =
        scenario.mode == ScenarioMode::PolicyWriteIsolation && scenario.structures.empty()
            ? write_isolation_capacity(spec, config)
            : capacity_limit(scenario.mode, config);
    if (spec.data_size_bytes > limit) {
        throw CapacityError("data size " + std::to_string(spec.data_size_bytes) +
                                " bytes exceeds the " + to_string(scenario.mode) +
                                " capacity limit of " + std::to_string(limit) + " bytes",
                            limit, spec.data_size_bytes);
    }

    Prediction p;
    switch (scenario.mode) {
        case ScenarioMode::DramLocal:
            p = predict_direct(config, spec, TierKind::Dram, Locality::Local);
            break;
        case ScenarioMode::DramRemote:
            p = predict_direct(config, spec, TierKind::Dram, Locality::Remote);
            break;
        case ScenarioMode::PmmNumaLocal:
        case ScenarioMode::PmmFsdaxLocal:
            p = predict_direct(config, spec, TierKind::Pmm, Locality::Local);
            break;
        case ScenarioMode::PmmNumaRemote:
        case ScenarioMode::PmmFsdaxRemote:
            p = predict_direct(config, spec, TierKind::Pmm, Locality::Remote);
            break;
        case ScenarioMode::MemoryModeLocal:
            p = predict_memory_mode(config, spec, 1);
            break;
        case ScenarioMode::MemoryModeRemote:
            p = predict_memory_mode_remote(config, spec);
            break;
        case ScenarioMode::MemoryModeTwoSocket:
            p = predict_memory_mode(config, spec, 2);
            break;
        case ScenarioMode::DramTwoSocket:
            p = predict_two_socket(config, spec, TierKind::Dram);
            break;
        case ScenarioMode::PmmTwoSocket:
            p = predict_two_socket(config, spec, TierKind::Pmm);
            break;
        case ScenarioMode::DramPmmInterleave: {
            const double dram = static_cast<double>(config.topology.dram_total_bytes());
            const double pmm = static_cast<double>(config.topology.pmm_total_bytes());
            const double m = dram / (dram + pmm);
            p = predict_composed(config, spec, TrafficSplit{m, 1.0 - m});
            break;
        }
        case ScenarioMode::PolicySpill:
            p = predict_spill(config, spec);
            break;
        case ScenarioMode::PolicyWriteIsolation:
            p = predict_write_isolation(config, spec, scenario.structures);
            break;
    }

    EvalReport report;
    report.bandwidth_gbps = p.bandwidth_gbps;
    report.latency_ns = p.latency_ns;
    report.hit_rate = p.hit_rate;
    report.capacity_limit_bytes = limit;

    const double amplification = write_amplification(spec.touched_bytes_per_media_line,
                                                     config.tiers.media_line_bytes);
    const double media_per_byte =
        spec.read_fraction + spec.write_fraction() * amplification;
    report.bytes_moved = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(spec.data_size_bytes) * scenario.passes *
                     media_per_byte));
    report.runtime_s =
        static_cast<double>(report.bytes_moved) / (report.bandwidth_gbps * 1e9);

    report.power.memory_static_w = static_memory_power(config.topology.sockets, config);
    report.power.memory_dynamic_w = dynamic_memory_power(p.traffic, config);
    const double achieved_gflops = spec.arithmetic_intensity * report.bandwidth_gbps;
    report.power.cpu_w =
        cpu_power(achieved_gflops, config,
                  report.power.memory_static_w + report.power.memory_dynamic_w);
    report.energy = energy_accounting(report.runtime_s, report.power, report.bytes_moved);
    return report;
}

Comparison compare(const std::vector<Scenario>& scenarios, const MachineConfig& config) {
    if (scenarios.empty()) throw ValidationError("compare needs at least one scenario");
    Comparison comparison;
    comparison.rows.reserve(scenarios.size());
    for (const Scenario& scenario : scenarios) {
        ComparisonRow row;
        row.name = scenario.display_name();
        row.mode = scenario.mode;
        try {
            row.report = evaluate(scenario, config);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        comparison.rows.push_back(std::move(row));
    }
    const ComparisonRow& base = comparison.rows.front();
    for (ComparisonRow& row : comparison.rows) {
        if (!row.report || !base.report) continue;
        row.bandwidth_ratio = row.report->bandwidth_gbps / base.report->bandwidth_gbps;
        row.runtime_ratio = row.report->runtime_s / base.report->runtime_s;
        row.energy_ratio = row.report->energy.total_j() / base.report->energy.total_j();
    }
    return comparison;
}

std::string report_csv_header() {
    return "scenario,bandwidth_gbps,latency_ns,runtime_s,mem_static_w,mem_dyn_w,cpu_w,"
           "energy_j,energy_per_gb\n";
}

std::string report_csv_row(const std::string& name, const EvalReport& r) {
    std::string out = name;
    out += ',' + format_g6(r.bandwidth_gbps);
    out += ',' + format_g6(r.latency_ns);
    out += ',' + format_g6(r.runtime_s);
    out += ',' + format_g6(r.power.memory_static_w);
    out += ',' + format_g6(r.power.memory_dynamic_w);
    out += ',' + format_g6(r.power.cpu_w);
    out += ',' + format_g6(r.energy.total_j());
    out += ',' + format_g6(r.energy.per_gigabyte_j);
    out += '\n';
    return out;
}

namespace {

nlohmann::ordered_json report_json_object(const std::string& name, ScenarioMode mode,
                                          const EvalReport& r) {
    nlohmann::ordered_json j;
    j["scenario"] = name;
    j["mode"] = to_string(mode);
    j["bandwidth_gbps"] = r.bandwidth_gbps;
    j["latency_ns"] = r.latency_ns;
    j["runtime_s"] = r.runtime_s;
    if (r.hit_rate) j["hit_rate"] = *r.hit_rate;
    j["power_w"] = nlohmann::ordered_json{{"memory_static", r.power.memory_static_w},
                                          {"memory_dynamic", r.power.memory_dynamic_w},
                                          {"cpu", r.power.cpu_w},
                                          {"total", r.power.total_w()}};
    j["energy_j"] = nlohmann::ordered_json{{"static", r.energy.static_j},
                                           {"dynamic", r.energy.dynamic_j},
                                           {"cpu", r.energy.cpu_j},
                                           {"total", r.energy.total_j()},
                                           {"per_gigabyte", r.energy.per_gigabyte_j}};
    j["bytes_moved"] = r.bytes_moved;
    j["capacity_limit_bytes"] = r.capacity_limit_bytes;
    return j;
}

}  // namespace

std::string report_to_json(const std::string& name, ScenarioMode mode,
                           const EvalReport& report) {
    return report_json_object(name, mode, report).dump(2) + "\n";
}

std::string comparison_csv(const Comparison& comparison) {
    std::string out =
        "scenario,bandwidth_gbps,latency_ns,runtime_s,mem_static_w,mem_dyn_w,cpu_w,"
        "energy_j,energy_per_gb,bandwidth_ratio,runtime_ratio,energy_ratio,note\n";
    for (const ComparisonRow& row : comparison.rows) {
        if (row.report) {
            std::string line = report_csv_row(row.name, *row.report);
            line.pop_back();  // newline
            line += ',' + format_g6(row.bandwidth_ratio);
            line += ',' + format_g6(row.runtime_ratio);
            line += ',' + format_g6(row.energy_ratio);
            line += ",\n";
            out += line;
        } else {
            out += row.name + ",,,,,,,,,,,,\"" + row.error + "\"\n";
        }
    }
    return out;
}

std::string comparison_to_json(const Comparison& comparison) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ComparisonRow& row : comparison.rows) {
        if (row.report) {
            auto j = report_json_object(row.name, row.mode, *row.report);
            j["bandwidth_ratio"] = row.bandwidth_ratio;
            j["runtime_ratio"] = row.runtime_ratio;
            j["energy_ratio"] = row.energy_ratio;
            rows.push_back(std::move(j));
        } else {
            rows.push_back(nlohmann::ordered_json{{"scenario", row.name},
                                                  {"mode", to_string(row.mode)},
                                                  {"error", row.error}});
        }
    }
    return nlohmann::ordered_json{{"rows", rows}}.dump(2) + "\n";
}

std::string policy_placement_json(const Scenario& scenario, const MachineConfig& config) {
    validate(scenario.workload);
    MemoryState state = default_memory_state(config);
    if (scenario.mode == ScenarioMode::PolicySpill) {
        const PlacementMap map = spill_alloc(scenario.workload.data_size_bytes, state,
                                             config.mode_options.block_size_bytes);
        return placement_to_json(map);
    }
    if (scenario.mode == ScenarioMode::PolicyWriteIsolation) {
        const std::vector<StructureSpec> structures = scenario.structures.empty()
                                                          ? default_structures(scenario.workload)
                                                          : scenario.structures;
        const std::vector<PlacementMap> maps = isolate_writes(
            structures, state, config.mode_options.write_intensity_threshold);
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < structures.size(); ++i) {
            out.push_back(nlohmann::ordered_json{
                {"structure", structures[i].name},
                {"blocks", nlohmann::ordered_json::parse(placement_to_json(maps[i]))}});
        }
        return out.dump(2) + "\n";
    }
    throw ValidationError("only policy scenarios produce placements");
}

namespace {

Scenario scenario_from_node(const nlohmann::json& doc) {
    if (doc.is_string()) {
        Scenario s;
        s.mode = mode_from_string(doc.get<std::string>());
        s.workload = preset("read_only");
        return s;
    }
    if (!doc.is_object()) {
        throw ValidationError("scenario must be a JSON object or mode name");
    }
    if (!doc.contains("mode")) throw ValidationError("scenario is missing 'mode'");

    Scenario s;
    s.mode = mode_from_string(doc["mode"].get<std::string>());
    if (doc.contains("name")) s.name = doc["name"].get<std::string>();
    if (doc.contains("workload")) {
        s.workload = workload_from_json(doc["workload"].dump());
    } else {
        s.workload = preset("read_only");
    }
    try {
        if (doc.contains("data_size_bytes")) {
            s.workload.data_size_bytes = doc["data_size_bytes"].get<std::uint64_t>();
        }
        if (doc.contains("threads")) s.workload.threads = doc["threads"].get<int>();
        if (doc.contains("passes")) s.passes = doc["passes"].get<int>();
        if (doc.contains("structures")) {
            s.structures = structures_from_json(doc["structures"].dump());
        }
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("scenario document has a field with the wrong type");
    }
    validate(s.workload);
    return s;
}

}  // namespace

Scenario scenario_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("scenario document is not valid JSON: ") + e.what());
    }
    return scenario_from_node(doc);
}

std::vector<Scenario> scenarios_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("scenario list is not valid JSON: ") + e.what());
    }
    const nlohmann::json* list = &doc;
    if (doc.is_object() && doc.contains("scenarios")) list = &doc["scenarios"];
    if (!list->is_array() || list->empty()) {
        throw ValidationError("scenario list must be a non-empty JSON array");
    }
    std::vector<Scenario> scenarios;
    for (const auto& node : *list) scenarios.push_back(scenario_from_node(node));
    return scenarios;
}

}  // namespace tierperf
