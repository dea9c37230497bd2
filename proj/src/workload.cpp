#include "tierperf/workload.hpp"

#include <algorithm>

#include <json.hpp>

#include "tierperf/tier_perf.hpp"

namespace tierperf {

void validate(const WorkloadSpec& spec) {
    if (spec.read_fraction < 0 || spec.read_fraction > 1) {
        throw ValidationError("workload read_fraction must lie in [0, 1]");
    }
    if (spec.nt_store && spec.read_fraction >= 1.0) {
        throw ValidationError("nt_store requires read_fraction < 1 (there must be writes)");
    }
    if (spec.threads < 1) throw ValidationError("workload threads must be >= 1");
    if (spec.data_size_bytes == 0) throw ValidationError("workload data_size_bytes must be > 0");
    if (spec.arithmetic_intensity < 0) {
        throw ValidationError("workload arithmetic_intensity must be >= 0");
    }
    if (spec.touched_bytes_per_media_line < 1 || spec.touched_bytes_per_media_line > 256) {
        throw ValidationError("workload touched_bytes_per_media_line must lie in [1, 256]");
    }
}

namespace {

WorkloadSpec make(Pattern pattern, double read_fraction, bool nt, double ai) {
    WorkloadSpec w;
    w.pattern = pattern;
    w.read_fraction = read_fraction;
    w.nt_store = nt;
    w.arithmetic_intensity = ai;
    return w;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "accumulate", "stream_copy", "stream_triad", "read_only",  "write_only",
        "nt_write_only", "mix_1r1w",  "mix_2r1w",    "mix_3r1w",   "random_read",
    };
    return names;
}

bool is_preset(std::string_view name) {
    const auto& names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

WorkloadSpec preset(std::string_view name) {
    // Arithmetic intensities follow STREAM convention: accumulate is one add
    // per 8-byte element, copy moves data without flops, triad does two flops
    // per 16 bytes read.
    if (name == "accumulate") return make(Pattern::Sequential, 1.0, false, 1.0 / 8.0);
    if (name == "stream_copy") return make(Pattern::Sequential, 0.5, false, 0.0);
    if (name == "stream_triad") return make(Pattern::Sequential, 2.0 / 3.0, false, 2.0 / 16.0);
    if (name == "read_only") return make(Pattern::Sequential, 1.0, false, 0.0);
    if (name == "write_only") return make(Pattern::Sequential, 0.0, false, 0.0);
    if (name == "nt_write_only") return make(Pattern::Sequential, 0.0, true, 0.0);
    if (name == "mix_1r1w") return make(Pattern::Sequential, 0.5, false, 0.0);
    if (name == "mix_2r1w") return make(Pattern::Sequential, 2.0 / 3.0, false, 0.0);
    if (name == "mix_3r1w") return make(Pattern::Sequential, 0.75, false, 0.0);
    if (name == "random_read") return make(Pattern::Random, 1.0, false, 0.0);

    std::string msg = "unknown workload preset '" + std::string(name) + "'; valid presets:";
    for (const auto& n : preset_names()) msg += " " + n;
    throw ValidationError(msg);
}

AccessTrace generate_trace(const WorkloadSpec& spec, std::uint64_t seed,
                           std::size_t event_count) {
    validate(spec);
    if (event_count < 1) throw ValidationError("trace event_count must be >= 1");

    AccessTrace trace;
    trace.line_bytes = 64;
    trace.events.reserve(event_count);

    const std::uint64_t line_space =
        std::max<std::uint64_t>(1, spec.data_size_bytes / trace.line_bytes);
    SplitMix64 rng(seed);

    for (std::size_t i = 0; i < event_count; ++i) {
        const AccessKind kind =
            rng.next_unit() < spec.read_fraction ? AccessKind::Read : AccessKind::Write;
        std::uint64_t line;
        if (spec.pattern == Pattern::Sequential) {
            line = static_cast<std::uint64_t>(i) % line_space;
        } else {
            line = rng.next() % line_space;
        }
        trace.events.push_back({line, kind});
    }
    return trace;
}

double effective_write_fraction(const WorkloadSpec& spec, std::uint32_t media_line_bytes) {
    const double r = spec.read_fraction;
    const double w = 1.0 - r;
    if (w == 0.0) return 0.0;
    const double amplification =
        write_amplification(spec.touched_bytes_per_media_line, media_line_bytes);
    return w * amplification / (r + w * amplification);
}

WorkloadSpec workload_from_json(const std::string& json_text) {
    using json = nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("workload document is not valid JSON: ") + e.what());
    }
    if (doc.is_string()) return preset(doc.get<std::string>());
    if (!doc.is_object()) {
        throw ValidationError("workload document must be a JSON object or preset name");
    }

    WorkloadSpec spec;
    if (doc.contains("preset")) spec = preset(doc["preset"].get<std::string>());
    try {
        if (doc.contains("pattern")) {
            const std::string p = doc["pattern"].get<std::string>();
            if (p == "sequential") {
                spec.pattern = Pattern::Sequential;
            } else if (p == "random") {
                spec.pattern = Pattern::Random;
            } else {
                throw ValidationError("workload pattern must be 'sequential' or 'random'");
            }
        }
        if (doc.contains("read_fraction")) spec.read_fraction = doc["read_fraction"].get<double>();
        if (doc.contains("nt_store")) spec.nt_store = doc["nt_store"].get<bool>();
        if (doc.contains("threads")) spec.threads = doc["threads"].get<int>();
        if (doc.contains("data_size_bytes")) {
            spec.data_size_bytes = doc["data_size_bytes"].get<std::uint64_t>();
        }
        if (doc.contains("arithmetic_intensity")) {
            spec.arithmetic_intensity = doc["arithmetic_intensity"].get<double>();
        }
        if (doc.contains("touched_bytes_per_media_line")) {
            spec.touched_bytes_per_media_line =
                doc["touched_bytes_per_media_line"].get<std::uint32_t>();
        }
    } catch (const json::exception&) {
        throw ValidationError("workload document has a field with the wrong type");
    }
    validate(spec);
    return spec;
}

}  // namespace tierperf
