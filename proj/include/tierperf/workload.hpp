#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tierperf/machine_config.hpp"

namespace tierperf {

/// Declarative access-pattern descriptor. Thread counts are per socket;
/// the reference platform saturates at one thread per core (24).
struct WorkloadSpec {
    Pattern pattern = Pattern::Sequential;
    double read_fraction = 1.0;
    bool nt_store = false;
    int threads = 24;
    std::uint64_t data_size_bytes = 1'000'000'000ULL;
    double arithmetic_intensity = 0.0;  // flops per byte of memory traffic
    std::uint32_t touched_bytes_per_media_line = 256;

    double write_fraction() const { return 1.0 - read_fraction; }
};

/// Throws ValidationError if any field is out of range.
void validate(const WorkloadSpec& spec);

enum class AccessKind : std::uint8_t { Read, Write };

struct AccessEvent {
    std::uint64_t line;  // cache-line index
    AccessKind kind;
};

struct AccessTrace {
    std::vector<AccessEvent> events;
    std::uint32_t line_bytes = 64;
};

/// Canonical named workloads. Throws ValidationError for unknown names,
/// listing the valid ones.
WorkloadSpec preset(std::string_view name);
const std::vector<std::string>& preset_names();
bool is_preset(std::string_view name);

/// Deterministic trace generation: sequential specs walk the line space
/// cyclically, random specs draw uniformly from a seeded 64-bit mixer.
/// Event kinds realize read_fraction deterministically from the seed.
AccessTrace generate_trace(const WorkloadSpec& spec, std::uint64_t seed,
                           std::size_t event_count);

/// Write fraction of media traffic after write amplification:
/// w' = w*A / (r + w*A) with A = media_line / touched bytes.
double effective_write_fraction(const WorkloadSpec& spec,
                                std::uint32_t media_line_bytes = 256);

/// SplitMix64: statistical uniformity is the contract, nothing more.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Parses a workload JSON document or preset name.
WorkloadSpec workload_from_json(const std::string& json_text);

}  // namespace tierperf
