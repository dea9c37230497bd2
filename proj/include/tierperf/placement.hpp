#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tierperf/machine_config.hpp"
#include "tierperf/tier_perf.hpp"
#include "tierperf/workload.hpp"

namespace tierperf {

struct TierSpace {
    std::uint64_t capacity_bytes = 0;
    std::uint64_t free_bytes = 0;
};

/// Free/capacity accounting per (socket, tier). Mutated by the allocators;
/// serialize access per instance.
struct MemoryState {
    struct Socket {
        TierSpace dram;
        TierSpace pmm;
    };
    std::vector<Socket> sockets;

    TierSpace& space(int socket, TierKind tier);
    const TierSpace& space(int socket, TierKind tier) const;
    std::uint64_t total_free() const;
    std::uint64_t free_in_tier(TierKind tier) const;
};

/// App-usable state of the reference machine in App Direct mode: usable DRAM
/// (after namespace metadata) plus the app-usable PMM share, split evenly
/// across sockets.
MemoryState default_memory_state(const MachineConfig& config);

struct BlockDescriptor {
    std::size_t index = 0;
    std::uint64_t size_bytes = 0;
    int socket = 0;
    TierKind tier = TierKind::Dram;
};

/// Blocks covering one contiguous virtual range, in virtual order.
struct PlacementMap {
    std::vector<BlockDescriptor> blocks;
    std::uint64_t total_bytes = 0;

    std::uint64_t bytes_in(TierKind tier) const;
    std::uint64_t bytes_on(int socket) const;
};

/// Bandwidth-spilling block allocation: blocks go to sockets round-robin
/// starting at socket 0; each block takes DRAM while the socket has room,
/// then spills to PMM. Deterministic. Throws CapacityError (with the
/// shortfall) when total free memory cannot hold the request.
PlacementMap spill_alloc(std::uint64_t size_bytes, MemoryState& state,
                         std::uint64_t block_size_bytes);

/// DRAM-only variant used for write isolation: packs DRAM round-robin,
/// splitting tail blocks so the last usable bytes are reachable. Throws
/// CapacityError when the DRAM tier cannot hold the request.
PlacementMap dram_alloc(std::uint64_t size_bytes, MemoryState& state,
                        std::uint64_t block_size_bytes);

/// NVM-aware splitting: near-equal segments placed entirely on one socket's
/// PMM, alternating sockets; a segment subdivides when its socket lacks room.
PlacementMap split_alloc(std::uint64_t size_bytes, MemoryState& state, int parts);

struct StructureSpec {
    std::string name;
    std::uint64_t size_bytes = 0;
    double write_intensity = 0;  // fraction of accesses that are writes
};

/// Write isolation: structures at or above the threshold go to DRAM, the
/// rest split across the sockets' PMM. Throws CapacityError naming the
/// structure when the write-intensive set does not fit DRAM.
std::vector<PlacementMap> isolate_writes(const std::vector<StructureSpec>& structures,
                                         MemoryState& state, double threshold);

/// DRAM share of the traffic generated over a placement, assuming uniform
/// touch across the allocation.
TrafficSplit traffic_split(const PlacementMap& placement, const WorkloadSpec& spec);

/// Structure-list document: a JSON array of {name, size_bytes,
/// write_intensity}, optionally wrapped as {"structures": [...]}.
std::vector<StructureSpec> structures_from_json(const std::string& json_text);

/// JSON array of block descriptors, in virtual order.
std::string placement_to_json(const PlacementMap& placement);

}  // namespace tierperf
