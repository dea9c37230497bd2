#include "tierperf/placement.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace tierperf {

TierSpace& MemoryState::space(int socket, TierKind tier) {
    auto& s = sockets.at(static_cast<std::size_t>(socket));
    return tier == TierKind::Dram ? s.dram : s.pmm;
}

const TierSpace& MemoryState::space(int socket, TierKind tier) const {
    const auto& s = sockets.at(static_cast<std::size_t>(socket));
    return tier == TierKind::Dram ? s.dram : s.pmm;
}

std::uint64_t MemoryState::total_free() const {
    std::uint64_t total = 0;
    for (const auto& s : sockets) total += s.dram.free_bytes + s.pmm.free_bytes;
    return total;
}

std::uint64_t MemoryState::free_in_tier(TierKind tier) const {
    std::uint64_t total = 0;
    for (const auto& s : sockets) {
        total += (tier == TierKind::Dram ? s.dram : s.pmm).free_bytes;
    }
    return total;
}

MemoryState default_memory_state(const MachineConfig& config) {
    MemoryState state;
    const int sockets = config.topology.sockets;
    const std::uint64_t dram_per_socket = config.usable_dram_bytes() / sockets;
    const std::uint64_t pmm_per_socket = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(config.topology.pmm_per_socket_bytes()) *
                     config.mode_options.app_direct_pmm_fraction));
    state.sockets.resize(static_cast<std::size_t>(sockets));
    for (auto& s : state.sockets) {
        s.dram = {dram_per_socket, dram_per_socket};
        s.pmm = {pmm_per_socket, pmm_per_socket};
    }
    return state;
}

std::uint64_t PlacementMap::bytes_in(TierKind tier) const {
    std::uint64_t total = 0;
    for (const auto& b : blocks) {
        if (b.tier == tier) total += b.size_bytes;
    }
    return total;
}

std::uint64_t PlacementMap::bytes_on(int socket) const {
    std::uint64_t total = 0;
    for (const auto& b : blocks) {
        if (b.socket == socket) total += b.size_bytes;
    }
    return total;
}

namespace {

void take(TierSpace& space, std::uint64_t bytes) {
    space.free_bytes -= bytes;  // caller has verified the fit
}

}  // namespace

PlacementMap spill_alloc(std::uint64_t size_bytes, MemoryState& state,
                         std::uint64_t block_size_bytes) {
    if (size_bytes == 0) throw ValidationError("allocation size must be > 0");
    if (block_size_bytes == 0) throw ValidationError("block size must be > 0");
    if (state.sockets.empty()) throw ValidationError("memory state has no sockets");
    if (state.total_free() < size_bytes) {
        throw CapacityError("spill allocation does not fit: short by " +
                                std::to_string(size_bytes - state.total_free()) + " bytes",
                            state.total_free(), size_bytes);
    }

    PlacementMap map;
    map.total_bytes = size_bytes;
    const int socket_count = static_cast<int>(state.sockets.size());
    std::uint64_t remaining = size_bytes;
    int socket = 0;
    while (remaining > 0) {
        const std::uint64_t block = std::min(remaining, block_size_bytes);
        TierSpace& dram = state.space(socket, TierKind::Dram);
        TierSpace& pmm = state.space(socket, TierKind::Pmm);
        if (dram.free_bytes >= block) {
            take(dram, block);
            map.blocks.push_back({0, block, socket, TierKind::Dram});
            remaining -= block;
        } else if (pmm.free_bytes >= block) {
            take(pmm, block);
            map.blocks.push_back({0, block, socket, TierKind::Pmm});
            remaining -= block;
        } else {
            // This socket is effectively full; place what fits here and let
            // the rest continue round-robin. Total fit was verified upfront.
            const std::uint64_t in_dram = std::min(block, dram.free_bytes);
            if (in_dram > 0) {
                take(dram, in_dram);
                map.blocks.push_back({0, in_dram, socket, TierKind::Dram});
            }
            const std::uint64_t in_pmm = std::min(block - in_dram, pmm.free_bytes);
            if (in_pmm > 0) {
                take(pmm, in_pmm);
                map.blocks.push_back({0, in_pmm, socket, TierKind::Pmm});
            }
            remaining -= in_dram + in_pmm;
        }
        socket = (socket + 1) % socket_count;
    }
    for (std::size_t i = 0; i < map.blocks.size(); ++i) map.blocks[i].index = i;
    return map;
}

PlacementMap dram_alloc(std::uint64_t size_bytes, MemoryState& state,
                        std::uint64_t block_size_bytes) {
    if (size_bytes == 0) throw ValidationError("allocation size must be > 0");
    if (block_size_bytes == 0) throw ValidationError("block size must be > 0");
    const std::uint64_t dram_free = state.free_in_tier(TierKind::Dram);
    if (dram_free < size_bytes) {
        throw CapacityError("DRAM allocation does not fit: short by " +
                                std::to_string(size_bytes - dram_free) + " bytes",
                            dram_free, size_bytes);
    }

    PlacementMap map;
    map.total_bytes = size_bytes;
    const int socket_count = static_cast<int>(state.sockets.size());
    std::uint64_t remaining = size_bytes;
    int socket = 0;
    while (remaining > 0) {
        TierSpace& dram = state.space(socket, TierKind::Dram);
        const std::uint64_t block =
            std::min({remaining, block_size_bytes, dram.free_bytes});
        if (block > 0) {
            take(dram, block);
            map.blocks.push_back({map.blocks.size(), block, socket, TierKind::Dram});
            remaining -= block;
        }
        socket = (socket + 1) % socket_count;
    }
    return map;
}

PlacementMap split_alloc(std::uint64_t size_bytes, MemoryState& state, int parts) {
    if (size_bytes == 0) throw ValidationError("allocation size must be > 0");
    if (parts < 1) throw ValidationError("split parts must be >= 1");
    if (state.sockets.empty()) throw ValidationError("memory state has no sockets");
    const std::uint64_t pmm_free = state.free_in_tier(TierKind::Pmm);
    if (pmm_free < size_bytes) {
        throw CapacityError("PMM split allocation does not fit: short by " +
                                std::to_string(size_bytes - pmm_free) + " bytes",
                            pmm_free, size_bytes);
    }

    PlacementMap map;
    map.total_bytes = size_bytes;
    const int socket_count = static_cast<int>(state.sockets.size());
    const std::uint64_t base = size_bytes / static_cast<std::uint64_t>(parts);
    const std::uint64_t extras = size_bytes % static_cast<std::uint64_t>(parts);

    for (int part = 0; part < parts; ++part) {
        std::uint64_t segment =
            base + (static_cast<std::uint64_t>(part) < extras ? 1 : 0);
        int socket = part % socket_count;
        // Preferred socket first; overflow walks the remaining sockets.
        for (int probe = 0; probe < socket_count && segment > 0; ++probe) {
            const int target = (socket + probe) % socket_count;
            TierSpace& pmm = state.space(target, TierKind::Pmm);
            const std::uint64_t piece = std::min(segment, pmm.free_bytes);
            if (piece == 0) continue;
            take(pmm, piece);
            map.blocks.push_back({map.blocks.size(), piece, target, TierKind::Pmm});
            segment -= piece;
        }
    }
    return map;
}

std::vector<PlacementMap> isolate_writes(const std::vector<StructureSpec>& structures,
                                         MemoryState& state, double threshold) {
    if (structures.empty()) throw ValidationError("structure list must be non-empty");
    if (threshold < 0 || threshold > 1) {
        throw ValidationError("write-intensity threshold must lie in [0, 1]");
    }

    std::vector<PlacementMap> result;
    result.reserve(structures.size());
    const int parts = static_cast<int>(state.sockets.size());
    for (const auto& s : structures) {
        if (s.size_bytes == 0) {
            throw ValidationError("structure '" + s.name + "' has zero size");
        }
        if (s.write_intensity >= threshold) {
            try {
                result.push_back(dram_alloc(s.size_bytes, state, 1ULL << 30));
            } catch (const CapacityError& e) {
                throw CapacityError("write-intensive structure '" + s.name +
                                        "' does not fit in DRAM (" + e.what() + ")",
                                    e.limit_bytes, e.requested_bytes);
            }
        } else {
            result.push_back(split_alloc(s.size_bytes, state, parts));
        }
    }
    return result;
}

TrafficSplit traffic_split(const PlacementMap& placement, const WorkloadSpec& spec) {
    validate(spec);
    if (placement.blocks.empty() || placement.total_bytes == 0) {
        throw ValidationError("placement must be non-empty");
    }
    const double dram = static_cast<double>(placement.bytes_in(TierKind::Dram)) /
                        static_cast<double>(placement.total_bytes);
    return TrafficSplit{dram, 1.0 - dram};
}

std::vector<StructureSpec> structures_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("structure list is not valid JSON: ") + e.what());
    }
    const nlohmann::json* list = &doc;
    if (doc.is_object() && doc.contains("structures")) list = &doc["structures"];
    if (!list->is_array() || list->empty()) {
        throw ValidationError("structure list must be a non-empty JSON array");
    }
    std::vector<StructureSpec> structures;
    for (const auto& node : *list) {
        StructureSpec spec;
        try {
            spec.name = node.value("name", "structure");
            spec.size_bytes = node.at("size_bytes").get<std::uint64_t>();
            spec.write_intensity = node.value("write_intensity", 0.0);
        } catch (const nlohmann::json::exception&) {
            throw ValidationError("structure entries need size_bytes "
                                  "(plus optional name and write_intensity)");
        }
        if (spec.write_intensity < 0 || spec.write_intensity > 1) {
            throw ValidationError("structure '" + spec.name +
                                  "': write_intensity must lie in [0, 1]");
        }
        structures.push_back(std::move(spec));
    }
    return structures;
}

std::string placement_to_json(const PlacementMap& placement) {
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& b : placement.blocks) {
        blocks.push_back(nlohmann::ordered_json{{"index", b.index},
                                                {"size_bytes", b.size_bytes},
                                                {"socket", b.socket},
                                                {"tier", to_string(b.tier)}});
    }
    return blocks.dump(2) + "\n";
}

}  // namespace tierperf
