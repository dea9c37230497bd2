#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tierperf/dram_cache.hpp"
#include "tierperf/machine_config.hpp"
#include "tierperf/placement.hpp"
#include "tierperf/power_energy.hpp"
#include "tierperf/workload.hpp"

namespace tierperf {

/// The memory configurations of the reference platform plus the two
/// fine-grained allocation policies.
enum class ScenarioMode {
    DramLocal,
    DramRemote,
    PmmNumaLocal,
    PmmNumaRemote,
    PmmFsdaxLocal,
    PmmFsdaxRemote,
    MemoryModeLocal,
    MemoryModeRemote,
    DramTwoSocket,
    PmmTwoSocket,
    DramPmmInterleave,
    MemoryModeTwoSocket,
    PolicySpill,
    PolicyWriteIsolation,
};

const char* to_string(ScenarioMode mode);
ScenarioMode mode_from_string(const std::string& name);
const std::vector<std::string>& mode_names();

struct Scenario {
    std::string name;  // defaults to the mode string
    ScenarioMode mode = ScenarioMode::DramLocal;
    WorkloadSpec workload;
    /// Structure list for the write-isolation policy; synthesized from the
    /// workload's read fraction when empty.
    std::vector<StructureSpec> structures;
    int passes = 1;

    std::string display_name() const { return name.empty() ? to_string(mode) : name; }
};

struct EvalReport {
    double bandwidth_gbps = 0;
    double latency_ns = 0;
    double runtime_s = 0;
    std::optional<double> hit_rate;  // memory modes only
    PowerReport power;
    EnergyReport energy;
    std::uint64_t bytes_moved = 0;
    std::uint64_t capacity_limit_bytes = 0;
};

/// Largest data size a mode supports on this machine.
std::uint64_t capacity_limit(ScenarioMode mode, const MachineConfig& config);

/// Largest total size whose write set still fits DRAM when isolated.
std::uint64_t write_isolation_capacity(const WorkloadSpec& workload,
                                       const MachineConfig& config);

/// Read set and write set sized by the workload's read fraction.
std::vector<StructureSpec> default_structures(const WorkloadSpec& workload);

/// Predicts one scenario end to end. Throws CapacityError when the data
/// size exceeds the mode's limit, ValidationError on bad inputs.
EvalReport evaluate(const Scenario& scenario, const MachineConfig& config);

struct ComparisonRow {
    std::string name;
    ScenarioMode mode = ScenarioMode::DramLocal;
    std::optional<EvalReport> report;
    std::string error;  // non-empty when evaluation failed
    double bandwidth_ratio = 0;  // vs. the first (baseline) row
    double runtime_ratio = 0;
    double energy_ratio = 0;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
};

/// Evaluates every scenario; per-scenario errors become error rows instead
/// of aborting the table. Ratios are taken against the first scenario.
Comparison compare(const std::vector<Scenario>& scenarios, const MachineConfig& config);

std::string report_csv_header();
std::string report_csv_row(const std::string& name, const EvalReport& report);
std::string report_to_json(const std::string& name, ScenarioMode mode,
                           const EvalReport& report);
std::string comparison_csv(const Comparison& comparison);
std::string comparison_to_json(const Comparison& comparison);

/// The block placement a policy scenario produces, as JSON: a block array
/// for spilling, per-structure block arrays for write isolation. Throws
/// ValidationError for non-policy modes.
std::string policy_placement_json(const Scenario& scenario, const MachineConfig& config);

/// Scenario document: {"mode": ..., "workload": preset-name-or-object,
/// "data_size_bytes": ..., "passes": ..., "structures": [...]}.
Scenario scenario_from_json(const std::string& json_text);
/// Either a bare array of scenario objects or {"scenarios": [...]}.
std::vector<Scenario> scenarios_from_json(const std::string& json_text);

}  // namespace tierperf
