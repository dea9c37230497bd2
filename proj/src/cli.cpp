#include "tierperf/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tierperf/dram_cache.hpp"
#include "tierperf/engine.hpp"
#include "tierperf/format.hpp"
#include "tierperf/machine_config.hpp"
#include "tierperf/sweeps.hpp"
#include "tierperf/tier_perf.hpp"
#include "tierperf/workload.hpp"

namespace tierperf::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file '" + path + "'");
    out << content;
}

MachineConfig load_machine(const std::string& config_path) {
    if (config_path.empty()) return reference_machine();
    return load_config(read_file(config_path));
}

WorkloadSpec load_workload(const std::string& value) {
    if (is_preset(value)) return preset(value);
    if (value.find('{') != std::string::npos) return workload_from_json(value);
    return workload_from_json(read_file(value));
}

Scenario load_scenario(const std::string& value) {
    for (const auto& name : mode_names()) {
        if (value == name) {
            Scenario s;
            s.mode = mode_from_string(value);
            s.workload = preset("read_only");
            return s;
        }
    }
    if (value.find('{') != std::string::npos) return scenario_from_json(value);
    return scenario_from_json(read_file(value));
}

struct EvalOptions {
    std::string scenario;
    std::string workload;
    std::string config_path;
    std::string out_format = "json";
    std::string placement_path;
    std::uint64_t size_bytes = 0;
    int passes = 0;
    int threads = 0;
};

int run_eval(const EvalOptions& opt, std::ostream& out) {
    const MachineConfig config = load_machine(opt.config_path);
    Scenario scenario = load_scenario(opt.scenario);
    if (!opt.workload.empty()) scenario.workload = load_workload(opt.workload);
    if (opt.size_bytes > 0) scenario.workload.data_size_bytes = opt.size_bytes;
    if (opt.threads > 0) scenario.workload.threads = opt.threads;
    if (opt.passes > 0) scenario.passes = opt.passes;

    const EvalReport report = evaluate(scenario, config);
    if (opt.out_format == "csv") {
        out << report_csv_header() << report_csv_row(scenario.display_name(), report);
    } else {
        out << report_to_json(scenario.display_name(), scenario.mode, report);
    }
    if (!opt.placement_path.empty()) {
        write_file(opt.placement_path, policy_placement_json(scenario, config));
    }
    return kExitOk;
}

struct CompareOptions {
    std::string scenarios_path;
    std::string config_path;
    std::string out_format = "csv";
};

int run_compare(const CompareOptions& opt, std::ostream& out) {
    const MachineConfig config = load_machine(opt.config_path);
    const std::vector<Scenario> scenarios = scenarios_from_json(read_file(opt.scenarios_path));
    const Comparison comparison = compare(scenarios, config);
    out << (opt.out_format == "json" ? comparison_to_json(comparison)
                                     : comparison_csv(comparison));
    return kExitOk;
}

struct SweepOptions {
    std::string kind = "roofline";
    std::string grid_path;
    std::string config_path;
    std::string svg_path;
    std::string out_path;
};

int run_sweep(const SweepOptions& opt, std::ostream& out) {
    const MachineConfig config = load_machine(opt.config_path);
    const SweepKind kind = sweep_kind_from_string(opt.kind);
    const SweepGrid grid =
        opt.grid_path.empty() ? SweepGrid::defaults() : grid_from_json(read_file(opt.grid_path));

    SweepResult result;
    switch (kind) {
        case SweepKind::Roofline: result = roofline(config, grid); break;
        case SweepKind::Powerline: result = powerline(config, grid); break;
        case SweepKind::Archline: result = archline(config, grid); break;
    }
    const std::string csv = to_csv(result);
    if (opt.out_path.empty()) {
        out << csv;
    } else {
        write_file(opt.out_path, csv);
    }
    if (!opt.svg_path.empty()) write_file(opt.svg_path, to_svg(result, kind));
    return kExitOk;
}

struct TraceSimOptions {
    std::string trace_path;
    std::string workload;
    std::uint64_t sets = 0;
    std::uint32_t line_bytes = 64;
    std::uint64_t events = 0;
    std::uint64_t seed = 1;
};

int run_trace_sim(const TraceSimOptions& opt, std::ostream& out) {
    AccessTrace trace;
    if (!opt.trace_path.empty()) {
        std::ifstream in(opt.trace_path);
        if (!in) throw ValidationError("cannot open trace file '" + opt.trace_path + "'");
        trace = parse_trace(in, opt.line_bytes);
    } else if (!opt.workload.empty()) {
        if (opt.events == 0) {
            throw ValidationError("--events is required when generating a trace");
        }
        trace = generate_trace(load_workload(opt.workload), opt.seed, opt.events);
    } else {
        throw ValidationError("trace-sim needs --trace or --workload");
    }

    CacheConfig cache;
    cache.line_bytes = opt.line_bytes;
    cache.capacity_bytes = opt.sets * opt.line_bytes;
    const CacheStats stats = trace_sim(trace, cache);
    const double hit_rate =
        static_cast<double>(stats.hits) / static_cast<double>(stats.accesses);
    out << "accesses," << stats.accesses << "\n"
        << "hits," << stats.hits << "\n"
        << "misses," << stats.misses << "\n"
        << "dirty_evictions," << stats.dirty_evictions << "\n"
        << "hit_rate," << format_g6(hit_rate) << "\n";
    return kExitOk;
}

struct ConfigOptions {
    bool print_default = false;
    std::string validate_path;
};

int run_config(const ConfigOptions& opt, std::ostream& out) {
    if (opt.print_default) {
        out << serialize_config(reference_machine());
        return kExitOk;
    }
    if (!opt.validate_path.empty()) {
        load_config(read_file(opt.validate_path));
        out << "ok\n";
        return kExitOk;
    }
    throw ValidationError("config needs --print-default or --validate <file>");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Calibrated performance, power, and energy models for two-socket "
                 "DRAM+NVM memory systems"};
    app.name("tierperf");
    app.require_subcommand(1);

    EvalOptions eval_opt;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate one scenario");
    eval_cmd->add_option("--scenario", eval_opt.scenario, "Scenario file, JSON, or mode name")
        ->required();
    eval_cmd->add_option("--workload", eval_opt.workload, "Workload preset, file, or JSON");
    eval_cmd->add_option("--size", eval_opt.size_bytes, "Data size in bytes");
    eval_cmd->add_option("--threads", eval_opt.threads, "Threads per socket");
    eval_cmd->add_option("--passes", eval_opt.passes, "Passes over the data");
    eval_cmd->add_option("--config", eval_opt.config_path, "Machine config file");
    eval_cmd->add_option("--out", eval_opt.out_format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    eval_cmd->add_option("--emit-placement", eval_opt.placement_path,
                         "Write the policy block placement as JSON here");

    CompareOptions cmp_opt;
    auto* cmp_cmd = app.add_subcommand("compare", "Evaluate scenarios against a baseline");
    cmp_cmd->add_option("--scenarios", cmp_opt.scenarios_path, "Scenario list JSON file")
        ->required();
    cmp_cmd->add_option("--config", cmp_opt.config_path, "Machine config file");
    cmp_cmd->add_option("--out", cmp_opt.out_format, "Output format: csv or json")
        ->check(CLI::IsMember({"json", "csv"}));

    SweepOptions sweep_opt;
    auto* sweep_cmd = app.add_subcommand("sweep", "Roofline, power-line, or arch-line sweep");
    sweep_cmd->add_option("--kind", sweep_opt.kind, "roofline, powerline, or archline")
        ->check(CLI::IsMember({"roofline", "powerline", "archline"}));
    sweep_cmd->add_option("--grid", sweep_opt.grid_path, "Sweep grid JSON file");
    sweep_cmd->add_option("--config", sweep_opt.config_path, "Machine config file");
    sweep_cmd->add_option("--svg", sweep_opt.svg_path, "Write an SVG chart here");
    sweep_cmd->add_option("--out", sweep_opt.out_path, "Write CSV here instead of stdout");

    TraceSimOptions trace_opt;
    auto* trace_cmd = app.add_subcommand("trace-sim", "Exact direct-mapped cache simulation");
    trace_cmd->add_option("--trace", trace_opt.trace_path, "Trace file (R/W <index> lines)");
    trace_cmd->add_option("--workload", trace_opt.workload, "Generate from a workload instead");
    trace_cmd->add_option("--events", trace_opt.events, "Events to generate");
    trace_cmd->add_option("--seed", trace_opt.seed, "Trace generation seed");
    trace_cmd->add_option("--sets", trace_opt.sets, "Cache sets")->required();
    trace_cmd->add_option("--line-bytes", trace_opt.line_bytes, "Cache line bytes");

    ConfigOptions config_opt;
    auto* config_cmd = app.add_subcommand("config", "Inspect machine configurations");
    config_cmd->add_flag("--print-default", config_opt.print_default,
                         "Print the embedded reference calibration");
    config_cmd->add_option("--validate", config_opt.validate_path, "Validate a config file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(eval_cmd)) return run_eval(eval_opt, out);
        if (app.got_subcommand(cmp_cmd)) return run_compare(cmp_opt, out);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_opt, out);
        if (app.got_subcommand(trace_cmd)) return run_trace_sim(trace_opt, out);
        if (app.got_subcommand(config_cmd)) return run_config(config_opt, out);
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace tierperf::cli
