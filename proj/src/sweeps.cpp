#include "tierperf/sweeps.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "tierperf/format.hpp"
#include "tierperf/tier_perf.hpp"

namespace tierperf {

const char* to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::Roofline: return "roofline";
        case SweepKind::Powerline: return "powerline";
        case SweepKind::Archline: return "archline";
    }
    return "unknown";
}

SweepKind sweep_kind_from_string(const std::string& name) {
    if (name == "roofline") return SweepKind::Roofline;
    if (name == "powerline") return SweepKind::Powerline;
    if (name == "archline") return SweepKind::Archline;
    throw ValidationError("unknown sweep kind '" + name +
                          "' (expected roofline, powerline, or archline)");
}

SweepGrid SweepGrid::defaults() {
    SweepGrid grid;
    for (int e = -3; e <= 6; ++e) grid.ai_values.push_back(std::ldexp(1.0, e));
    for (int i = 0; i <= 10; ++i) grid.distributions.push_back(i / 10.0);
    return grid;
}

void validate(const SweepGrid& grid) {
    if (grid.ai_values.empty()) throw ValidationError("sweep grid needs ai_values");
    if (grid.distributions.empty()) throw ValidationError("sweep grid needs distributions");
    for (std::size_t i = 1; i < grid.ai_values.size(); ++i) {
        if (grid.ai_values[i] <= grid.ai_values[i - 1]) {
            throw ValidationError("ai_values must be strictly increasing");
        }
    }
    for (std::size_t i = 1; i < grid.distributions.size(); ++i) {
        if (grid.distributions[i] <= grid.distributions[i - 1]) {
            throw ValidationError("distributions must be strictly increasing");
        }
    }
    for (double ai : grid.ai_values) {
        if (ai <= 0) throw ValidationError("ai_values must be > 0");
    }
    for (double d : grid.distributions) {
        if (d < 0 || d > 1) throw ValidationError("distributions must lie in [0, 1]");
    }
}

const SweepPoint& SweepResult::at(std::size_t dist_index, std::size_t ai_index) const {
    return points.at(dist_index * ai_count + ai_index);
}

namespace {

SweepResult compute_plane(const MachineConfig& config, const SweepGrid& grid) {
    validate(grid);
    SweepResult result;
    result.ai_count = grid.ai_values.size();
    result.points.reserve(grid.ai_values.size() * grid.distributions.size());

    const double peak = config.mode_options.peak_compute_gflops;
    const int sockets = config.topology.sockets;
    const double mem_static = config.power.static_memory_power_per_socket_w * sockets;
    const double cpu_static = config.power.cpu_static_power_per_socket_w * sockets;
    const double cpu_dyn = config.power.cpu_dynamic_peak_power_per_socket_w * sockets;
    const double cap = config.power.platform_power_cap_w;
    const double c_dram = config.power.dram_dynamic_w_per_gbps.read_only;
    const double c_pmm = config.power.pmm_dynamic_w_per_gbps.read_only;
    const double bw_dram = config.tiers.dual_socket_read_peak_dram_gbps;
    const double bw_pmm = config.tiers.dual_socket_read_peak_pmm_gbps;

    for (double d : grid.distributions) {
        const double bandwidth = composite_bandwidth(TrafficSplit{1.0 - d, d}, bw_dram, bw_pmm);
        result.ridge_flops_per_byte.push_back(peak / bandwidth);
        const double c_mix = (1.0 - d) * c_dram + d * c_pmm;
        for (double ai : grid.ai_values) {
            SweepPoint point;
            point.ai = ai;
            point.pmm_fraction = d;
            point.bandwidth_gbps = bandwidth;
            point.attainable_gflops = std::min(peak, ai * bandwidth);

            // Power demanded at a given performance: CPU share plus dynamic
            // memory power for traffic = perf / ai.
            const double statics = cpu_static + mem_static;
            auto demand = [&](double perf) {
                return statics + cpu_dyn * perf / peak + c_mix * perf / ai;
            };
            if (demand(point.attainable_gflops) <= cap) {
                point.sustained_gflops = point.attainable_gflops;
                point.total_power_w = demand(point.sustained_gflops);
            } else {
                point.sustained_gflops =
                    std::max(0.0, (cap - statics) / (cpu_dyn / peak + c_mix / ai));
                point.total_power_w = cap;
            }
            const double traffic = point.sustained_gflops / ai;
            point.memory_power_w = mem_static + c_mix * traffic;
            point.cpu_power_w = point.total_power_w - point.memory_power_w;
            point.efficiency_gflops_per_j =
                point.total_power_w > 0 ? point.sustained_gflops / point.total_power_w : 0;
            result.points.push_back(point);
        }
    }
    return result;
}

}  // namespace

SweepResult roofline(const MachineConfig& config, const SweepGrid& grid) {
    return compute_plane(config, grid);
}

SweepResult powerline(const MachineConfig& config, const SweepGrid& grid) {
    return compute_plane(config, grid);
}

SweepResult archline(const MachineConfig& config, const SweepGrid& grid) {
    return compute_plane(config, grid);
}

std::string to_csv(const SweepResult& result) {
    std::string out = "ai,distribution_pmm,perf_gflops,power_w,eff_gflops_per_j\n";
    for (const SweepPoint& p : result.points) {
        out += format_g6(p.ai);
        out += ',';
        out += format_g6(p.pmm_fraction);
        out += ',';
        out += format_g6(p.attainable_gflops);
        out += ',';
        out += format_g6(p.total_power_w);
        out += ',';
        out += format_g6(p.efficiency_gflops_per_j);
        out += '\n';
    }
    return out;
}

std::string to_svg(const SweepResult& result, SweepKind kind) {
    const int width = 720, height = 480;
    const int margin_left = 70, margin_right = 20, margin_top = 40, margin_bottom = 50;
    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;

    auto value_of = [kind](const SweepPoint& p) {
        switch (kind) {
            case SweepKind::Roofline: return p.attainable_gflops;
            case SweepKind::Powerline: return p.total_power_w;
            case SweepKind::Archline: return p.efficiency_gflops_per_j;
        }
        return 0.0;
    };

    double x_min = 1e300, x_max = -1e300, y_max = 0;
    for (const SweepPoint& p : result.points) {
        x_min = std::min(x_min, std::log2(p.ai));
        x_max = std::max(x_max, std::log2(p.ai));
        y_max = std::max(y_max, value_of(p));
    }
    if (y_max <= 0) y_max = 1;
    if (x_max <= x_min) x_max = x_min + 1;

    auto x_of = [&](double ai) {
        return margin_left + (std::log2(ai) - x_min) / (x_max - x_min) * plot_w;
    };
    auto y_of = [&](double v) { return margin_top + (1.0 - v / y_max) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" +
           std::string(to_string(kind)) + "</text>\n";
    // Axes.
    svg += "<line x1=\"" + format_g6(margin_left) + "\" y1=\"" + format_g6(margin_top) +
           "\" x2=\"" + format_g6(margin_left) + "\" y2=\"" +
           format_g6(margin_top + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_g6(margin_left) + "\" y1=\"" + format_g6(margin_top + plot_h) +
           "\" x2=\"" + format_g6(margin_left + plot_w) + "\" y2=\"" +
           format_g6(margin_top + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"" + std::to_string(height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           "arithmetic intensity (flops/byte, log2)</text>\n";

    const std::size_t dist_count =
        result.ai_count > 0 ? result.points.size() / result.ai_count : 0;
    for (std::size_t di = 0; di < dist_count; ++di) {
        const int hue = static_cast<int>(di * 330 / std::max<std::size_t>(1, dist_count));
        std::string path = "<polyline fill=\"none\" stroke=\"hsl(" + std::to_string(hue) +
                           ",70%,45%)\" stroke-width=\"1.5\" points=\"";
        for (std::size_t ai = 0; ai < result.ai_count; ++ai) {
            const SweepPoint& p = result.at(di, ai);
            path += format_g6(x_of(p.ai)) + "," + format_g6(y_of(value_of(p))) + " ";
        }
        path += "\"/>\n";
        svg += path;
        const SweepPoint& last = result.at(di, result.ai_count - 1);
        svg += "<text x=\"" + format_g6(margin_left + plot_w + 2) + "\" y=\"" +
               format_g6(y_of(value_of(last))) + "\" font-family=\"sans-serif\" "
               "font-size=\"9\">" + format_g6(last.pmm_fraction * 100) + "%</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

SweepGrid grid_from_json(const std::string& json_text) {
    using json = nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("grid document is not valid JSON: ") + e.what());
    }
    SweepGrid grid = SweepGrid::defaults();
    try {
        if (doc.contains("ai_values")) grid.ai_values = doc["ai_values"].get<std::vector<double>>();
        if (doc.contains("distributions")) {
            grid.distributions = doc["distributions"].get<std::vector<double>>();
        }
    } catch (const json::exception&) {
        throw ValidationError("grid document has a field with the wrong type");
    }
    validate(grid);
    return grid;
}

}  // namespace tierperf
