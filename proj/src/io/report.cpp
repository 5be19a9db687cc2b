#include "qdp/io/report.hpp"

#include <json.hpp>

#include <cstdio>

namespace qdp::io {

std::string format_runtime(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", seconds);
    return buf;
}

std::size_t stage_depth(const transpile::ResourceReport& report, std::string_view label) {
    const auto it = report.depth_per_stage.find(std::string(label));
    return it == report.depth_per_stage.end() ? 0 : it->second;
}

std::string report_to_json(const transpile::ResourceReport& report) {
    nlohmann::ordered_json j;
    j["dataset"] = report.dataset;
    j["backend"] = report.backend_name;
    j["mcx_mode"] = encoder::to_string(report.mcx_mode);
    j["width"] = report.width;
    j["depth_per_stage"] = report.depth_per_stage;
    j["total_depth"] = report.total_depth;
    j["gate_counts"] = report.gate_counts;
    j["gate_total"] = report.gate_total;
    if (report.estimated_runtime_seconds) {
        j["estimated_runtime_s"] = *report.estimated_runtime_seconds;
        j["estimated_runtime_rounded"] = format_runtime(*report.estimated_runtime_seconds);
    } else {
        j["estimated_runtime_s"] = nullptr;
    }
    j["swaps_inserted"] = report.swaps_inserted;
    if (!report.final_layout.empty()) j["final_layout"] = report.final_layout;
    return j.dump(2);
}

std::string csv_header() {
    return "dataset,mcx_mode,backend,width,neqr_depth,qdp_depth,qft_depth,total_depth,runtime_s";
}

std::string csv_row(const transpile::ResourceReport& report) {
    std::string runtime;
    if (report.estimated_runtime_seconds) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", *report.estimated_runtime_seconds);
        runtime = buf;
    }
    return report.dataset + "," + std::string(encoder::to_string(report.mcx_mode)) + "," + report.backend_name + "," +
           std::to_string(report.width) + "," + std::to_string(stage_depth(report, ir::stage::neqr)) + "," +
           std::to_string(stage_depth(report, ir::stage::dotplot)) + "," +
           std::to_string(stage_depth(report, ir::stage::qft)) + "," + std::to_string(report.total_depth) + "," +
           runtime;
}

}  // namespace qdp::io
