#pragma once

#include "qdp/transpile/lower.hpp"

#include <string>

namespace qdp::io {

/// Seconds rounded to four decimal places, e.g. "0.0166".
[[nodiscard]] std::string format_runtime(double seconds);

/// Depth of a pooled stage, or 0 when the report has no such stage.
[[nodiscard]] std::size_t stage_depth(const transpile::ResourceReport& report, std::string_view label);

[[nodiscard]] std::string report_to_json(const transpile::ResourceReport& report);

/// "dataset,mcx_mode,backend,width,neqr_depth,qdp_depth,qft_depth,total_depth,runtime_s"
[[nodiscard]] std::string csv_header();
/// One CSV line (no trailing newline). qdp_depth is the dot-plot stage; an
/// unknown runtime is left empty.
[[nodiscard]] std::string csv_row(const transpile::ResourceReport& report);

}  // namespace qdp::io
