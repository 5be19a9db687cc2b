#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdp::transpile {

struct BackendModel {
    std::string name;
    std::size_t qubit_count = 0;
    /// Gate names as reported by ir::gate_name ("h", "cx", "u3", "rxx", ...).
    std::set<std::string> native_gates;
    /// Undirected coupled pairs; absent means all-to-all.
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> coupling_map;
    /// Duration charged per critical-path step.
    std::optional<double> gate_time_seconds;

    [[nodiscard]] bool all_to_all() const { return !coupling_map.has_value(); }
    [[nodiscard]] bool supports(std::string_view gate) const;
    /// Throws ConfigError on an out-of-range or disconnected coupling map or a
    /// non-positive gate time.
    void validate() const;
};

/// Parses the JSON backend description:
/// {"name", "qubit_count", "native_gates": [...], "coupling_map": "all" | [[a, b], ...], "gate_time_ns"}.
[[nodiscard]] BackendModel parse_backend(std::string_view json_text);
[[nodiscard]] BackendModel load_backend(const std::filesystem::path& path);
[[nodiscard]] std::string backend_to_json(const BackendModel& backend);

/// Resolves a preset name ("allsim", "superconducting-53", "ion-40") inside
/// `preset_dir`, or treats `name_or_path` as a file path. Throws ConfigError
/// when neither resolves.
[[nodiscard]] BackendModel resolve_backend(std::string_view name_or_path, const std::filesystem::path& preset_dir);

/// Directory holding the shipped presets (compile-time default, overridable
/// with the QDP_BACKEND_DIR environment variable).
[[nodiscard]] std::filesystem::path default_backend_dir();

}  // namespace qdp::transpile
