#pragma once

#include "qdp/ir/circuit.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace qdp::ir {

/// Half-open gate-index interval [begin, end).
struct GateRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Number of qubits touched by at least one gate or measurement.
[[nodiscard]] std::size_t width(const Circuit& circuit);

/// Critical-path length. Two gates conflict iff they share a qubit or a
/// classical bit; every gate costs one step.
[[nodiscard]] std::size_t depth(const Circuit& circuit, std::optional<GateRange> range = std::nullopt);

/// Depth of each stage label, computed over the gates carrying that label
/// only. Repeated labels are pooled.
[[nodiscard]] std::map<std::string, std::size_t> stage_depths(const Circuit& circuit);

/// Gate count per stage label.
[[nodiscard]] std::map<std::string, std::size_t> stage_gate_counts(const Circuit& circuit);

[[nodiscard]] std::map<std::string, std::size_t> gate_counts(const Circuit& circuit);

}  // namespace qdp::ir
