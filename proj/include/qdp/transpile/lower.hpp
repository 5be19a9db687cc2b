#pragma once

#include "qdp/encoder/qdp.hpp"
#include "qdp/ir/circuit.hpp"
#include "qdp/transpile/backend.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdp::transpile {

using encoder::McxMode;

/// Rewrites every gate into `backend`'s native set. MCX gates are split per
/// target, stripped of negative controls and decomposed per `mode`; chain mode
/// draws clean ancillas from the circuit's ancilla registers (declaring an
/// extra "anc_extra" register when they are too few). Adjacent X pairs on one
/// qubit inside a stage cancel. Stage marks are carried over.
/// Throws PreconditionError when the result does not fit the backend or a gate
/// has no native rewrite.
[[nodiscard]] ir::Circuit lower_to_native(const ir::Circuit& circuit, const BackendModel& backend, McxMode mode);

struct RoutedCircuit {
    /// Circuit over one physical register "q" of backend.qubit_count qubits.
    ir::Circuit circuit;
    /// final_layout[w] = physical qubit holding logical wire w at the end.
    std::vector<std::size_t> final_layout;
    std::size_t swaps_inserted = 0;
};

/// Greedy shortest-path SWAP insertion so that every two-qubit gate acts on a
/// coupled pair. Logical wire i starts on physical qubit i. Measurements read
/// the physical qubit currently holding their logical qubit, into the same
/// classical bit. Requires gates on at most two qubits.
[[nodiscard]] RoutedCircuit route(const ir::Circuit& circuit, const BackendModel& backend);

struct ResourceReport {
    std::string dataset;
    std::string backend_name;
    McxMode mcx_mode = McxMode::ccnot_chain;
    std::size_t width = 0;
    std::map<std::string, std::size_t> depth_per_stage;
    std::size_t total_depth = 0;
    std::map<std::string, std::size_t> gate_counts;
    std::size_t gate_total = 0;
    std::optional<double> estimated_runtime_seconds;
    std::size_t swaps_inserted = 0;
    std::vector<std::size_t> final_layout;
};

[[nodiscard]] double estimated_runtime(std::size_t depth, double gate_time_seconds);

/// Fills a report for an already lowered (and routed) circuit.
[[nodiscard]] ResourceReport make_report(const ir::Circuit& lowered, const BackendModel& backend, McxMode mode);

/// Lowers, routes when the backend has a coupling map, and reports.
[[nodiscard]] ResourceReport estimate(const ir::Circuit& circuit, const BackendModel& backend, McxMode mode);

/// Lowered (and routed) circuit together with its report.
struct Transpiled {
    ir::Circuit circuit;
    ResourceReport report;
};
[[nodiscard]] Transpiled transpile(const ir::Circuit& circuit, const BackendModel& backend, McxMode mode);

/// All-to-all model with x, cx, ccx, h, u1, cu1 and swap: MCX networks lower
/// to CCNOT/CNOT/X (chain) or additionally H and controlled phases (roots of X).
[[nodiscard]] BackendModel logical_backend(std::size_t qubit_count);

/// Qubit-count bounds for two index registers of n bits and data of d bits:
/// (2n + 2d + 1, 3n + 2d - 1).
[[nodiscard]] std::pair<std::size_t, std::size_t> width_bounds(std::size_t n, std::size_t d);

}  // namespace qdp::transpile
