#pragma once

#include "qdp/ir/circuit.hpp"
#include "qdp/ir/metrics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qdp::sim {

/// Classical bits of every qubit (by global wire) and every classical bit.
struct ToffoliState {
    std::vector<std::uint8_t> bits;
    std::vector<std::uint8_t> classical_bits;

    /// All-zero state sized for `circuit`.
    static ToffoliState zeros(const ir::Circuit& circuit);
    [[nodiscard]] bool bit(const ir::Circuit& circuit, ir::QubitRef q) const { return bits[circuit.wire(q)] != 0; }
    void set(const ir::Circuit& circuit, ir::QubitRef q, bool value) { bits[circuit.wire(q)] = value ? 1 : 0; }
    /// Register value with offset 0 as the least significant bit.
    [[nodiscard]] std::uint64_t value(const ir::Circuit& circuit, ir::RegisterId reg) const;
    void set_value(const ir::Circuit& circuit, ir::RegisterId reg, std::uint64_t value);
};

/// Bit propagation over X, CNOT, CCNOT, MCX (either polarity), SWAP and
/// Measure. Throws SimulationError on any other gate. `range` limits the run
/// to a slice of the gate list.
[[nodiscard]] ToffoliState toffoli_run(const ir::Circuit& circuit, ToffoliState initial,
                                       std::optional<ir::GateRange> range = std::nullopt);

}  // namespace qdp::sim
