#pragma once

#include "qdp/error.hpp"
#include "qdp/ir/circuit.hpp"
#include "qdp/ir/unitary.hpp"

#include <cstdint>
#include <vector>

namespace qdp::sim::detail {

// Gate resolved to global wires and matrices.
struct Op {
    enum class Type { one, swap, two, measure };
    Type type = Type::one;
    std::vector<std::size_t> targets;
    std::vector<std::size_t> controls;
    std::vector<bool> control_values;
    std::uint64_t control_mask = 0;
    std::uint64_t control_value = 0;
    ir::Mat2 m{};
    ir::Mat4 m4{};
    bool x_like = false;
    std::size_t clbit = 0;
};

inline Op compile(const ir::Circuit& circuit, const ir::Gate& g) {
    Op op;
    for (const auto& t : g.targets) {
        op.targets.push_back(circuit.wire(t));
    }
    for (const auto& c : g.controls) {
        const auto w = circuit.wire(c.qubit);
        const bool positive = c.polarity == ir::Polarity::positive;
        op.controls.push_back(w);
        op.control_values.push_back(positive);
        if (w < 64) {
            op.control_mask |= std::uint64_t{1} << w;
            if (positive) {
                op.control_value |= std::uint64_t{1} << w;
            }
        }
    }
    switch (g.kind) {
        case ir::GateKind::Measure:
            op.type = Op::Type::measure;
            op.clbit = g.clbit;
            return op;
        case ir::GateKind::SWAP: op.type = Op::Type::swap; return op;
        case ir::GateKind::X:
        case ir::GateKind::CNOT:
        case ir::GateKind::CCNOT:
        case ir::GateKind::MCX:
            op.m = ir::pauli_x_matrix();
            op.x_like = true;
            return op;
        default: break;
    }
    if (g.kind == ir::GateKind::Native && g.name == "rxx" && g.targets.size() == 2) {
        op.type = Op::Type::two;
        op.m4 = ir::rxx_matrix(g.params[0]);
        return op;
    }
    if (g.targets.size() == 1) {
        if (const auto m = ir::target_matrix(g)) {
            op.m = *m;
            return op;
        }
    }
    throw SimulationError("no simulation rule for gate '" + ir::gate_name(g) + "'");
}

inline std::vector<Op> compile(const ir::Circuit& circuit, std::size_t begin, std::size_t end) {
    std::vector<Op> ops;
    ops.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        ops.push_back(compile(circuit, circuit.gates()[i]));
    }
    return ops;
}

}  // namespace qdp::sim::detail
