#include "qdp/sim/toffoli.hpp"

#include "program.hpp"

#include <utility>

namespace qdp::sim {

ToffoliState ToffoliState::zeros(const ir::Circuit& circuit) {
    ToffoliState s;
    s.bits.assign(circuit.num_qubits(), 0);
    s.classical_bits.assign(circuit.classical_bits(), 0);
    return s;
}

std::uint64_t ToffoliState::value(const ir::Circuit& circuit, ir::RegisterId reg) const {
    std::uint64_t v = 0;
    const auto& r = circuit.reg(reg);
    for (std::size_t i = 0; i < r.size && i < 64; ++i) {
        if (bits[circuit.wire(circuit.qubit(reg, i))]) {
            v |= std::uint64_t{1} << i;
        }
    }
    return v;
}

void ToffoliState::set_value(const ir::Circuit& circuit, ir::RegisterId reg, std::uint64_t value) {
    const auto& r = circuit.reg(reg);
    for (std::size_t i = 0; i < r.size; ++i) {
        bits[circuit.wire(circuit.qubit(reg, i))] = i < 64 ? ((value >> i) & 1U) : 0;
    }
}

ToffoliState toffoli_run(const ir::Circuit& circuit, ToffoliState state, std::optional<ir::GateRange> range) {
    if (state.bits.size() != circuit.num_qubits() || state.classical_bits.size() != circuit.classical_bits()) {
        throw SimulationError("Toffoli state does not match the circuit's registers");
    }
    const std::size_t begin = range ? range->begin : 0;
    const std::size_t end = range ? range->end : circuit.size();
    for (std::size_t i = begin; i < end; ++i) {
        const auto& g = circuit.gates()[i];
        switch (g.kind) {
            case ir::GateKind::X:
            case ir::GateKind::CNOT:
            case ir::GateKind::CCNOT:
            case ir::GateKind::MCX: {
                bool fire = true;
                for (const auto& c : g.controls) {
                    const bool bit = state.bits[circuit.wire(c.qubit)] != 0;
                    if (bit != (c.polarity == ir::Polarity::positive)) {
                        fire = false;
                        break;
                    }
                }
                if (fire) {
                    for (const auto& t : g.targets) {
                        state.bits[circuit.wire(t)] ^= 1U;
                    }
                }
                break;
            }
            case ir::GateKind::SWAP:
                std::swap(state.bits[circuit.wire(g.targets[0])], state.bits[circuit.wire(g.targets[1])]);
                break;
            case ir::GateKind::Measure: state.classical_bits[g.clbit] = state.bits[circuit.wire(g.targets[0])]; break;
            default:
                throw SimulationError("Toffoli engine cannot apply '" + ir::gate_name(g) +
                                      "': it does not support superpositions");
        }
    }
    return state;
}

}  // namespace qdp::sim
