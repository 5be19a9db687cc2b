#include "qdp/encoder/qdp.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <string>

namespace qdp::encoder {

using ir::Circuit;
using ir::Gate;
using ir::QubitRef;
using ir::RegisterId;
using ir::RegisterRole;

std::string_view to_string(McxMode mode) {
    return mode == McxMode::ccnot_chain ? "chain" : "single-ancilla";
}

McxMode parse_mcx_mode(std::string_view text) {
    if (text == "chain" || text == "ccnot_chain" || text == "ccnot-chain") {
        return McxMode::ccnot_chain;
    }
    if (text == "single-ancilla" || text == "single_ancilla") {
        return McxMode::single_ancilla;
    }
    throw ConfigError("unknown MCX mode '" + std::string(text) + "' (expected chain or single-ancilla)");
}

std::size_t QdpLayout::ancilla_count() const {
    if (mcx_mode == McxMode::single_ancilla) {
        return 1;
    }
    const std::size_t widest = std::max({w, h, static_cast<std::size_t>(d)});
    return widest >= 3 ? widest - 2 : 0;
}

QdpLayout QdpLayout::for_pair(const SymbolSequence& r, const SymbolSequence& q, McxMode mode) {
    if (r.d != q.d) {
        throw PreconditionError("sequences disagree on data width; pad them as a pair first");
    }
    QdpLayout layout;
    layout.w = r.index_bits();
    layout.h = q.index_bits();
    layout.d = r.d;
    layout.mcx_mode = mode;
    return layout;
}

QdpRegisters find_qdp_registers(const Circuit& circuit) {
    auto one = [&](RegisterRole role, const char* what) {
        const auto ids = circuit.registers_with_role(role);
        if (ids.empty()) {
            throw StructuralError(std::string("circuit has no ") + what + " register");
        }
        return ids.front();
    };
    QdpRegisters regs;
    regs.x = one(RegisterRole::index_x, "x");
    regs.d_r = one(RegisterRole::data_r, "D_R");
    regs.y = one(RegisterRole::index_y, "y");
    regs.d_q = one(RegisterRole::data_q, "D_Q");
    regs.v = one(RegisterRole::value_v, "v");
    if (const auto anc = circuit.registers_with_role(RegisterRole::ancilla); !anc.empty()) {
        regs.ancilla = anc.front();
    }
    return regs;
}

Circuit init_registers(const QdpLayout& layout) {
    if (layout.w == 0 || layout.h == 0 || layout.d == 0) {
        throw PreconditionError("layout sizes must be positive");
    }
    Circuit c;
    const auto x = c.add_register("x", layout.w, RegisterRole::index_x);
    c.add_register("D_R", layout.d, RegisterRole::data_r);
    const auto y = c.add_register("y", layout.h, RegisterRole::index_y);
    c.add_register("D_Q", layout.d, RegisterRole::data_q);
    c.add_register("v", 1, RegisterRole::value_v);
    if (const auto n = layout.ancilla_count(); n > 0) {
        c.add_register("anc", n, RegisterRole::ancilla);
    }
    std::vector<Gate> hs;
    for (const auto& q : c.qubits(x)) {
        hs.push_back(Gate::h(q));
    }
    for (const auto& q : c.qubits(y)) {
        hs.push_back(Gate::h(q));
    }
    c.append_stage(std::string(ir::stage::init), std::move(hs));
    return c;
}

std::vector<Gate> mcx_gates(const Circuit& circuit, const std::vector<logic::McxDescriptor>& mcx, RegisterId index_reg,
                            RegisterId data_reg) {
    std::vector<Gate> gates;
    gates.reserve(mcx.size());
    for (const auto& m : mcx) {
        const QubitRef target = circuit.qubit(data_reg, m.target_bit);
        if (m.controls.empty()) {
            gates.push_back(Gate::x(target));
            continue;
        }
        std::vector<ir::Control> controls;
        controls.reserve(m.controls.size());
        for (const auto& c : m.controls) {
            controls.push_back({circuit.qubit(index_reg, c.bit), c.polarity});
        }
        gates.push_back(Gate::mcx(std::move(controls), target));
    }
    return gates;
}

Circuit encode_table(Circuit circuit, const logic::PlaTable& table, RegisterId index_reg, RegisterId data_reg,
                     bool use_minimizer) {
    if (circuit.reg(index_reg).size != table.n_inputs) {
        throw PreconditionError("index register '" + circuit.reg(index_reg).name + "' has " +
                                std::to_string(circuit.reg(index_reg).size) + " qubits, table needs " +
                                std::to_string(table.n_inputs));
    }
    if (circuit.reg(data_reg).size != table.n_outputs) {
        throw PreconditionError("data register '" + circuit.reg(data_reg).name + "' has " +
                                std::to_string(circuit.reg(data_reg).size) + " qubits, table needs " +
                                std::to_string(table.n_outputs));
    }
    const auto descriptors =
        use_minimizer ? logic::cubes_to_mcx(logic::d1merge_minimize(table)) : logic::brute_force_mcx(table);
    auto gates = mcx_gates(circuit, descriptors, index_reg, data_reg);
    circuit.append_stage(std::string(ir::stage::neqr), std::move(gates));
    return circuit;
}

Circuit encode_sequence(Circuit circuit, const SymbolSequence& seq, RegisterId index_reg, RegisterId data_reg,
                        bool use_minimizer) {
    return encode_table(std::move(circuit), logic::build_pla(seq), index_reg, data_reg, use_minimizer);
}

Circuit quantum_xor(Circuit circuit, RegisterId d_r, RegisterId d_q) {
    const auto& a = circuit.reg(d_r);
    const auto& b = circuit.reg(d_q);
    if (a.size != b.size) {
        throw PreconditionError("XOR needs data registers of equal size");
    }
    std::vector<Gate> gates;
    for (std::size_t i = 0; i < a.size; ++i) {
        gates.push_back(Gate::cnot(circuit.qubit(d_r, i), circuit.qubit(d_q, i)));
    }
    circuit.append_stage(std::string(ir::stage::dotplot), std::move(gates));
    return circuit;
}

Circuit mark_matches(Circuit circuit, RegisterId d_q, RegisterId v) {
    if (circuit.reg(v).size != 1) {
        throw PreconditionError("v must be a single qubit");
    }
    std::vector<ir::Control> controls;
    for (const auto& q : circuit.qubits(d_q)) {
        controls.push_back({q, ir::Polarity::negative});
    }
    circuit.append(Gate::mcx(std::move(controls), circuit.qubit(v, 0)));
    return circuit;
}

Circuit build_qdp(const SymbolSequence& r, const SymbolSequence& q, const QdpOptions& options) {
    const auto layout = QdpLayout::for_pair(r, q, options.mcx_mode);
    Circuit c = init_registers(layout);
    const auto regs = find_qdp_registers(c);
    c = encode_sequence(std::move(c), r, regs.x, regs.d_r, options.use_minimizer);
    c = encode_sequence(std::move(c), q, regs.y, regs.d_q, options.use_minimizer);
    c = quantum_xor(std::move(c), regs.d_r, regs.d_q);
    c = mark_matches(std::move(c), regs.d_q, regs.v);
    return c;
}

Circuit inverse_qft(Circuit circuit, const std::vector<QubitRef>& qubits) {
    if (qubits.empty()) {
        throw PreconditionError("inverse QFT needs at least one qubit");
    }
    if (std::set<QubitRef>(qubits.begin(), qubits.end()).size() != qubits.size()) {
        throw PreconditionError("inverse QFT qubits must be distinct");
    }
    const std::size_t n = qubits.size();
    // The reversal SWAPs are moved to the end by running the core on the
    // mirrored qubit order.
    std::vector<QubitRef> mirrored(qubits.rbegin(), qubits.rend());
    std::vector<Gate> gates;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const double angle = -std::numbers::pi / static_cast<double>(1ULL << (j - k));
            gates.push_back(Gate::controlled_phase(angle, mirrored[k], mirrored[j]));
        }
        gates.push_back(Gate::h(mirrored[j]));
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        gates.push_back(Gate::swap(qubits[i], qubits[n - 1 - i]));
    }
    circuit.append_stage(std::string(ir::stage::qft), std::move(gates));
    return circuit;
}

std::size_t v_clbit(const QdpLayout& layout) { return layout.w + layout.h; }

Circuit build_qpr(const SymbolSequence& r, const SymbolSequence& q, const QdpOptions& options) {
    const auto layout = QdpLayout::for_pair(r, q, options.mcx_mode);
    Circuit c = build_qdp(r, q, options);
    const auto regs = find_qdp_registers(c);
    c.add_classical_bits(layout.w + layout.h + 1);

    c.append_stage(std::string(ir::stage::measure_v), {Gate::measure(c.qubit(regs.v, 0), v_clbit(layout))});

    std::vector<QubitRef> k = c.qubits(regs.x);
    const auto ys = c.qubits(regs.y);
    k.insert(k.end(), ys.begin(), ys.end());
    c = inverse_qft(std::move(c), k);

    std::vector<Gate> readout;
    for (std::size_t i = 0; i < k.size(); ++i) {
        readout.push_back(Gate::measure(k[i], i));
    }
    c.append_stage(std::string(ir::stage::measure), std::move(readout));
    return c;
}

Circuit build_neqr(const SymbolSequence& seq, const QdpOptions& options) {
    const std::size_t n = seq.index_bits();
    Circuit c;
    const auto x = c.add_register("x", n, RegisterRole::index_x);
    const auto data = c.add_register("D_R", seq.d, RegisterRole::data_r);
    const std::size_t widest = std::max<std::size_t>(n, seq.d);
    const std::size_t anc = options.mcx_mode == McxMode::single_ancilla ? 1 : (widest >= 3 ? widest - 2 : 0);
    if (anc > 0) {
        c.add_register("anc", anc, RegisterRole::ancilla);
    }
    std::vector<Gate> hs;
    for (const auto& q : c.qubits(x)) {
        hs.push_back(Gate::h(q));
    }
    c.append_stage(std::string(ir::stage::init), std::move(hs));
    return encode_sequence(std::move(c), seq, x, data, options.use_minimizer);
}

}  // namespace qdp::encoder
