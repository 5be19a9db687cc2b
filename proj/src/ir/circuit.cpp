#include "qdp/ir/circuit.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qdp::ir {

std::string_view to_string(RegisterRole role) {
    switch (role) {
        case RegisterRole::index_x: return "index_x";
        case RegisterRole::index_y: return "index_y";
        case RegisterRole::data_r: return "data_r";
        case RegisterRole::data_q: return "data_q";
        case RegisterRole::value_v: return "value_v";
        case RegisterRole::ancilla: return "ancilla";
        case RegisterRole::other: return "other";
    }
    return "other";
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -log2_den); }

Gate Gate::h(QubitRef q) {
    Gate g;
    g.kind = GateKind::H;
    g.targets = {q};
    return g;
}

Gate Gate::x(QubitRef q) {
    Gate g;
    g.kind = GateKind::X;
    g.targets = {q};
    return g;
}

Gate Gate::cnot(QubitRef control, QubitRef target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.controls = {{control, Polarity::positive}};
    g.targets = {target};
    return g;
}

Gate Gate::ccnot(QubitRef c0, QubitRef c1, QubitRef target) {
    Gate g;
    g.kind = GateKind::CCNOT;
    g.controls = {{c0, Polarity::positive}, {c1, Polarity::positive}};
    g.targets = {target};
    return g;
}

Gate Gate::mcx(std::vector<Control> controls, QubitRef target) {
    Gate g;
    const bool all_positive = std::all_of(controls.begin(), controls.end(),
                                          [](const Control& c) { return c.polarity == Polarity::positive; });
    if (all_positive && controls.size() == 1) {
        g.kind = GateKind::CNOT;
    } else if (all_positive && controls.size() == 2) {
        g.kind = GateKind::CCNOT;
    } else {
        g.kind = GateKind::MCX;
    }
    g.controls = std::move(controls);
    g.targets = {target};
    return g;
}

Gate Gate::swap(QubitRef a, QubitRef b) {
    Gate g;
    g.kind = GateKind::SWAP;
    g.targets = {a, b};
    return g;
}

Gate Gate::phase(double angle, QubitRef q) {
    Gate g;
    g.kind = GateKind::Phase;
    g.angle = angle;
    g.targets = {q};
    return g;
}

Gate Gate::controlled_phase(double angle, QubitRef control, QubitRef target) {
    Gate g;
    g.kind = GateKind::ControlledPhase;
    g.angle = angle;
    g.controls = {{control, Polarity::positive}};
    g.targets = {target};
    return g;
}

Gate Gate::root_x(Dyadic exponent, std::vector<QubitRef> controls, QubitRef target) {
    Gate g;
    g.kind = GateKind::RootX;
    g.exponent = exponent;
    for (const auto& c : controls) {
        g.controls.push_back({c, Polarity::positive});
    }
    g.targets = {target};
    return g;
}

Gate Gate::measure(QubitRef q, std::size_t clbit) {
    Gate g;
    g.kind = GateKind::Measure;
    g.targets = {q};
    g.clbit = clbit;
    return g;
}

Gate Gate::native(std::string name, std::vector<double> params, std::vector<QubitRef> qubits) {
    if (params.size() > 3) {
        throw StructuralError("native gate '" + name + "' has more than 3 parameters");
    }
    Gate g;
    g.kind = GateKind::Native;
    g.name = std::move(name);
    g.num_params = static_cast<std::uint8_t>(params.size());
    std::copy(params.begin(), params.end(), g.params.begin());
    g.targets = std::move(qubits);
    return g;
}

std::string gate_name(const Gate& gate) {
    switch (gate.kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::CNOT: return "cx";
        case GateKind::CCNOT: return "ccx";
        case GateKind::MCX: return "mcx";
        case GateKind::SWAP: return "swap";
        case GateKind::Phase: return "u1";
        case GateKind::ControlledPhase: return "cu1";
        case GateKind::RootX: return "rootx";
        case GateKind::Measure: return "measure";
        case GateKind::Native: return gate.name;
    }
    return "?";
}

RegisterId Circuit::add_register(std::string name, std::size_t size, RegisterRole role) {
    if (size == 0) {
        throw StructuralError("register '" + name + "' must have at least one qubit");
    }
    if (find_register(name)) {
        throw StructuralError("duplicate register name '" + name + "'");
    }
    const auto id = static_cast<RegisterId>(registers_.size());
    registers_.push_back({id, std::move(name), size, role});
    offsets_.push_back(total_qubits_);
    total_qubits_ += size;
    return id;
}

std::size_t Circuit::add_classical_bits(std::size_t count) {
    const std::size_t first = classical_bits_;
    classical_bits_ += count;
    return first;
}

const Register& Circuit::reg(RegisterId id) const {
    if (id >= registers_.size()) {
        throw StructuralError("undeclared register id " + std::to_string(id));
    }
    return registers_[id];
}

std::optional<RegisterId> Circuit::find_register(std::string_view name) const {
    for (const auto& r : registers_) {
        if (r.name == name) {
            return r.id;
        }
    }
    return std::nullopt;
}

std::vector<RegisterId> Circuit::registers_with_role(RegisterRole role) const {
    std::vector<RegisterId> out;
    for (const auto& r : registers_) {
        if (r.role == role) {
            out.push_back(r.id);
        }
    }
    return out;
}

QubitRef Circuit::qubit(RegisterId id, std::size_t offset) const {
    const auto& r = reg(id);
    if (offset >= r.size) {
        throw StructuralError("offset " + std::to_string(offset) + " out of range for register '" + r.name + "'");
    }
    return {id, static_cast<std::uint32_t>(offset)};
}

std::vector<QubitRef> Circuit::qubits(RegisterId id) const {
    const auto& r = reg(id);
    std::vector<QubitRef> out;
    out.reserve(r.size);
    for (std::size_t i = 0; i < r.size; ++i) {
        out.push_back({id, static_cast<std::uint32_t>(i)});
    }
    return out;
}

QubitRef Circuit::ref_of_wire(std::size_t wire) const {
    if (wire >= total_qubits_) {
        throw StructuralError("wire " + std::to_string(wire) + " out of range");
    }
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), wire);
    const auto id = static_cast<RegisterId>(std::distance(offsets_.begin(), it) - 1);
    return {id, static_cast<std::uint32_t>(wire - offsets_[id])};
}

std::vector<StageRange> Circuit::stages() const {
    std::vector<StageRange> out;
    for (std::size_t i = 0; i < marks_.size(); ++i) {
        const std::size_t end = i + 1 < marks_.size() ? marks_[i + 1].gate_index : gates_.size();
        out.push_back({marks_[i].label, marks_[i].gate_index, end});
    }
    return out;
}

void Circuit::validate(const Gate& gate) const {
    auto check_ref = [&](const QubitRef& q) {
        if (q.reg >= registers_.size()) {
            throw StructuralError("gate '" + gate_name(gate) + "' references undeclared register id " +
                                  std::to_string(q.reg));
        }
        if (q.offset >= registers_[q.reg].size) {
            throw StructuralError("gate '" + gate_name(gate) + "' references " + registers_[q.reg].name + "[" +
                                  std::to_string(q.offset) + "] beyond its size");
        }
    };
    std::vector<std::size_t> wires;
    for (const auto& t : gate.targets) {
        check_ref(t);
        wires.push_back(wire(t));
    }
    for (const auto& c : gate.controls) {
        check_ref(c.qubit);
        wires.push_back(wire(c.qubit));
    }
    std::sort(wires.begin(), wires.end());
    if (std::adjacent_find(wires.begin(), wires.end()) != wires.end()) {
        throw StructuralError("gate '" + gate_name(gate) + "' uses a qubit more than once");
    }

    const auto n_ctrl = gate.controls.size();
    const auto n_tgt = gate.targets.size();
    const bool all_positive = std::all_of(gate.controls.begin(), gate.controls.end(),
                                          [](const Control& c) { return c.polarity == Polarity::positive; });
    auto require = [&](bool ok, const char* what) {
        if (!ok) {
            throw StructuralError("malformed '" + gate_name(gate) + "' gate: " + what);
        }
    };
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Phase:
            require(n_ctrl == 0 && n_tgt == 1, "expects one target and no controls");
            break;
        case GateKind::CNOT:
            require(n_ctrl == 1 && all_positive && n_tgt == 1, "expects one positive control and one target");
            break;
        case GateKind::CCNOT:
            require(n_ctrl == 2 && all_positive && n_tgt == 1, "expects two positive controls and one target");
            break;
        case GateKind::MCX:
            require(n_ctrl >= 1 && n_tgt >= 1, "expects at least one control and one target");
            break;
        case GateKind::SWAP:
            require(n_ctrl == 0 && n_tgt == 2, "expects two targets");
            break;
        case GateKind::ControlledPhase:
            require(n_ctrl == 1 && all_positive && n_tgt == 1, "expects one positive control and one target");
            require(std::isfinite(gate.angle), "angle must be finite");
            break;
        case GateKind::RootX: {
            require(n_tgt == 1 && all_positive, "expects one target and positive controls");
            const auto e = gate.exponent;
            require((e.num == 1 || e.num == -1) && e.log2_den >= 1 && e.log2_den <= 3,
                    "exponent must be one of +-1/2, +-1/4, +-1/8");
            break;
        }
        case GateKind::Measure:
            require(n_ctrl == 0 && n_tgt == 1, "expects one target");
            require(gate.clbit < classical_bits_, "classical bit out of range");
            break;
        case GateKind::Native:
            require(n_ctrl == 0 && n_tgt >= 1 && !gate.name.empty(), "expects a name and at least one qubit");
            break;
    }
    if (gate.kind == GateKind::Phase) {
        require(std::isfinite(gate.angle), "angle must be finite");
    }
}

void Circuit::append(Gate gate) {
    validate(gate);
    gates_.push_back(std::move(gate));
}

void Circuit::mark_stage(std::string label) { marks_.push_back({gates_.size(), std::move(label)}); }

void Circuit::append_stage(std::string label, std::vector<Gate> gates) {
    for (const auto& g : gates) {
        validate(g);
    }
    mark_stage(std::move(label));
    gates_.reserve(gates_.size() + gates.size());
    for (auto& g : gates) {
        gates_.push_back(std::move(g));
    }
}

Circuit append_stage(Circuit circuit, std::string label, std::vector<Gate> gates) {
    circuit.append_stage(std::move(label), std::move(gates));
    return circuit;
}

}  // namespace qdp::ir
