#include "qdp/transpile/lower.hpp"

#include "qdp/error.hpp"
#include "qdp/ir/metrics.hpp"
#include "qdp/ir/unitary.hpp"
#include "qdp/transpile/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace qdp::transpile {

using ir::Circuit;
using ir::Gate;
using ir::GateKind;
using ir::Polarity;
using ir::QubitRef;

namespace {

constexpr double kAngleEps = 1e-12;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return std::abs(a) < kAngleEps ? 0.0 : a;
}

// Calls `fn` once per gate range: the unmarked prefix (label empty) and each stage.
template <typename Fn>
void for_each_stage(const Circuit& circuit, Fn&& fn) {
    const auto stages = circuit.stages();
    const std::size_t first = stages.empty() ? circuit.size() : stages.front().begin;
    if (first > 0) {
        fn(std::string{}, std::size_t{0}, first, false);
    }
    for (const auto& s : stages) {
        fn(s.label, s.begin, s.end, true);
    }
}

Circuit copy_shape(const Circuit& in) {
    Circuit out;
    for (const auto& r : in.registers()) {
        out.add_register(r.name, r.size, r.role);
    }
    out.add_classical_bits(in.classical_bits());
    return out;
}

std::size_t controls_after_split(const Gate& g) { return g.controls.size(); }

// Drops X pairs on one qubit with nothing else on that qubit between them.
std::vector<Gate> cancel_x_pairs(std::vector<Gate> gates, const Circuit& shape) {
    std::vector<std::ptrdiff_t> pending(shape.num_qubits(), -1);
    std::vector<bool> dead(gates.size(), false);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.kind == GateKind::X) {
            const auto w = shape.wire(g.targets.front());
            if (pending[w] >= 0) {
                dead[static_cast<std::size_t>(pending[w])] = true;
                dead[i] = true;
                pending[w] = -1;
            } else {
                pending[w] = static_cast<std::ptrdiff_t>(i);
            }
            continue;
        }
        for (const auto& t : g.targets) {
            pending[shape.wire(t)] = -1;
        }
        for (const auto& c : g.controls) {
            pending[shape.wire(c.qubit)] = -1;
        }
    }
    std::vector<Gate> out;
    out.reserve(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!dead[i]) {
            out.push_back(std::move(gates[i]));
        }
    }
    return out;
}

struct McxLowering {
    McxMode mode;
    std::vector<QubitRef> ancillas;
    const BackendModel& backend;

    void lower(const Gate& g, std::vector<Gate>& out) const {
        const bool controlled_x = g.is_x_family() && g.kind != GateKind::X;
        if (!controlled_x || backend.supports(ir::gate_name(g))) {
            out.push_back(g);
            return;
        }
        for (const auto& target : g.targets) {
            const Gate single = Gate::mcx(g.controls, target);
            for (const Gate& part : rewrite_negative_controls(single)) {
                if (part.kind == GateKind::X || part.controls.size() <= 2) {
                    out.push_back(part);
                    continue;
                }
                std::vector<Gate> pieces;
                if (mode == McxMode::ccnot_chain) {
                    pieces = decompose_mcx_chain(part, ancillas);
                } else {
                    if (part.controls.size() >= 5 && ancillas.empty()) {
                        throw PreconditionError("single-ancilla lowering has no ancilla qubit");
                    }
                    pieces = decompose_mcx_single_ancilla(part, ancillas.empty() ? QubitRef{} : ancillas.front());
                }
                out.insert(out.end(), pieces.begin(), pieces.end());
            }
        }
    }
};

struct NativeLowering {
    const BackendModel& backend;

    [[nodiscard]] bool has(std::string_view name) const { return backend.supports(name); }

    void single_qubit(const ir::Mat2& u, QubitRef q, std::vector<Gate>& out) const {
        const bool diagonal = std::abs(u[1]) < kAngleEps && std::abs(u[2]) < kAngleEps;
        if (has("u3") || has("u1")) {
            if (diagonal && has("u1")) {
                const double lambda = wrap_angle(std::arg(u[3] / u[0]));
                if (lambda != 0.0) {
                    out.push_back(Gate::phase(lambda, q));
                }
                return;
            }
            if (has("u3")) {
                const auto a = ir::zyz_angles(u);
                if (has("u2") && std::abs(a.theta - std::numbers::pi / 2.0) < kAngleEps) {
                    out.push_back(Gate::native("u2", {wrap_angle(a.phi), wrap_angle(a.lambda)}, {q}));
                } else {
                    out.push_back(
                        Gate::native("u3", {wrap_angle(a.theta), wrap_angle(a.phi), wrap_angle(a.lambda)}, {q}));
                }
                return;
            }
        }
        if (has("rx") && has("ry")) {
            // H U H = Rz(phi) Ry(theta) Rz(lambda)  =>  U = Rx(phi) Ry(-theta) Rx(lambda).
            const auto h = ir::hadamard_matrix();
            const auto a = ir::zyz_angles(ir::mul(h, ir::mul(u, h)));
            const double first = wrap_angle(a.lambda);
            const double middle = wrap_angle(-a.theta);
            const double last = wrap_angle(a.phi);
            if (first != 0.0) out.push_back(Gate::native("rx", {first}, {q}));
            if (middle != 0.0) out.push_back(Gate::native("ry", {middle}, {q}));
            if (last != 0.0) out.push_back(Gate::native("rx", {last}, {q}));
            return;
        }
        throw PreconditionError("backend '" + backend.name + "' has no single-qubit rotation family");
    }

    void cnot(QubitRef c, QubitRef t, std::vector<Gate>& out) const {
        if (has("cx")) {
            out.push_back(Gate::cnot(c, t));
            return;
        }
        if (has("rxx")) {
            // CNOT = (Rz(-pi/2) H (x) Rx(-pi/2)) . RXX(pi/2) . (H (x) I), up to global phase.
            const auto h = ir::hadamard_matrix();
            single_qubit(h, c, out);
            out.push_back(Gate::native("rxx", {std::numbers::pi / 2.0}, {c, t}));
            single_qubit(ir::mul(ir::rz_matrix(-std::numbers::pi / 2.0), h), c, out);
            single_qubit(ir::rx_matrix(-std::numbers::pi / 2.0), t, out);
            return;
        }
        throw PreconditionError("backend '" + backend.name + "' cannot express a CNOT");
    }

    void lower(const Gate& g, std::vector<Gate>& out) const {
        if (g.kind == GateKind::Measure || has(ir::gate_name(g))) {
            out.push_back(g);
            return;
        }
        auto recurse = [&](const std::vector<Gate>& gates) {
            for (const auto& x : gates) {
                lower(x, out);
            }
        };
        switch (g.kind) {
            case GateKind::CNOT: cnot(g.controls[0].qubit, g.targets[0], out); return;
            case GateKind::CCNOT:
                recurse(toffoli_network(g.controls[0].qubit, g.controls[1].qubit, g.targets[0]));
                return;
            case GateKind::SWAP: {
                const auto a = g.targets[0];
                const auto b = g.targets[1];
                recurse({Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)});
                return;
            }
            case GateKind::ControlledPhase: {
                const auto c = g.controls[0].qubit;
                const auto t = g.targets[0];
                const double half = g.angle / 2.0;
                recurse({Gate::phase(half, c), Gate::cnot(c, t), Gate::phase(-half, t), Gate::cnot(c, t),
                         Gate::phase(half, t)});
                return;
            }
            case GateKind::RootX:
                if (g.controls.size() == 1) {
                    const auto c = g.controls[0].qubit;
                    const auto t = g.targets[0];
                    recurse({Gate::h(t), Gate::controlled_phase(std::numbers::pi * g.exponent.value(), c, t),
                             Gate::h(t)});
                    return;
                }
                if (g.controls.empty()) {
                    single_qubit(ir::root_x_matrix(g.exponent.value()), g.targets[0], out);
                    return;
                }
                break;
            case GateKind::H:
            case GateKind::X:
            case GateKind::Phase:
            case GateKind::Native:
                if (g.targets.size() == 1 && g.controls.empty()) {
                    if (const auto m = ir::target_matrix(g)) {
                        single_qubit(*m, g.targets[0], out);
                        return;
                    }
                }
                break;
            case GateKind::MCX:
            case GateKind::Measure: break;
        }
        throw PreconditionError("no native rewrite of '" + ir::gate_name(g) + "' for backend '" + backend.name + "'");
    }
};

std::size_t needed_ancillas(const Circuit& circuit, McxMode mode, const BackendModel& backend) {
    std::size_t need = 0;
    for (const auto& g : circuit.gates()) {
        if (!g.is_x_family() || g.kind == GateKind::X || backend.supports(ir::gate_name(g))) {
            continue;
        }
        const std::size_t c = controls_after_split(g);
        if (mode == McxMode::ccnot_chain && c >= 3) {
            need = std::max(need, c - 2);
        } else if (mode == McxMode::single_ancilla && c >= 5) {
            need = 1;
        }
    }
    return need;
}

}  // namespace

Circuit lower_to_native(const Circuit& circuit, const BackendModel& backend, McxMode mode) {
    Circuit out = copy_shape(circuit);

    std::vector<QubitRef> ancillas;
    for (const auto id : circuit.registers_with_role(ir::RegisterRole::ancilla)) {
        for (const auto& q : circuit.qubits(id)) {
            ancillas.push_back(q);
        }
    }
    const std::size_t need = needed_ancillas(circuit, mode, backend);
    if (ancillas.size() < need) {
        const auto extra = out.add_register("anc_extra", need - ancillas.size(), ir::RegisterRole::ancilla);
        for (const auto& q : out.qubits(extra)) {
            ancillas.push_back(q);
        }
    }
    if (out.num_qubits() > backend.qubit_count) {
        throw PreconditionError("circuit needs " + std::to_string(out.num_qubits()) + " qubits, backend '" +
                                backend.name + "' has " + std::to_string(backend.qubit_count));
    }

    const McxLowering mcx{mode, ancillas, backend};
    const NativeLowering native{backend};
    for_each_stage(circuit, [&](const std::string& label, std::size_t begin, std::size_t end, bool marked) {
        std::vector<Gate> logical;
        for (std::size_t i = begin; i < end; ++i) {
            mcx.lower(circuit.gates()[i], logical);
        }
        logical = cancel_x_pairs(std::move(logical), out);
        std::vector<Gate> lowered;
        lowered.reserve(logical.size());
        for (const auto& g : logical) {
            native.lower(g, lowered);
        }
        if (marked) {
            out.append_stage(label, std::move(lowered));
        } else {
            for (auto& g : lowered) {
                out.append(std::move(g));
            }
        }
    });
    return out;
}

RoutedCircuit route(const Circuit& circuit, const BackendModel& backend) {
    const std::size_t n_phys = backend.qubit_count;
    const std::size_t n_log = circuit.num_qubits();
    if (n_log > n_phys) {
        throw PreconditionError("circuit needs " + std::to_string(n_log) + " qubits, backend '" + backend.name +
                                "' has " + std::to_string(n_phys));
    }
    backend.validate();

    RoutedCircuit result;
    Circuit& out = result.circuit;
    const auto q = out.add_register("q", n_phys, ir::RegisterRole::other);
    out.add_classical_bits(circuit.classical_bits());

    std::vector<std::vector<std::size_t>> adj(n_phys);
    std::vector<std::vector<bool>> coupled(n_phys, std::vector<bool>(n_phys, backend.all_to_all()));
    if (backend.coupling_map) {
        for (const auto& [a, b] : *backend.coupling_map) {
            adj[a].push_back(b);
            adj[b].push_back(a);
            coupled[a][b] = coupled[b][a] = true;
        }
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    }

    constexpr std::size_t kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> l2p(n_log);
    std::vector<std::size_t> p2l(n_phys, kFree);
    for (std::size_t i = 0; i < n_log; ++i) {
        l2p[i] = i;
        p2l[i] = i;
    }

    auto shortest_path = [&](std::size_t from, std::size_t to) {
        std::vector<std::size_t> parent(n_phys, kFree);
        std::queue<std::size_t> todo;
        todo.push(from);
        parent[from] = from;
        while (!todo.empty()) {
            const auto u = todo.front();
            todo.pop();
            if (u == to) {
                break;
            }
            for (const auto w : adj[u]) {
                if (parent[w] == kFree) {
                    parent[w] = u;
                    todo.push(w);
                }
            }
        }
        if (parent[to] == kFree) {
            throw PreconditionError("coupling map of '" + backend.name + "' is disconnected");
        }
        std::vector<std::size_t> path;
        for (std::size_t v = to; v != from; v = parent[v]) {
            path.push_back(v);
        }
        path.push_back(from);
        std::reverse(path.begin(), path.end());
        return path;
    };

    const NativeLowering native{backend};
    auto phys = [&](const QubitRef& r) { return out.qubit(q, l2p[circuit.wire(r)]); };

    for_each_stage(circuit, [&](const std::string& label, std::size_t begin, std::size_t end, bool marked) {
        std::vector<Gate> routed;
        for (std::size_t i = begin; i < end; ++i) {
            const Gate& g = circuit.gates()[i];
            std::vector<std::size_t> wires;
            for (const auto& c : g.controls) wires.push_back(circuit.wire(c.qubit));
            for (const auto& t : g.targets) wires.push_back(circuit.wire(t));
            if (wires.size() > 2 && !backend.all_to_all()) {
                throw PreconditionError("route: gate '" + ir::gate_name(g) + "' acts on more than two qubits");
            }
            if (wires.size() == 2 && !coupled[l2p[wires[0]]][l2p[wires[1]]]) {
                const auto path = shortest_path(l2p[wires[0]], l2p[wires[1]]);
                for (std::size_t k = 0; k + 2 < path.size(); ++k) {
                    const std::size_t a = path[k];
                    const std::size_t b = path[k + 1];
                    native.lower(Gate::swap(out.qubit(q, a), out.qubit(q, b)), routed);
                    ++result.swaps_inserted;
                    std::swap(p2l[a], p2l[b]);
                    if (p2l[a] != kFree) l2p[p2l[a]] = a;
                    if (p2l[b] != kFree) l2p[p2l[b]] = b;
                }
            }
            Gate mapped = g;
            for (auto& c : mapped.controls) c.qubit = phys(c.qubit);
            for (auto& t : mapped.targets) t = phys(t);
            routed.push_back(std::move(mapped));
        }
        if (marked) {
            out.append_stage(label, std::move(routed));
        } else {
            for (auto& g : routed) {
                out.append(std::move(g));
            }
        }
    });
    result.final_layout = l2p;
    return result;
}

double estimated_runtime(std::size_t depth, double gate_time_seconds) {
    return static_cast<double>(depth) * gate_time_seconds;
}

ResourceReport make_report(const Circuit& lowered, const BackendModel& backend, McxMode mode) {
    ResourceReport r;
    r.backend_name = backend.name;
    r.mcx_mode = mode;
    r.width = ir::width(lowered);
    r.depth_per_stage = ir::stage_depths(lowered);
    r.total_depth = ir::depth(lowered);
    r.gate_counts = ir::gate_counts(lowered);
    r.gate_total = lowered.size();
    if (backend.gate_time_seconds) {
        r.estimated_runtime_seconds = estimated_runtime(r.total_depth, *backend.gate_time_seconds);
    }
    return r;
}

Transpiled transpile(const Circuit& circuit, const BackendModel& backend, McxMode mode) {
    Circuit lowered = lower_to_native(circuit, backend, mode);
    if (backend.all_to_all()) {
        auto report = make_report(lowered, backend, mode);
        return {std::move(lowered), std::move(report)};
    }
    auto routed = route(lowered, backend);
    auto report = make_report(routed.circuit, backend, mode);
    report.swaps_inserted = routed.swaps_inserted;
    report.final_layout = routed.final_layout;
    return {std::move(routed.circuit), std::move(report)};
}

ResourceReport estimate(const Circuit& circuit, const BackendModel& backend, McxMode mode) {
    return transpile(circuit, backend, mode).report;
}

BackendModel logical_backend(std::size_t qubit_count) {
    BackendModel b;
    b.name = "logical";
    b.qubit_count = qubit_count;
    b.native_gates = {"x", "cx", "ccx", "h", "u1", "cu1", "swap"};
    return b;
}

std::pair<std::size_t, std::size_t> width_bounds(std::size_t n, std::size_t d) {
    if (n < 2 || d < 1) {
        throw PreconditionError("width_bounds needs n >= 2 and d >= 1");
    }
    return {2 * n + 2 * d + 1, 3 * n + 2 * d - 1};
}

}  // namespace qdp::transpile
