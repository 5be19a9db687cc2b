#include "qdp/ir/metrics.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <vector>

namespace qdp::ir {
namespace {

// Longest-path layering over the gates listed in `indices`.
template <typename IndexRange>
std::size_t layered_depth(const Circuit& circuit, const IndexRange& indices) {
    std::vector<std::size_t> qubit_level(circuit.num_qubits(), 0);
    std::vector<std::size_t> clbit_level(circuit.classical_bits(), 0);
    std::size_t best = 0;
    const auto& gates = circuit.gates();
    for (const std::size_t i : indices) {
        const Gate& g = gates[i];
        std::size_t level = 0;
        for (const auto& t : g.targets) {
            level = std::max(level, qubit_level[circuit.wire(t)]);
        }
        for (const auto& c : g.controls) {
            level = std::max(level, qubit_level[circuit.wire(c.qubit)]);
        }
        if (g.kind == GateKind::Measure) {
            level = std::max(level, clbit_level[g.clbit]);
        }
        ++level;
        for (const auto& t : g.targets) {
            qubit_level[circuit.wire(t)] = level;
        }
        for (const auto& c : g.controls) {
            qubit_level[circuit.wire(c.qubit)] = level;
        }
        if (g.kind == GateKind::Measure) {
            clbit_level[g.clbit] = level;
        }
        best = std::max(best, level);
    }
    return best;
}

struct IotaRange {
    std::size_t first;
    std::size_t last;
    struct iterator {
        std::size_t v;
        std::size_t operator*() const { return v; }
        iterator& operator++() {
            ++v;
            return *this;
        }
        bool operator!=(const iterator& o) const { return v != o.v; }
    };
    [[nodiscard]] iterator begin() const { return {first}; }
    [[nodiscard]] iterator end() const { return {last}; }
};

std::map<std::string, std::vector<std::size_t>> gates_by_stage(const Circuit& circuit) {
    std::map<std::string, std::vector<std::size_t>> out;
    for (const auto& s : circuit.stages()) {
        auto& v = out[s.label];
        for (std::size_t i = s.begin; i < s.end; ++i) {
            v.push_back(i);
        }
    }
    return out;
}

}  // namespace

std::size_t width(const Circuit& circuit) {
    std::vector<bool> touched(circuit.num_qubits(), false);
    for (const auto& g : circuit.gates()) {
        for (const auto& t : g.targets) {
            touched[circuit.wire(t)] = true;
        }
        for (const auto& c : g.controls) {
            touched[circuit.wire(c.qubit)] = true;
        }
    }
    return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), true));
}

std::size_t depth(const Circuit& circuit, std::optional<GateRange> range) {
    GateRange r{0, circuit.size()};
    if (range) {
        if (range->begin > range->end || range->end > circuit.size()) {
            throw PreconditionError("depth range outside the gate list");
        }
        r = *range;
    }
    return layered_depth(circuit, IotaRange{r.begin, r.end});
}

std::map<std::string, std::size_t> stage_depths(const Circuit& circuit) {
    std::map<std::string, std::size_t> out;
    for (const auto& [label, indices] : gates_by_stage(circuit)) {
        out[label] = layered_depth(circuit, indices);
    }
    return out;
}

std::map<std::string, std::size_t> stage_gate_counts(const Circuit& circuit) {
    std::map<std::string, std::size_t> out;
    for (const auto& [label, indices] : gates_by_stage(circuit)) {
        out[label] = indices.size();
    }
    return out;
}

std::map<std::string, std::size_t> gate_counts(const Circuit& circuit) {
    std::map<std::string, std::size_t> out;
    for (const auto& g : circuit.gates()) {
        ++out[gate_name(g)];
    }
    return out;
}

}  // namespace qdp::ir
