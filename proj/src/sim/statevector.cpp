#include "qdp/sim/statevector.hpp"

#include "program.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qdp::sim {

using detail::Op;

namespace {

// Uniform double in [0, 1) from 53 random bits; avoids library-specific distributions.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void apply(std::vector<Amplitude>& a, const Op& op) {
    const std::uint64_t dim = a.size();
    switch (op.type) {
        case Op::Type::one:
            for (const auto t : op.targets) {
                const std::uint64_t tb = std::uint64_t{1} << t;
                for (std::uint64_t i = 0; i < dim; ++i) {
                    if ((i & tb) || (i & op.control_mask) != op.control_value) {
                        continue;
                    }
                    const Amplitude a0 = a[i];
                    const Amplitude a1 = a[i | tb];
                    if (op.x_like) {
                        a[i] = a1;
                        a[i | tb] = a0;
                    } else {
                        a[i] = op.m[0] * a0 + op.m[1] * a1;
                        a[i | tb] = op.m[2] * a0 + op.m[3] * a1;
                    }
                }
            }
            return;
        case Op::Type::swap: {
            const std::uint64_t b0 = std::uint64_t{1} << op.targets[0];
            const std::uint64_t b1 = std::uint64_t{1} << op.targets[1];
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & b0) && !(i & b1) && (i & op.control_mask) == op.control_value) {
                    std::swap(a[i], a[(i & ~b0) | b1]);
                }
            }
            return;
        }
        case Op::Type::two: {
            // Matrix index = (bit of targets[0]) * 2 + bit of targets[1].
            const std::uint64_t hi = std::uint64_t{1} << op.targets[0];
            const std::uint64_t lo = std::uint64_t{1} << op.targets[1];
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & hi) || (i & lo) || (i & op.control_mask) != op.control_value) {
                    continue;
                }
                const std::uint64_t idx[4] = {i, i | lo, i | hi, i | hi | lo};
                Amplitude in[4];
                for (int k = 0; k < 4; ++k) in[k] = a[idx[k]];
                for (int r = 0; r < 4; ++r) {
                    Amplitude s = 0;
                    for (int k = 0; k < 4; ++k) s += op.m4[r * 4 + k] * in[k];
                    a[idx[r]] = s;
                }
            }
            return;
        }
        case Op::Type::measure: return;
    }
}

void check_cap(const ir::Circuit& circuit, const SimOptions& options) {
    if (circuit.num_qubits() > options.max_qubits) {
        throw SimulationError("circuit has " + std::to_string(circuit.num_qubits()) +
                              " qubits, statevector cap is " + std::to_string(options.max_qubits));
    }
}

}  // namespace

Statevector::Statevector(std::size_t num_qubits, std::uint64_t basis) : n_(num_qubits) {
    if (num_qubits >= 63) {
        throw SimulationError("statevector too large");
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    if (basis >= amps_.size()) {
        throw SimulationError("initial basis state out of range");
    }
    amps_[basis] = 1.0;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& x : amps_) s += std::norm(x);
    return std::sqrt(s);
}

double Statevector::probability_one(std::size_t wire) const {
    const std::uint64_t b = std::uint64_t{1} << wire;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & b) p += std::norm(amps_[i]);
    }
    return p;
}

void Statevector::collapse(std::size_t wire, bool outcome) {
    const std::uint64_t b = std::uint64_t{1} << wire;
    double kept = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (((i & b) != 0) != outcome) {
            amps_[i] = 0.0;
        } else {
            kept += std::norm(amps_[i]);
        }
    }
    if (kept <= 0.0) {
        throw SimulationError("collapse onto an outcome of probability zero");
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& x : amps_) x *= scale;
}

RunResult statevector_run(const ir::Circuit& circuit, std::uint64_t seed, const SimOptions& options,
                          std::uint64_t initial_basis) {
    check_cap(circuit, options);
    RunResult result{Statevector(circuit.num_qubits(), initial_basis),
                     std::vector<std::uint8_t>(circuit.classical_bits(), 0)};
    std::mt19937_64 rng(seed);
    for (const auto& g : circuit.gates()) {
        const Op op = detail::compile(circuit, g);
        if (op.type == Op::Type::measure) {
            const std::size_t w = op.targets[0];
            const double p1 = std::clamp(result.state.probability_one(w), 0.0, 1.0);
            const bool outcome = uniform01(rng) < p1;
            result.state.collapse(w, outcome);
            result.classical[op.clbit] = outcome ? 1 : 0;
        } else {
            apply(result.state.amplitudes(), op);
        }
    }
    return result;
}

bool measurements_terminal(const ir::Circuit& circuit) {
    std::vector<bool> measured(circuit.num_qubits(), false);
    for (const auto& g : circuit.gates()) {
        for (const auto& c : g.controls) {
            if (measured[circuit.wire(c.qubit)]) return false;
        }
        for (const auto& t : g.targets) {
            if (measured[circuit.wire(t)]) return false;
        }
        if (g.kind == ir::GateKind::Measure) {
            measured[circuit.wire(g.targets[0])] = true;
        }
    }
    return true;
}

Histogram sample(const ir::Circuit& circuit, std::size_t shots, std::uint64_t seed, const SimOptions& options) {
    check_cap(circuit, options);
    if (circuit.classical_bits() > 64) {
        throw SimulationError("histograms support at most 64 classical bits");
    }
    Histogram hist;
    auto pack = [](const std::vector<std::uint8_t>& bits) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i]) key |= std::uint64_t{1} << i;
        }
        return key;
    };

    if (!measurements_terminal(circuit)) {
        std::mt19937_64 master(seed);
        for (std::size_t s = 0; s < shots; ++s) {
            ++hist[pack(statevector_run(circuit, master(), options).classical)];
        }
        return hist;
    }

    std::vector<std::pair<std::size_t, std::size_t>> readout;  // (wire, clbit)
    Statevector state(circuit.num_qubits());
    for (const auto& g : circuit.gates()) {
        const Op op = detail::compile(circuit, g);
        if (op.type == Op::Type::measure) {
            readout.emplace_back(op.targets[0], op.clbit);
        } else {
            apply(state.amplitudes(), op);
        }
    }
    const auto& amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        const std::uint64_t basis = static_cast<std::uint64_t>(it - cdf.begin());
        std::vector<std::uint8_t> bits(circuit.classical_bits(), 0);
        for (const auto& [wire, clbit] : readout) {
            bits[clbit] = (basis >> wire) & 1U;
        }
        ++hist[pack(bits)];
    }
    return hist;
}

}  // namespace qdp::sim
