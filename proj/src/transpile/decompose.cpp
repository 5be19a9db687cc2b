#include "qdp/transpile/decompose.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <string>

namespace qdp::transpile {

using ir::Control;
using ir::Dyadic;
using ir::Gate;
using ir::GateKind;
using ir::Polarity;
using ir::QubitRef;

namespace {

std::vector<QubitRef> positive_controls(const Gate& gate, const char* who) {
    if (!gate.is_x_family() || gate.kind == GateKind::X) {
        throw PreconditionError(std::string(who) + ": not a controlled X gate");
    }
    if (gate.targets.size() != 1) {
        throw PreconditionError(std::string(who) + ": expects a single target");
    }
    std::vector<QubitRef> out;
    for (const auto& c : gate.controls) {
        if (c.polarity != Polarity::positive) {
            throw PreconditionError(std::string(who) + ": negative controls must be rewritten first");
        }
        out.push_back(c.qubit);
    }
    if (out.empty()) {
        throw PreconditionError(std::string(who) + ": gate has no controls");
    }
    return out;
}

Gate positive_mcx(const std::vector<QubitRef>& controls, QubitRef target) {
    std::vector<Control> cs;
    cs.reserve(controls.size());
    for (const auto& q : controls) {
        cs.push_back({q, Polarity::positive});
    }
    return Gate::mcx(std::move(cs), target);
}

void append(std::vector<Gate>& out, std::vector<Gate> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

// Exact C^k X for k <= 4 without any ancilla.
std::vector<Gate> small_mcx(const std::vector<QubitRef>& controls, QubitRef target) {
    switch (controls.size()) {
        case 1: return {Gate::cnot(controls[0], target)};
        case 2: return {Gate::ccnot(controls[0], controls[1], target)};
        case 3: return gray_code_controlled_root(controls, target, Dyadic{1, 2});
        case 4: {
            const std::vector<QubitRef> low(controls.begin(), controls.begin() + 3);
            const QubitRef last = controls[3];
            std::vector<Gate> out;
            out.push_back(Gate::root_x(Dyadic{1, 1}, {last}, target));
            append(out, gray_code_controlled_root(low, last, Dyadic{1, 2}));
            out.push_back(Gate::root_x(Dyadic{-1, 1}, {last}, target));
            append(out, gray_code_controlled_root(low, last, Dyadic{1, 2}));
            append(out, gray_code_controlled_root(low, target, Dyadic{1, 3}));
            return out;
        }
        default: break;
    }
    throw PreconditionError("small_mcx handles at most 4 controls");
}

std::vector<Gate> recursive_mcx(const std::vector<QubitRef>& controls, QubitRef target, QubitRef ancilla);

// Lowers a sub-gate, borrowing an idle qubit from `spare` when it is too wide
// for the fixed networks.
std::vector<Gate> lower_part(const std::vector<QubitRef>& controls, QubitRef target, const std::vector<QubitRef>& spare) {
    if (controls.size() <= 4) {
        return small_mcx(controls, target);
    }
    if (spare.empty()) {
        throw PreconditionError("no idle qubit to borrow for a recursive MCX split");
    }
    return recursive_mcx(controls, target, spare.front());
}

// B A B A with A = C^{m1}X(first half -> ancilla) and
// B = C^{m2+1}X(second half + ancilla -> target). The ancilla ends where it
// started, so its state does not matter.
std::vector<Gate> recursive_mcx(const std::vector<QubitRef>& controls, QubitRef target, QubitRef ancilla) {
    const std::size_t m1 = (controls.size() + 1) / 2;
    const std::vector<QubitRef> first(controls.begin(), controls.begin() + static_cast<std::ptrdiff_t>(m1));
    std::vector<QubitRef> second(controls.begin() + static_cast<std::ptrdiff_t>(m1), controls.end());
    second.push_back(ancilla);

    std::vector<QubitRef> spare_for_a(controls.begin() + static_cast<std::ptrdiff_t>(m1), controls.end());
    spare_for_a.push_back(target);
    const std::vector<QubitRef>& spare_for_b = first;

    const auto a = lower_part(first, ancilla, spare_for_a);
    const auto b = lower_part(second, target, spare_for_b);
    std::vector<Gate> out;
    out.reserve(2 * (a.size() + b.size()));
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), a.begin(), a.end());
    return out;
}

}  // namespace

std::vector<Gate> rewrite_negative_controls(const Gate& gate) {
    std::vector<Gate> flips;
    Gate positive = gate;
    for (auto& c : positive.controls) {
        if (c.polarity == Polarity::negative) {
            flips.push_back(Gate::x(c.qubit));
            c.polarity = Polarity::positive;
        }
    }
    if (flips.empty()) {
        return {gate};
    }
    if (positive.kind == GateKind::MCX && positive.targets.size() == 1 && positive.controls.size() <= 2) {
        positive = Gate::mcx(positive.controls, positive.targets.front());
    }
    std::vector<Gate> out = flips;
    out.push_back(std::move(positive));
    out.insert(out.end(), flips.begin(), flips.end());
    return out;
}

std::vector<Gate> decompose_mcx_chain(const Gate& gate, std::span<const QubitRef> ancillas) {
    const auto controls = positive_controls(gate, "decompose_mcx_chain");
    const QubitRef target = gate.targets.front();
    const std::size_t c = controls.size();
    if (c <= 2) {
        return {positive_mcx(controls, target)};
    }
    if (ancillas.size() < c - 2) {
        throw PreconditionError("decompose_mcx_chain: " + std::to_string(c) + " controls need " +
                                std::to_string(c - 2) + " ancillas, got " + std::to_string(ancillas.size()));
    }
    std::vector<Gate> ladder;
    ladder.push_back(Gate::ccnot(controls[0], controls[1], ancillas[0]));
    for (std::size_t i = 2; i + 1 < c; ++i) {
        ladder.push_back(Gate::ccnot(controls[i], ancillas[i - 2], ancillas[i - 1]));
    }
    std::vector<Gate> out = ladder;
    out.push_back(Gate::ccnot(controls[c - 1], ancillas[c - 3], target));
    out.insert(out.end(), ladder.rbegin(), ladder.rend());
    return out;
}

std::vector<Gate> decompose_mcx_single_ancilla(const Gate& gate, QubitRef ancilla) {
    const auto controls = positive_controls(gate, "decompose_mcx_single_ancilla");
    const QubitRef target = gate.targets.front();
    if (controls.size() <= 4) {
        return small_mcx(controls, target);
    }
    if (ancilla == target || std::find(controls.begin(), controls.end(), ancilla) != controls.end()) {
        throw PreconditionError("decompose_mcx_single_ancilla: ancilla overlaps the gate");
    }
    return recursive_mcx(controls, target, ancilla);
}

std::vector<Gate> gray_code_controlled_root(const std::vector<QubitRef>& controls, QubitRef target, Dyadic exponent) {
    const std::size_t k = controls.size();
    if (k == 0 || k > 16) {
        throw PreconditionError("gray_code_controlled_root needs 1..16 controls");
    }
    // Pattern bit p (p = 0 leftmost) selects controls[p]; the leftmost set
    // control carries the running parity of the pattern.
    auto bit_at = [k](std::size_t pattern, std::size_t p) { return (pattern >> (k - 1 - p)) & 1U; };
    auto leftmost = [&](std::size_t pattern) {
        for (std::size_t p = 0; p < k; ++p) {
            if (bit_at(pattern, p)) {
                return p;
            }
        }
        return k;
    };

    std::vector<Gate> out;
    std::size_t last = 0;
    bool first = true;
    for (std::size_t i = 1; i < (std::size_t{1} << k); ++i) {
        const std::size_t pattern = i ^ (i >> 1);
        const std::size_t lm = leftmost(pattern);
        if (!first) {
            std::size_t changed = k;
            for (std::size_t p = 0; p < k; ++p) {
                if (bit_at(pattern, p) != bit_at(last, p)) {
                    changed = p;
                    break;
                }
            }
            if (changed != lm) {
                out.push_back(Gate::cnot(controls[changed], controls[lm]));
            } else {
                for (std::size_t p = lm + 1; p < k; ++p) {
                    if (bit_at(pattern, p)) {
                        out.push_back(Gate::cnot(controls[p], controls[lm]));
                    }
                }
            }
        }
        const bool odd = std::popcount(pattern) % 2 == 1;
        out.push_back(Gate::root_x(odd ? exponent : exponent.negated(), {controls[lm]}, target));
        last = pattern;
        first = false;
    }
    return out;
}

std::vector<Gate> toffoli_network(QubitRef c0, QubitRef c1, QubitRef target) {
    const double t = std::numbers::pi / 4.0;
    return {
        Gate::h(target),
        Gate::cnot(c1, target),
        Gate::phase(-t, target),
        Gate::cnot(c0, target),
        Gate::phase(t, target),
        Gate::cnot(c1, target),
        Gate::phase(-t, target),
        Gate::cnot(c0, target),
        Gate::phase(t, c1),
        Gate::phase(t, target),
        Gate::h(target),
        Gate::cnot(c0, c1),
        Gate::phase(t, c0),
        Gate::phase(-t, c1),
        Gate::cnot(c0, c1),
    };
}

}  // namespace qdp::transpile
