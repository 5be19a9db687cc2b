#include "qdp/sim/sparse.hpp"

#include "program.hpp"

#include <algorithm>
#include <cmath>

namespace qdp::sim {

using detail::Op;

namespace {

constexpr double kPrune = 1e-14;

using Terms = std::vector<std::pair<std::uint64_t, std::complex<double>>>;

void add(Terms& out, std::uint64_t basis, std::complex<double> amp) {
    for (auto& [b, a] : out) {
        if (b == basis) {
            a += amp;
            return;
        }
    }
    out.emplace_back(basis, amp);
}

void prune(Terms& terms) {
    std::erase_if(terms, [](const auto& t) { return std::norm(t.second) < kPrune * kPrune; });
}

void apply(Terms& terms, const Op& op) {
    switch (op.type) {
        case Op::Type::one:
            for (const auto t : op.targets) {
                const std::uint64_t tb = std::uint64_t{1} << t;
                if (op.x_like) {
                    for (auto& [b, a] : terms) {
                        if ((b & op.control_mask) == op.control_value) b ^= tb;
                    }
                    continue;
                }
                Terms next;
                next.reserve(terms.size() * 2);
                for (const auto& [b, a] : terms) {
                    if ((b & op.control_mask) != op.control_value) {
                        add(next, b, a);
                        continue;
                    }
                    const int bit = (b & tb) ? 1 : 0;
                    const std::uint64_t b0 = b & ~tb;
                    add(next, b0, op.m[0 * 2 + bit] * a);
                    add(next, b0 | tb, op.m[1 * 2 + bit] * a);
                }
                prune(next);
                terms = std::move(next);
            }
            return;
        case Op::Type::swap: {
            const std::size_t w0 = op.targets[0];
            const std::size_t w1 = op.targets[1];
            for (auto& [b, a] : terms) {
                if ((b & op.control_mask) != op.control_value) continue;
                const std::uint64_t x0 = (b >> w0) & 1U;
                const std::uint64_t x1 = (b >> w1) & 1U;
                if (x0 != x1) b ^= (std::uint64_t{1} << w0) | (std::uint64_t{1} << w1);
            }
            return;
        }
        case Op::Type::two: {
            const std::uint64_t hi = std::uint64_t{1} << op.targets[0];
            const std::uint64_t lo = std::uint64_t{1} << op.targets[1];
            Terms next;
            for (const auto& [b, a] : terms) {
                if ((b & op.control_mask) != op.control_value) {
                    add(next, b, a);
                    continue;
                }
                const int col = ((b & hi) ? 2 : 0) + ((b & lo) ? 1 : 0);
                const std::uint64_t base = b & ~(hi | lo);
                const std::uint64_t idx[4] = {base, base | lo, base | hi, base | hi | lo};
                for (int r = 0; r < 4; ++r) add(next, idx[r], op.m4[r * 4 + col] * a);
            }
            prune(next);
            terms = std::move(next);
            return;
        }
        case Op::Type::measure: throw SimulationError("sparse engine does not measure");
    }
}

}  // namespace

SparseState::SparseState(std::size_t num_qubits, std::uint64_t basis) : n_(num_qubits) {
    if (num_qubits > 64) {
        throw SimulationError("sparse engine supports at most 64 qubits");
    }
    terms_.emplace_back(basis, 1.0);
}

std::optional<std::uint64_t> SparseState::basis_state(double tol) const {
    if (terms_.size() != 1 || std::abs(std::abs(terms_.front().second) - 1.0) > tol) {
        return std::nullopt;
    }
    return terms_.front().first;
}

struct SparseProgram::Impl {
    std::size_t num_qubits = 0;
    std::vector<Op> ops;
};

SparseProgram::SparseProgram(const ir::Circuit& circuit) {
    if (circuit.num_qubits() > 64) {
        throw SimulationError("sparse engine supports at most 64 qubits");
    }
    auto impl = std::make_shared<Impl>();
    impl->num_qubits = circuit.num_qubits();
    impl->ops = detail::compile(circuit, 0, circuit.size());
    for (const auto& op : impl->ops) {
        if (op.type == Op::Type::measure) {
            throw SimulationError("sparse engine does not measure");
        }
    }
    impl_ = std::move(impl);
}

SparseState SparseProgram::run(std::uint64_t initial_basis) const {
    SparseState state(impl_->num_qubits, initial_basis);
    for (const auto& op : impl_->ops) {
        apply(state.terms(), op);
    }
    return state;
}

SparseState sparse_run(const ir::Circuit& circuit, std::uint64_t initial_basis) {
    return SparseProgram(circuit).run(initial_basis);
}

}  // namespace qdp::sim
