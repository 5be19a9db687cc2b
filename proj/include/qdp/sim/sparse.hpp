#pragma once

#include "qdp/ir/circuit.hpp"

#include <complex>
#include <memory>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qdp::sim {

/// State kept as a short list of nonzero basis amplitudes. Suited to circuits
/// that start in a basis state and only briefly leave it, such as lowered MCX
/// networks. At most 64 qubits.
class SparseState {
public:
    explicit SparseState(std::size_t num_qubits, std::uint64_t basis = 0);

    [[nodiscard]] const std::vector<std::pair<std::uint64_t, std::complex<double>>>& terms() const { return terms_; }
    std::vector<std::pair<std::uint64_t, std::complex<double>>>& terms() { return terms_; }
    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    /// The basis state if the state is one up to phase (within `tol`).
    [[nodiscard]] std::optional<std::uint64_t> basis_state(double tol = 1e-9) const;

private:
    std::size_t n_;
    std::vector<std::pair<std::uint64_t, std::complex<double>>> terms_;
};

/// Runs every unitary gate of `circuit`. Measure gates throw SimulationError.
[[nodiscard]] SparseState sparse_run(const ir::Circuit& circuit, std::uint64_t initial_basis);

/// A circuit resolved once for many sparse runs from different basis inputs.
class SparseProgram {
public:
    explicit SparseProgram(const ir::Circuit& circuit);
    [[nodiscard]] SparseState run(std::uint64_t initial_basis) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace qdp::sim
