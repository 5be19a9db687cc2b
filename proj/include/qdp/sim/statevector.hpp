#pragma once

#include "qdp/ir/circuit.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace qdp::sim {

using Amplitude = std::complex<double>;

/// Dense state over n qubits. Basis index bit w is the qubit on global wire w.
class Statevector {
public:
    explicit Statevector(std::size_t num_qubits, std::uint64_t basis = 0);

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] const std::vector<Amplitude>& amplitudes() const { return amps_; }
    std::vector<Amplitude>& amplitudes() { return amps_; }
    [[nodiscard]] Amplitude amplitude(std::uint64_t basis) const { return amps_[basis]; }
    [[nodiscard]] double norm() const;
    /// Probability that the qubit on `wire` reads 1.
    [[nodiscard]] double probability_one(std::size_t wire) const;
    /// Projects the qubit on `wire` onto `outcome` and renormalises.
    void collapse(std::size_t wire, bool outcome);

private:
    std::size_t n_;
    std::vector<Amplitude> amps_;
};

struct SimOptions {
    std::size_t max_qubits = 24;
};

struct RunResult {
    Statevector state;
    std::vector<std::uint8_t> classical;
};

/// Applies every gate in order starting from basis state `initial_basis`.
/// Measurements draw from a mt19937_64 seeded with `seed` and collapse the state.
[[nodiscard]] RunResult statevector_run(const ir::Circuit& circuit, std::uint64_t seed, const SimOptions& options = {},
                                        std::uint64_t initial_basis = 0);

/// Counts per classical outcome; key bit i is classical bit c[i].
using Histogram = std::map<std::uint64_t, std::size_t>;

/// When every measurement is terminal (its qubit is not touched again) the
/// state is computed once and sampled `shots` times; otherwise the circuit is
/// re-run per shot.
[[nodiscard]] Histogram sample(const ir::Circuit& circuit, std::size_t shots, std::uint64_t seed,
                               const SimOptions& options = {});

/// True iff no gate after a Measure touches its qubit.
[[nodiscard]] bool measurements_terminal(const ir::Circuit& circuit);

}  // namespace qdp::sim
