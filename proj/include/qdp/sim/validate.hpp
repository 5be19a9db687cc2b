#pragma once

#include "qdp/encoder/qdp.hpp"
#include "qdp/ir/circuit.hpp"
#include "qdp/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qdp::sim {

struct DotPlot {
    std::size_t width = 0;
    std::size_t height = 0;
    /// Row-major by y: pixels[y * width + x].
    std::vector<std::uint8_t> pixels;

    [[nodiscard]] bool pixel(std::size_t x, std::size_t y) const { return pixels[y * width + x] != 0; }
    [[nodiscard]] std::size_t count() const;
};

/// pixel(x, y) = 1 iff r[x] == q[y].
[[nodiscard]] DotPlot classical_dotplot(const SymbolSequence& r, const SymbolSequence& q);

struct Counterexample {
    std::size_t x = 0;
    std::size_t y = 0;
    int expected = 0;
    int observed = 0;
    std::string detail;
};

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    double critical_value = 0.0;
    double significance = 0.001;
};

struct ValidationReport {
    std::string method;
    bool pass = true;
    /// Checks inside the original (unpadded) window.
    std::size_t checks = 0;
    /// Checks on padding positions.
    std::size_t padded_checks = 0;
    std::size_t mismatches = 0;
    /// First few failures, ordered by (x, y).
    std::vector<Counterexample> counterexamples;
    std::size_t shots = 0;
    std::optional<std::uint64_t> seed;
    std::optional<ChiSquare> uniformity;
};

/// Pins x and y to every index pair, runs the lowered QDP circuit without its
/// init stage and compares v with the dot plot. The ancillas must come back
/// clean and the index registers unchanged. Chain mode uses the Toffoli
/// engine; single-ancilla mode needs the sparse engine for its roots of X.
[[nodiscard]] ValidationReport validate_method1(const SymbolSequence& r, const SymbolSequence& q,
                                                const encoder::QdpOptions& options = {});
/// Same, for an already built QDP circuit (e.g. a deliberately broken one).
[[nodiscard]] ValidationReport validate_method1(const ir::Circuit& qdp, const SymbolSequence& r,
                                                const SymbolSequence& q, encoder::McxMode mode);

/// Samples the QDP circuit with x, y and v measured, checks every sampled
/// triple against the dot plot and tests (x, y) for uniformity.
[[nodiscard]] ValidationReport validate_method2(const SymbolSequence& r, const SymbolSequence& q, std::size_t shots,
                                                std::uint64_t seed, const encoder::QdpOptions& options = {});
[[nodiscard]] ValidationReport validate_method2(const ir::Circuit& qdp, const SymbolSequence& r,
                                                const SymbolSequence& q, std::size_t shots, std::uint64_t seed);

/// Pearson statistic for equal expected counts; p-value from the chi-squared
/// distribution with counts.size() - 1 degrees of freedom.
[[nodiscard]] ChiSquare uniformity_test(const std::vector<std::size_t>& counts, double significance = 0.001);

[[nodiscard]] std::string to_json(const ValidationReport& report);

}  // namespace qdp::sim
