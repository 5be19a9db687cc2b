#pragma once

#include "qdp/ir/circuit.hpp"
#include "qdp/logic/pla.hpp"
#include "qdp/sequence.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace qdp::encoder {

enum class McxMode { ccnot_chain, single_ancilla };

/// "chain" or "single-ancilla".
std::string_view to_string(McxMode mode);
/// Accepts "chain", "ccnot_chain", "single-ancilla", "single_ancilla".
McxMode parse_mcx_mode(std::string_view text);

struct QdpLayout {
    std::size_t w = 1;  ///< index bits of the reference
    std::size_t h = 1;  ///< index bits of the query
    unsigned d = 1;     ///< data bits
    McxMode mcx_mode = McxMode::ccnot_chain;

    /// Chain mode needs c - 2 clean ancillas for the widest gate, which is
    /// either an index-wide NEQR gate or the d-wide mark gate.
    [[nodiscard]] std::size_t ancilla_count() const;

    static QdpLayout for_pair(const SymbolSequence& r, const SymbolSequence& q, McxMode mode);
};

struct QdpOptions {
    bool use_minimizer = true;
    McxMode mcx_mode = McxMode::ccnot_chain;
};

/// Register ids of a QDP circuit. `ancilla` is absent when the pool is empty.
struct QdpRegisters {
    ir::RegisterId x = 0;
    ir::RegisterId d_r = 0;
    ir::RegisterId y = 0;
    ir::RegisterId d_q = 0;
    ir::RegisterId v = 0;
    std::optional<ir::RegisterId> ancilla;
};

/// Looks up the five QDP registers by role. Throws StructuralError if any is missing.
[[nodiscard]] QdpRegisters find_qdp_registers(const ir::Circuit& circuit);

/// Declares x, D_R, y, D_Q, v and the ancilla pool, then an "init" stage of
/// Hadamards over x and y.
[[nodiscard]] ir::Circuit init_registers(const QdpLayout& layout);

/// Maps register-independent descriptors onto concrete index/data qubits.
[[nodiscard]] std::vector<ir::Gate> mcx_gates(const ir::Circuit& circuit, const std::vector<logic::McxDescriptor>& mcx,
                                              ir::RegisterId index_reg, ir::RegisterId data_reg);

/// Appends a "neqr" stage realising |i>|0> -> |i>|table(i)>.
[[nodiscard]] ir::Circuit encode_table(ir::Circuit circuit, const logic::PlaTable& table, ir::RegisterId index_reg,
                                       ir::RegisterId data_reg, bool use_minimizer);

/// build_pla, optional d1merge_minimize, then encode_table.
[[nodiscard]] ir::Circuit encode_sequence(ir::Circuit circuit, const SymbolSequence& seq, ir::RegisterId index_reg,
                                          ir::RegisterId data_reg, bool use_minimizer);

/// d CNOTs, d_r[i] controlling d_q[i], opening a "dotplot" stage.
[[nodiscard]] ir::Circuit quantum_xor(ir::Circuit circuit, ir::RegisterId d_r, ir::RegisterId d_q);

/// One MCX with every qubit of d_q as a negative control and v as target,
/// appended to the current stage.
[[nodiscard]] ir::Circuit mark_matches(ir::Circuit circuit, ir::RegisterId d_q, ir::RegisterId v);

/// Full dot-plot oracle: init, both encodings, XOR and mark.
[[nodiscard]] ir::Circuit build_qdp(const SymbolSequence& r, const SymbolSequence& q, const QdpOptions& options = {});

/// Appends a "qft" stage with the inverse QFT over `qubits` (qubits[0] is the
/// least significant bit): n H, n(n-1)/2 controlled phases of -pi/2^k, and
/// floor(n/2) trailing SWAPs.
[[nodiscard]] ir::Circuit inverse_qft(ir::Circuit circuit, const std::vector<ir::QubitRef>& qubits);

/// Pattern-recognition circuit: build_qdp, measure v ("measure_v" stage),
/// inverse QFT over k = y * W + x, then measure x and y ("measure" stage).
/// Classical layout: c[0..w) = x, c[w..w+h) = y, c[w+h] = v.
[[nodiscard]] ir::Circuit build_qpr(const SymbolSequence& r, const SymbolSequence& q, const QdpOptions& options = {});

/// Index register plus data register and ancilla pool carrying one sequence:
/// "init" then "neqr". Registers are named x, D_R, anc.
[[nodiscard]] ir::Circuit build_neqr(const SymbolSequence& seq, const QdpOptions& options = {});

/// Classical bit holding v in a build_qpr circuit.
[[nodiscard]] std::size_t v_clbit(const QdpLayout& layout);

}  // namespace qdp::encoder
