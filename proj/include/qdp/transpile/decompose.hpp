#pragma once

#include "qdp/ir/circuit.hpp"

#include <span>
#include <vector>

namespace qdp::transpile {

/// X on every negative control, the all-positive gate, then the same X gates
/// again. All-positive gates come back unchanged.
[[nodiscard]] std::vector<ir::Gate> rewrite_negative_controls(const ir::Gate& gate);

/// CCNOT ladder: c = 1 gives a CNOT, c = 2 a CCNOT, c >= 3 gives 2(c-2)+1
/// CCNOTs through c - 2 clean ancillas which are returned to |0>.
/// Requires a single target and positive controls.
[[nodiscard]] std::vector<ir::Gate> decompose_mcx_chain(const ir::Gate& gate, std::span<const ir::QubitRef> ancillas);

/// Barenco-style lowering with one ancilla that may hold any state.
/// c <= 2 maps to CNOT/CCNOT; c = 3 is a Gray-code network of controlled
/// X^(+-1/4) and CNOTs; c = 4 combines controlled X^(+-1/2), two 3-control
/// X gates and a 3-control sqrt(X) built from X^(+-1/8). Larger gates split
/// their controls in two halves around the ancilla and recurse, borrowing idle
/// qubits of the gate itself below the top level.
[[nodiscard]] std::vector<ir::Gate> decompose_mcx_single_ancilla(const ir::Gate& gate, ir::QubitRef ancilla);

/// X^(exponent * 2^(k-1)) on `target` controlled by all k `controls`, as a
/// Gray-code network of singly controlled X^(+-exponent) and CNOTs.
[[nodiscard]] std::vector<ir::Gate> gray_code_controlled_root(const std::vector<ir::QubitRef>& controls,
                                                              ir::QubitRef target, ir::Dyadic exponent);

/// Six-CNOT Toffoli network: 6 CNOT, 2 H, 7 phase (T / T-dagger) gates.
[[nodiscard]] std::vector<ir::Gate> toffoli_network(ir::QubitRef c0, ir::QubitRef c1, ir::QubitRef target);

}  // namespace qdp::transpile
