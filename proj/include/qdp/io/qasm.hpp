#pragma once

#include "qdp/ir/circuit.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace qdp::io {

/// OpenQASM 2.0 text: header, gate definitions for any roots of X, one qreg
/// per register (names made into valid identifiers), a single creg "c", then
/// one statement per gate. Register roles and stage boundaries travel in
/// "// qdp:" comments so parse_qasm can restore them. Angles use %.17g.
/// Throws StructuralError on MCX gates or RootX with more than one control.
[[nodiscard]] std::string emit_qasm(const ir::Circuit& circuit);
void write_qasm(const ir::Circuit& circuit, const std::filesystem::path& path);

/// Reads the subset emit_qasm produces plus common qelib1 gates (h, x, cx,
/// ccx, swap, u1, u2, u3, cu1, rx, ry, rz, rxx, measure, barrier) and angle
/// expressions over numbers, pi, + - * / and parentheses. Gate definitions
/// are skipped. Throws ConfigError on anything else.
[[nodiscard]] ir::Circuit parse_qasm(std::string_view text);
[[nodiscard]] ir::Circuit read_qasm(const std::filesystem::path& path);

}  // namespace qdp::io
