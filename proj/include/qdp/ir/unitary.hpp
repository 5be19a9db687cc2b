#pragma once

#include "qdp/ir/circuit.hpp"

#include <array>
#include <complex>
#include <optional>

namespace qdp::ir {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix.
using Mat2 = std::array<Complex, 4>;
/// Row-major 4x4 matrix on (first, second) with `first` the high bit.
using Mat4 = std::array<Complex, 16>;

[[nodiscard]] Mat2 mul(const Mat2& a, const Mat2& b);

[[nodiscard]] Mat2 hadamard_matrix();
[[nodiscard]] Mat2 pauli_x_matrix();
[[nodiscard]] Mat2 phase_matrix(double angle);
[[nodiscard]] Mat2 root_x_matrix(double exponent);
[[nodiscard]] Mat2 u3_matrix(double theta, double phi, double lambda);
[[nodiscard]] Mat2 rx_matrix(double theta);
[[nodiscard]] Mat2 ry_matrix(double theta);
[[nodiscard]] Mat2 rz_matrix(double theta);
[[nodiscard]] Mat4 rxx_matrix(double theta);

/// Matrix applied to the target of an (optionally controlled) single-target
/// gate: H, X, CNOT, CCNOT, MCX, Phase, ControlledPhase, RootX and the
/// one-qubit natives u1, u2, u3, rx, ry, rz. Empty for anything else.
[[nodiscard]] std::optional<Mat2> target_matrix(const Gate& gate);

/// Angles (theta, phi, lambda) with u3(theta, phi, lambda) equal to `u` up to
/// global phase.
struct ZyzAngles {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
};
[[nodiscard]] ZyzAngles zyz_angles(const Mat2& u);

/// True iff a == e^{i phi} b for some phi, entrywise within `tol`.
[[nodiscard]] bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol = 1e-10);

}  // namespace qdp::ir
