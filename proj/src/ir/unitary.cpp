#include "qdp/ir/unitary.hpp"

#include <cmath>
#include <numbers>

namespace qdp::ir {
namespace {

constexpr Complex I{0.0, 1.0};

}  // namespace

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Mat2 hadamard_matrix() {
    const double s = std::numbers::sqrt2 / 2.0;
    return {s, s, s, -s};
}

Mat2 pauli_x_matrix() { return {0.0, 1.0, 1.0, 0.0}; }

Mat2 phase_matrix(double angle) { return {1.0, 0.0, 0.0, std::exp(I * angle)}; }

Mat2 root_x_matrix(double exponent) {
    const Complex z = std::exp(I * (std::numbers::pi * exponent));
    return {(1.0 + z) / 2.0, (1.0 - z) / 2.0, (1.0 - z) / 2.0, (1.0 + z) / 2.0};
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {c, -std::exp(I * lambda) * s, std::exp(I * phi) * s, std::exp(I * (phi + lambda)) * c};
}

Mat2 rx_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {c, -I * s, -I * s, c};
}

Mat2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {c, -s, s, c};
}

Mat2 rz_matrix(double theta) { return {std::exp(-I * (theta / 2.0)), 0.0, 0.0, std::exp(I * (theta / 2.0))}; }

Mat4 rxx_matrix(double theta) {
    const Complex c = std::cos(theta / 2.0);
    const Complex s = -I * std::sin(theta / 2.0);
    return {c, 0, 0, s,  //
            0, c, s, 0,  //
            0, s, c, 0,  //
            s, 0, 0, c};
}

std::optional<Mat2> target_matrix(const Gate& gate) {
    switch (gate.kind) {
        case GateKind::H: return hadamard_matrix();
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CCNOT:
        case GateKind::MCX: return pauli_x_matrix();
        case GateKind::Phase:
        case GateKind::ControlledPhase: return phase_matrix(gate.angle);
        case GateKind::RootX: return root_x_matrix(gate.exponent.value());
        case GateKind::Native:
            if (gate.targets.size() != 1) {
                return std::nullopt;
            }
            if (gate.name == "u1") return phase_matrix(gate.params[0]);
            if (gate.name == "u2") return u3_matrix(std::numbers::pi / 2.0, gate.params[0], gate.params[1]);
            if (gate.name == "u3") return u3_matrix(gate.params[0], gate.params[1], gate.params[2]);
            if (gate.name == "rx") return rx_matrix(gate.params[0]);
            if (gate.name == "ry") return ry_matrix(gate.params[0]);
            if (gate.name == "rz") return rz_matrix(gate.params[0]);
            return std::nullopt;
        case GateKind::SWAP:
        case GateKind::Measure: return std::nullopt;
    }
    return std::nullopt;
}

ZyzAngles zyz_angles(const Mat2& u) {
    // Scale into SU(2): [[a, -conj(b)], [b, conj(a)]].
    const Complex det = u[0] * u[3] - u[1] * u[2];
    const Complex scale = 1.0 / std::sqrt(det);
    const Complex a = u[0] * scale;
    const Complex b = u[2] * scale;
    ZyzAngles out;
    out.theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    const double sum = std::abs(a) > 1e-12 ? -2.0 * std::arg(a) : 0.0;  // phi + lambda
    const double diff = std::abs(b) > 1e-12 ? 2.0 * std::arg(b) : 0.0;  // phi - lambda
    out.phi = (sum + diff) / 2.0;
    out.lambda = (sum - diff) / 2.0;
    return out;
}

bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol) {
    // Align phases on the largest entry of b.
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(b[i]) > std::abs(b[k])) {
            k = i;
        }
    }
    if (std::abs(a[k]) < 1e-12) {
        return false;
    }
    const Complex phase = a[k] / b[k];
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(a[i] - phase * b[i]) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace qdp::ir
