#pragma once

// Dense reference unitaries for small circuits, written independently of the
// library's simulators and matrix helpers.

#include "qdp/ir/circuit.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

Mat2 gate_matrix(const qdp::ir::Gate& g);

/// 2^n x 2^n unitary of `circuit`, basis bit w = global wire w. Measurements
/// are not allowed.
Matrix dense_unitary(const qdp::ir::Circuit& circuit);

/// Permutation matrix that flips `target` iff every (wire, value) control holds.
Matrix mcx_reference(std::size_t n, const std::vector<std::pair<std::size_t, bool>>& controls, std::size_t target);

/// Inverse DFT over n qubits: entry (j, k) = exp(-2 pi i j k / N) / sqrt(N).
Matrix inverse_dft(std::size_t n);

/// max |a - e^{i phi} b| over entries, with phi fitted on the largest entry of b.
double phase_distance(const Matrix& a, const Matrix& b);

}  // namespace oracle
