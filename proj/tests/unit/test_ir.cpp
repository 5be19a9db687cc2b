#include "qdp/error.hpp"
#include "qdp/ir/circuit.hpp"
#include "qdp/ir/metrics.hpp"
#include "qdp/ir/unitary.hpp"

#include "../support/oracle.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace qdp;
using namespace qdp::ir;

namespace {

Circuit three_wires() {
    Circuit c;
    c.add_register("a", 2);
    c.add_register("b", 1);
    return c;
}

}  // namespace

TEST(Circuit, RegistersAndWires) {
    Circuit c = three_wires();
    EXPECT_EQ(c.num_qubits(), 3u);
    EXPECT_EQ(c.wire(c.qubit(1, 0)), 2u);
    EXPECT_EQ(c.ref_of_wire(1), (QubitRef{0, 1}));
    EXPECT_THROW(c.add_register("a", 1), StructuralError);
    EXPECT_THROW(c.add_register("z", 0), StructuralError);
    EXPECT_THROW((void)c.qubit(0, 2), StructuralError);
}

TEST(Circuit, RejectsMalformedGates) {
    Circuit c = three_wires();
    const auto q0 = c.qubit(0, 0);
    const auto q1 = c.qubit(0, 1);
    EXPECT_THROW(c.append(Gate::cnot(q0, q0)), StructuralError);
    EXPECT_THROW(c.append(Gate::measure(q0, 0)), StructuralError);
    EXPECT_THROW(c.append(Gate::root_x(Dyadic{3, 2}, {q0}, q1)), StructuralError);
    EXPECT_THROW(c.append(Gate::phase(std::numeric_limits<double>::infinity(), q0)), StructuralError);
    EXPECT_THROW(c.append(Gate::x(QubitRef{7, 0})), StructuralError);
    EXPECT_EQ(c.size(), 0u);
}

TEST(Circuit, McxCollapsesToNamedGates) {
    const QubitRef a{0, 0}, b{0, 1}, t{1, 0};
    EXPECT_EQ(Gate::mcx({{a, Polarity::positive}}, t).kind, GateKind::CNOT);
    EXPECT_EQ(Gate::mcx({{a, Polarity::positive}, {b, Polarity::positive}}, t).kind, GateKind::CCNOT);
    EXPECT_EQ(Gate::mcx({{a, Polarity::negative}}, t).kind, GateKind::MCX);
}

TEST(Circuit, StagesCoverContiguousRanges) {
    Circuit c = three_wires();
    c.append_stage("init", {Gate::h(c.qubit(0, 0)), Gate::h(c.qubit(0, 1))});
    c.append_stage("empty", {});
    c.append_stage("work", {Gate::cnot(c.qubit(0, 0), c.qubit(1, 0))});
    const auto st = c.stages();
    ASSERT_EQ(st.size(), 3u);
    EXPECT_EQ(st[0].begin, 0u);
    EXPECT_EQ(st[0].end, 2u);
    EXPECT_EQ(st[1].begin, st[1].end);
    EXPECT_EQ(st[2].label, "work");
    EXPECT_EQ(st[2].end, 3u);
}

TEST(Metrics, DepthWidthAndCounts) {
    Circuit c;
    c.add_register("q", 4);
    c.add_classical_bits(1);
    c.append_stage("s1", {Gate::h(c.qubit(0, 0)), Gate::h(c.qubit(0, 1)), Gate::cnot(c.qubit(0, 0), c.qubit(0, 1))});
    c.append_stage("s2", {Gate::x(c.qubit(0, 2)), Gate::measure(c.qubit(0, 2), 0), Gate::measure(c.qubit(0, 1), 0)});
    EXPECT_EQ(width(c), 3u);
    // h; cx; measure(q1) chained through the shared classical bit after measure(q2).
    EXPECT_EQ(depth(c), 3u);
    const auto sd = stage_depths(c);
    EXPECT_EQ(sd.at("s1"), 2u);
    EXPECT_EQ(sd.at("s2"), 3u);
    const auto gc = gate_counts(c);
    EXPECT_EQ(gc.at("h"), 2u);
    EXPECT_EQ(gc.at("cx"), 1u);
    EXPECT_EQ(gc.at("measure"), 2u);
    EXPECT_EQ(stage_gate_counts(c).at("s2"), 3u);
    EXPECT_EQ(depth(c, GateRange{0, 2}), 1u);
}

TEST(Metrics, DepthBoundsProperty) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c;
        c.add_register("q", 5);
        const int gates = static_cast<int>(rng() % 40);
        for (int i = 0; i < gates; ++i) {
            const auto a = static_cast<std::uint32_t>(rng() % 5);
            auto b = static_cast<std::uint32_t>(rng() % 5);
            if (a == b) b = (b + 1) % 5;
            if (rng() % 2) c.append(Gate::h(c.qubit(0, a)));
            else c.append(Gate::cnot(c.qubit(0, a), c.qubit(0, b)));
        }
        const auto d = depth(c);
        EXPECT_LE(d, c.size());
        // A step holds at most 5 gates on 5 wires.
        EXPECT_GE(d * 5, c.size());
        Circuit twice = c;
        for (const auto& g : c.gates()) twice.append(g);
        EXPECT_GE(depth(twice), d);
    }
}

TEST(Unitary, ZyzReconstructsRandomMatrices) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const Mat2 u = u3_matrix(ang(rng), ang(rng), ang(rng));
        const auto a = zyz_angles(u);
        EXPECT_TRUE(equal_up_to_phase(u3_matrix(a.theta, a.phi, a.lambda), u, 1e-10));
    }
    for (const Mat2& u : {hadamard_matrix(), pauli_x_matrix(), phase_matrix(0.3), root_x_matrix(0.25)}) {
        const auto a = zyz_angles(u);
        EXPECT_TRUE(equal_up_to_phase(u3_matrix(a.theta, a.phi, a.lambda), u, 1e-10));
    }
}

TEST(Unitary, MatricesAgreeWithOracle) {
    const QubitRef q{0, 0};
    const std::vector<Gate> gates = {Gate::h(q), Gate::x(q), Gate::phase(0.7, q),
                                     Gate::root_x(Dyadic{1, 1}, {}, q), Gate::root_x(Dyadic{-1, 3}, {}, q),
                                     Gate::native("u3", {0.1, 0.2, 0.3}, {q}), Gate::native("rx", {0.4}, {q}),
                                     Gate::native("ry", {0.5}, {q}), Gate::native("u2", {0.6, 0.7}, {q})};
    for (const auto& g : gates) {
        const auto m = target_matrix(g);
        ASSERT_TRUE(m.has_value()) << gate_name(g);
        const auto ref = oracle::gate_matrix(g);
        for (int r = 0; r < 2; ++r)
            for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::abs((*m)[r * 2 + k] - ref(r, k)), 0.0, 1e-12) << gate_name(g);
    }
    const Mat2 s = root_x_matrix(0.5);
    EXPECT_TRUE(equal_up_to_phase(mul(s, s), pauli_x_matrix(), 1e-12));
}
