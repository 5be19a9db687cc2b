#include "qdp/encoder/qdp.hpp"
#include "qdp/error.hpp"
#include "qdp/ir/metrics.hpp"
#include "qdp/sim/sparse.hpp"
#include "qdp/sim/statevector.hpp"
#include "qdp/sim/toffoli.hpp"
#include "qdp/sim/validate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qdp;
using namespace qdp::ir;
using namespace qdp::sim;
using encoder::McxMode;

namespace {

SymbolSequence example_sequence() { return SymbolSequence::from_codes({0, 1, 3, 2, 1, 2, 3, 0}, 2); }

Circuit strip_measurements(const Circuit& c) {
    Circuit out;
    for (const auto& r : c.registers()) out.add_register(r.name, r.size, r.role);
    out.add_classical_bits(c.classical_bits());
    for (const auto& g : c.gates())
        if (g.kind != GateKind::Measure) out.append(g);
    return out;
}

std::pair<SymbolSequence, SymbolSequence> random_dna_pair(std::mt19937_64& rng, std::size_t lr, std::size_t lq) {
    const char* acgt = "ACGT";
    std::string r(lr, 'A'), q(lq, 'A');
    for (auto& ch : r) ch = acgt[rng() % 4];
    for (auto& ch : q) ch = acgt[rng() % 4];
    auto [a, b] = map_alphabet_pair(r, q, AlphabetPreset::dna);
    return pad_pair(std::move(a), std::move(b));
}

Circuit random_classical(std::mt19937_64& rng, std::size_t n, std::size_t count) {
    Circuit c;
    c.add_register("q", n);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint32_t> wires(n);
        std::iota(wires.begin(), wires.end(), 0u);
        std::shuffle(wires.begin(), wires.end(), rng);
        const std::size_t k = rng() % std::min<std::size_t>(n, 5);
        if (rng() % 6 == 0) {
            c.append(Gate::swap(c.qubit(0, wires[0]), c.qubit(0, wires[1])));
            continue;
        }
        std::vector<Control> cs;
        for (std::size_t j = 0; j < k; ++j)
            cs.push_back({c.qubit(0, wires[j + 1]), rng() % 2 ? Polarity::positive : Polarity::negative});
        c.append(cs.empty() ? Gate::x(c.qubit(0, wires[0])) : Gate::mcx(cs, c.qubit(0, wires[0])));
    }
    return c;
}

}  // namespace

TEST(Toffoli, BasicGates) {
    Circuit c;
    c.add_register("q", 3);
    c.append(Gate::x(c.qubit(0, 0)));
    auto s = toffoli_run(c, ToffoliState::zeros(c));
    EXPECT_EQ(s.bits, (std::vector<std::uint8_t>{1, 0, 0}));

    Circuit t;
    t.add_register("q", 3);
    t.append(Gate::ccnot(t.qubit(0, 0), t.qubit(0, 1), t.qubit(0, 2)));
    auto in = ToffoliState::zeros(t);
    in.bits = {1, 1, 0};
    EXPECT_EQ(toffoli_run(t, in).bits[2], 1);
    in.bits = {1, 0, 0};
    EXPECT_EQ(toffoli_run(t, in).bits[2], 0);

    Circuit h;
    h.add_register("q", 1);
    h.append(Gate::h(h.qubit(0, 0)));
    EXPECT_THROW((void)toffoli_run(h, ToffoliState::zeros(h)), SimulationError);
}

TEST(Toffoli, ExampleNeqrPinnedIndex) {
    const auto c = encoder::build_neqr(example_sequence(), {.use_minimizer = false});
    const auto neqr = c.stages()[1];
    const auto x = *c.find_register("x");
    const auto data = *c.find_register("D_R");
    for (std::uint64_t i = 0; i < 8; ++i) {
        auto s = ToffoliState::zeros(c);
        s.set_value(c, x, i);
        s = toffoli_run(c, s, GateRange{neqr.begin, neqr.end});
        EXPECT_EQ(s.value(c, data), example_sequence().codes[i]) << i;
    }
    auto s = ToffoliState::zeros(c);
    s.set_value(c, x, 2);
    EXPECT_EQ(toffoli_run(c, s, GateRange{neqr.begin, neqr.end}).value(c, data), 3u);
}

TEST(Statevector, FairCoin) {
    Circuit c;
    c.add_register("q", 1);
    c.add_classical_bits(1);
    c.append(Gate::h(c.qubit(0, 0)));
    c.append(Gate::measure(c.qubit(0, 0), 0));
    int ones = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) ones += statevector_run(c, seed).classical[0];
    EXPECT_GE(ones, 4800);
    EXPECT_LE(ones, 5200);
}

TEST(Statevector, InverseQftOfUniformState) {
    Circuit c;
    const auto k = c.add_register("k", 3);
    for (const auto& q : c.qubits(k)) c.append(Gate::h(q));
    c = encoder::inverse_qft(std::move(c), c.qubits(k));
    const auto r = statevector_run(c, 1);
    EXPECT_NEAR(std::norm(r.state.amplitude(0)), 1.0, 1e-9);
}

TEST(Statevector, DotPlotAmplitudesAndMatchProbability) {
    auto [r, q] = pad_pair(SymbolSequence::from_codes({0, 1, 2, 1}), SymbolSequence::from_codes({0, 1, 2, 1}));
    const auto c = encoder::build_qdp(r, q);
    const auto res = statevector_run(c, 3);
    EXPECT_NEAR(res.state.norm(), 1.0, 1e-12);
    std::size_t nonzero = 0;
    for (const auto& a : res.state.amplitudes()) {
        if (std::abs(a) > 1e-9) {
            ++nonzero;
            EXPECT_NEAR(std::abs(a), 0.25, 1e-10);
        }
    }
    EXPECT_EQ(nonzero, 16u);
    const auto regs = encoder::find_qdp_registers(c);
    const double p1 = res.state.probability_one(c.wire(c.qubit(regs.v, 0)));
    EXPECT_NEAR(p1, static_cast<double>(classical_dotplot(r, q).count()) / 16.0, 1e-12);
}

TEST(Statevector, CollapseRemovesInconsistentComponents) {
    auto [r, q] = pad_pair(SymbolSequence::from_codes({0, 1, 2, 1}), SymbolSequence::from_codes({1, 1, 0, 2}));
    Circuit c = encoder::build_qdp(r, q);
    const auto regs = encoder::find_qdp_registers(c);
    c.add_classical_bits(1);
    c.append(Gate::measure(c.qubit(regs.v, 0), 0));
    const auto dot = classical_dotplot(r, q);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto res = statevector_run(c, seed);
        const bool v = res.classical[0] != 0;
        EXPECT_NEAR(res.state.norm(), 1.0, 1e-9);
        const auto& amps = res.state.amplitudes();
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            const auto x = (b >> c.wire(c.qubit(regs.x, 0))) & 3U;
            const auto y = (b >> c.wire(c.qubit(regs.y, 0))) & 3U;
            const bool vb = (b >> c.wire(c.qubit(regs.v, 0))) & 1U;
            if (vb != v || dot.pixel(x, y) != v) EXPECT_LE(std::abs(amps[b]), 1e-12);
        }
    }
}

TEST(Statevector, CapIsEnforced) {
    Circuit c;
    c.add_register("q", 25);
    EXPECT_THROW((void)statevector_run(c, 0), SimulationError);
    EXPECT_NO_THROW((void)statevector_run(c, 0, SimOptions{.max_qubits = 25}));
}

TEST(Statevector, NormPreservedOverLongCircuits) {
    Circuit c;
    c.add_register("q", 6);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100000; ++i) {
        const auto a = static_cast<std::uint32_t>(rng() % 6);
        const auto b = static_cast<std::uint32_t>((a + 1 + rng() % 5) % 6);
        switch (rng() % 4) {
            case 0: c.append(Gate::h(c.qubit(0, a))); break;
            case 1: c.append(Gate::controlled_phase(0.37, c.qubit(0, a), c.qubit(0, b))); break;
            case 2: c.append(Gate::root_x(Dyadic{1, 2}, {c.qubit(0, b)}, c.qubit(0, a))); break;
            default: c.append(Gate::native("u3", {0.3, 1.1, -0.4}, {c.qubit(0, a)})); break;
        }
    }
    EXPECT_NEAR(statevector_run(c, 0).state.norm(), 1.0, 1e-9);
}

TEST(Engines, AgreeOnClassicalCircuits) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const Circuit c = random_classical(rng, n, 1 + rng() % 30);
        const std::uint64_t in = rng() % (std::uint64_t{1} << n);
        auto ts = ToffoliState::zeros(c);
        for (std::size_t w = 0; w < n; ++w) ts.bits[w] = (in >> w) & 1U;
        ts = toffoli_run(c, ts);
        std::uint64_t expect = 0;
        for (std::size_t w = 0; w < n; ++w)
            if (ts.bits[w]) expect |= std::uint64_t{1} << w;
        const auto sv = statevector_run(c, 0, {}, in);
        EXPECT_NEAR(std::abs(sv.state.amplitude(expect)), 1.0, 1e-12);
        EXPECT_EQ(sparse_run(c, in).basis_state(), expect);
    }
}

TEST(Engines, SparseMatchesDense) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c;
        c.add_register("q", 5);
        for (int i = 0; i < 25; ++i) {
            const auto a = static_cast<std::uint32_t>(rng() % 5);
            const auto b = static_cast<std::uint32_t>((a + 1 + rng() % 4) % 5);
            switch (rng() % 5) {
                case 0: c.append(Gate::h(c.qubit(0, a))); break;
                case 1: c.append(Gate::controlled_phase(0.9, c.qubit(0, a), c.qubit(0, b))); break;
                case 2: c.append(Gate::root_x(Dyadic{-1, 3}, {c.qubit(0, b)}, c.qubit(0, a))); break;
                case 3: c.append(Gate::native("rxx", {0.7}, {c.qubit(0, a), c.qubit(0, b)})); break;
                default: c.append(Gate::cnot(c.qubit(0, a), c.qubit(0, b))); break;
            }
        }
        const std::uint64_t in = rng() % 32;
        const auto dense = statevector_run(c, 0, {}, in).state.amplitudes();
        std::vector<std::complex<double>> sparse(32);
        const auto state = sparse_run(c, in);
        for (const auto& [b, a] : state.terms()) sparse[b] = a;
        for (std::size_t i = 0; i < 32; ++i) EXPECT_LT(std::abs(dense[i] - sparse[i]), 1e-10);
    }
}

TEST(Sampling, DeterministicCircuitHasOneBucket) {
    Circuit c;
    c.add_register("q", 3);
    c.add_classical_bits(3);
    for (std::uint32_t i = 0; i < 3; ++i) c.append(Gate::x(c.qubit(0, i)));
    for (std::uint32_t i = 0; i < 3; ++i) c.append(Gate::measure(c.qubit(0, i), i));
    const auto h = sample(c, 500, 1);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(h.at(7), 500u);
}

TEST(Sampling, MidCircuitMeasurementRerunsPerShot) {
    Circuit c;
    c.add_register("q", 1);
    c.add_classical_bits(2);
    c.append(Gate::h(c.qubit(0, 0)));
    c.append(Gate::measure(c.qubit(0, 0), 0));
    c.append(Gate::h(c.qubit(0, 0)));
    c.append(Gate::measure(c.qubit(0, 0), 1));
    EXPECT_FALSE(measurements_terminal(c));
    const auto h = sample(c, 4000, 9);
    EXPECT_EQ(h.size(), 4u);
    for (const auto& [k, n] : h) EXPECT_NEAR(static_cast<double>(n), 1000.0, 150.0);
    EXPECT_EQ(sample(c, 4000, 9), h);
}

TEST(Sampling, QprHistogramMatchesExactProbabilities) {
    auto [r, q] = pad_pair(SymbolSequence::from_codes({0, 1, 2, 1}), SymbolSequence::from_codes({1, 2, 1, 0}));
    const auto c = encoder::build_qpr(r, q);
    EXPECT_TRUE(measurements_terminal(c));
    const std::size_t shots = 100000;
    const auto hist = sample(c, shots, 2024);
    const auto state = statevector_run(strip_measurements(c), 0).state;
    std::map<std::uint64_t, double> exact;
    for (std::uint64_t b = 0; b < state.amplitudes().size(); ++b) {
        const double p = std::norm(state.amplitude(b));
        if (p < 1e-15) continue;
        std::uint64_t key = 0;
        for (const auto& g : c.gates())
            if (g.kind == GateKind::Measure && ((b >> c.wire(g.targets[0])) & 1U)) key |= std::uint64_t{1} << g.clbit;
        exact[key] += p;
    }
    for (const auto& [key, n] : hist) EXPECT_TRUE(exact.count(key)) << key;
    for (const auto& [key, p] : exact) {
        const double mean = p * static_cast<double>(shots);
        const double sigma = std::sqrt(static_cast<double>(shots) * p * (1 - p));
        const double seen = hist.count(key) ? static_cast<double>(hist.at(key)) : 0.0;
        EXPECT_LE(std::abs(seen - mean), 3 * sigma + 1e-9) << key;
    }
    EXPECT_EQ(sample(c, shots, 2024), hist);
}

TEST(DotPlot, Examples) {
    const auto s = SymbolSequence::from_codes({0, 1, 2, 3});
    const auto same = classical_dotplot(s, s);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(same.pixel(i, i));
    EXPECT_EQ(classical_dotplot(SymbolSequence::from_codes({0, 1}), SymbolSequence::from_codes({2, 3})).count(), 0u);
    const auto p = classical_dotplot(SymbolSequence::from_codes({0, 1}), SymbolSequence::from_codes({1, 0}));
    EXPECT_TRUE(p.pixel(0, 1));
    EXPECT_TRUE(p.pixel(1, 0));
    EXPECT_FALSE(p.pixel(0, 0));
    EXPECT_FALSE(p.pixel(1, 1));
}

TEST(Method1, ExamplePairBothModes) {
    const auto ex = example_sequence();
    for (const auto mode : {McxMode::ccnot_chain, McxMode::single_ancilla}) {
        for (const bool minimize : {false, true}) {
            const auto rep = validate_method1(ex, ex, {.use_minimizer = minimize, .mcx_mode = mode});
            EXPECT_TRUE(rep.pass) << to_json(rep);
            EXPECT_EQ(rep.checks, 64u);
            EXPECT_EQ(rep.padded_checks, 0u);
        }
    }
}

TEST(Method1, SingleElementPair) {
    auto [r, q] = pad_pair(SymbolSequence::from_codes({1}), SymbolSequence::from_codes({1}));
    const auto rep = validate_method1(r, q);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.checks, 1u);
    EXPECT_EQ(rep.padded_checks, 3u);
}

TEST(Method1, CorruptedPlaRowIsReported) {
    const auto ex = example_sequence();
    auto table = logic::build_pla(ex);
    // Index 3 holds 10; flip it to 11.
    for (auto& cube : table.cubes)
        if (cube.covers(3)) cube.set_output(0b11);
    const auto layout = encoder::QdpLayout::for_pair(ex, ex, McxMode::ccnot_chain);
    Circuit c = encoder::init_registers(layout);
    const auto regs = encoder::find_qdp_registers(c);
    c = encoder::encode_table(std::move(c), table, regs.x, regs.d_r, false);
    c = encoder::encode_sequence(std::move(c), ex, regs.y, regs.d_q, false);
    c = encoder::quantum_xor(std::move(c), regs.d_r, regs.d_q);
    c = encoder::mark_matches(std::move(c), regs.d_q, regs.v);
    const auto rep = validate_method1(c, ex, ex, McxMode::ccnot_chain);
    EXPECT_FALSE(rep.pass);
    ASSERT_FALSE(rep.counterexamples.empty());
    for (const auto& ce : rep.counterexamples) EXPECT_EQ(ce.x, 3u);
    // q holds 2 at y = 3, 5 and 3 at y = 2, 6.
    EXPECT_EQ(rep.mismatches, 4u);
}

TEST(Method2, PassesOnCorrectCircuitAndCatchesDroppedCnot) {
    std::mt19937_64 rng(77);
    const auto [r, q] = random_dna_pair(rng, 4, 4);
    const auto ok = validate_method2(r, q, 20000, 5);
    EXPECT_TRUE(ok.pass) << to_json(ok);
    EXPECT_EQ(ok.checks + ok.padded_checks, 20000u);
    ASSERT_TRUE(ok.uniformity.has_value());
    EXPECT_LT(ok.uniformity->statistic, ok.uniformity->critical_value);
    EXPECT_EQ(ok.uniformity->dof, 15u);

    const Circuit good = encoder::build_qdp(r, q);
    Circuit broken;
    for (const auto& reg : good.registers()) broken.add_register(reg.name, reg.size, reg.role);
    bool dropped = false;
    for (const auto& s : good.stages()) {
        std::vector<Gate> gates(good.gates().begin() + static_cast<std::ptrdiff_t>(s.begin),
                                good.gates().begin() + static_cast<std::ptrdiff_t>(s.end));
        if (s.label == stage::dotplot && !dropped) {
            gates.erase(gates.begin());
            dropped = true;
        }
        broken.append_stage(s.label, std::move(gates));
    }
    const auto bad = validate_method2(broken, r, q, 20000, 5);
    EXPECT_FALSE(bad.pass);
    EXPECT_GT(bad.mismatches, 0u);
}

TEST(Method2, UniformityStatistic) {
    const auto flat = uniformity_test(std::vector<std::size_t>(16, 100));
    EXPECT_DOUBLE_EQ(flat.statistic, 0.0);
    EXPECT_NEAR(flat.p_value, 1.0, 1e-12);
    // Critical value of chi-squared with 15 dof at 0.001.
    EXPECT_NEAR(flat.critical_value, 37.697, 1e-3);
    std::vector<std::size_t> skew(16, 100);
    skew[0] = 400;
    EXPECT_LT(uniformity_test(skew).p_value, 0.001);
}

TEST(Reports, JsonHasFields) {
    ValidationReport r;
    r.method = "method1";
    r.checks = 4;
    const auto j = to_json(r);
    EXPECT_NE(j.find("\"pass\": true"), std::string::npos);
    EXPECT_NE(j.find("\"checks\": 4"), std::string::npos);
}
