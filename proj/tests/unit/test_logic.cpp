#include "qdp/error.hpp"
#include "qdp/logic/pla.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qdp;
using namespace qdp::logic;

namespace {

SymbolSequence example_sequence() { return SymbolSequence::from_codes({0, 1, 3, 2, 1, 2, 3, 0}, 2); }

// Value of the XOR of all MCX descriptors at `index`, as a circuit would compute it.
std::uint64_t xor_of_gates(const std::vector<McxDescriptor>& gates, std::uint64_t index) {
    std::uint64_t out = 0;
    for (const auto& g : gates) {
        bool fire = true;
        for (const auto& c : g.controls) {
            const bool bit = (index >> c.bit) & 1U;
            if (bit != (c.polarity == ir::Polarity::positive)) fire = false;
        }
        if (fire) out ^= std::uint64_t{1} << g.target_bit;
    }
    return out;
}

PlaTable random_table(std::mt19937_64& rng, std::size_t n, std::size_t d, std::size_t symbols) {
    std::vector<Code> codes(std::size_t{1} << n);
    for (auto& c : codes) c = static_cast<Code>(rng() % symbols);
    return build_pla(SymbolSequence::from_codes(codes, static_cast<unsigned>(d)));
}

}  // namespace

TEST(Pla, CubeTextIsMsbFirst) {
    const auto c = Cube::parse("10-", "01");
    EXPECT_EQ(c.literal(0), Literal::one);
    EXPECT_EQ(c.literal_at_bit(2), Literal::one);
    EXPECT_EQ(c.literal_at_bit(0), Literal::dash);
    EXPECT_TRUE(c.covers(0b100));
    EXPECT_TRUE(c.covers(0b101));
    EXPECT_FALSE(c.covers(0b110));
    EXPECT_EQ(c.output(), 1u);
    EXPECT_EQ(c.input_string(), "10-");
    EXPECT_EQ(c.output_string(2), "01");
}

TEST(Pla, LexOrder) {
    EXPECT_TRUE(lex_less(Cube::parse("0-", "1"), Cube::parse("1-", "1")));
    EXPECT_TRUE(lex_less(Cube::parse("10", "1"), Cube::parse("1-", "1")));
    EXPECT_FALSE(lex_less(Cube::parse("-0", "1"), Cube::parse("1-", "1")));
}

TEST(Pla, BuildRequiresPadding) {
    EXPECT_THROW((void)build_pla(SymbolSequence::from_codes({1, 2, 3})), PreconditionError);
}

TEST(Pla, ExampleTable) {
    const auto t = build_pla(example_sequence());
    ASSERT_EQ(t.cubes.size(), 6u);
    const std::vector<std::pair<std::string, std::string>> rows = {
        {"001", "01"}, {"010", "11"}, {"011", "10"}, {"100", "01"}, {"101", "10"}, {"110", "11"}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(t.cubes[i].input_string(), rows[i].first);
        EXPECT_EQ(t.cubes[i].output_string(2), rows[i].second);
    }
    const auto brute = brute_force_mcx(t);
    EXPECT_EQ(brute.size(), 8u);
    for (const auto& g : brute) EXPECT_EQ(g.controls.size(), 3u);
}

TEST(Minimizer, ExampleIsEquivalentAndSmaller) {
    const auto t = build_pla(example_sequence());
    const auto m = d1merge_minimize(t);
    EXPECT_TRUE(functional_equal(t, m));
    const auto gates = cubes_to_mcx(m);
    EXPECT_LT(gates.size(), 8u);
    for (std::uint64_t i = 0; i < 8; ++i) EXPECT_EQ(xor_of_gates(gates, i), t.evaluate(i)) << i;
}

TEST(Minimizer, ConstantSequenceCollapsesToFullDash) {
    const auto t = build_pla(SymbolSequence::from_codes(std::vector<Code>(16, 3), 2));
    const auto m = d1merge_minimize(t);
    ASSERT_EQ(m.cubes.size(), 1u);
    EXPECT_EQ(m.cubes[0].input_string(), "----");
    const auto gates = cubes_to_mcx(m);
    ASSERT_EQ(gates.size(), 2u);
    for (const auto& g : gates) EXPECT_TRUE(g.controls.empty());
}

TEST(Minimizer, AllZeroSequenceIsEmpty) {
    const auto t = build_pla(SymbolSequence::from_codes(std::vector<Code>(8, 0), 2));
    EXPECT_TRUE(t.cubes.empty());
    EXPECT_TRUE(d1merge_minimize(t).cubes.empty());
    EXPECT_TRUE(brute_force_mcx(t).empty());
}

TEST(Minimizer, RandomTablesProperty) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        const std::size_t d = 1 + rng() % 3;
        const std::size_t symbols = 1 + rng() % (std::size_t{1} << d);
        const auto t = random_table(rng, n, d, symbols);
        const auto m = d1merge_minimize(t);
        ASSERT_TRUE(functional_equal(t, m));
        EXPECT_LE(m.cubes.size(), t.cubes.size());
        // Idempotent.
        EXPECT_EQ(d1merge_minimize(m).cubes, m.cubes);
        // Pairwise disjoint cubes, so XOR of gates equals the cover.
        for (std::size_t a = 0; a < m.cubes.size(); ++a)
            for (std::size_t b = a + 1; b < m.cubes.size(); ++b) {
                const auto& x = m.cubes[a];
                const auto& y = m.cubes[b];
                const std::uint64_t both = x.care() & y.care();
                EXPECT_NE(x.value() & both, y.value() & both) << x.input_string() << " " << y.input_string();
            }
        const auto gates = cubes_to_mcx(m);
        EXPECT_LE(gates.size(), brute_force_mcx(t).size());
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) ASSERT_EQ(xor_of_gates(gates, i), t.evaluate(i));
    }
}

TEST(PlaText, RoundTrip) {
    const auto m = d1merge_minimize(build_pla(example_sequence()));
    const auto text = to_pla_string(m);
    EXPECT_EQ(text.substr(0, 10), ".i 3\n.o 2\n");
    const auto back = parse_pla(text);
    EXPECT_EQ(back.n_inputs, 3u);
    EXPECT_EQ(back.n_outputs, 2u);
    EXPECT_EQ(back.cubes, m.cubes);
    EXPECT_THROW((void)parse_pla(".i 2\n.o 1\n0x 1\n.e\n"), Error);
}
