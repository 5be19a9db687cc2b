#include "qdp/encoder/qdp.hpp"
#include "qdp/error.hpp"
#include "qdp/io/fasta.hpp"
#include "qdp/io/pipeline.hpp"
#include "qdp/io/qasm.hpp"
#include "qdp/io/report.hpp"
#include "qdp/ir/metrics.hpp"
#include "qdp/transpile/lower.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace {

using namespace qdp;
namespace fs = std::filesystem;

fs::path temp_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("qdp_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path demo(const std::string& file) { return fs::path(QDP_SOURCE_DIR) / "data" / "demo" / file; }

TEST(Fasta, ConcatenatesFirstRecord) {
    EXPECT_EQ(io::parse_fasta(">r1\nACGT\nAC\n", AlphabetPreset::dna), "ACGTAC");
    EXPECT_EQ(io::parse_fasta(">r1\nac gt\r\n>r2\nTTTT\n", AlphabetPreset::dna), "ACGT");
    EXPECT_EQ(io::parse_fasta("acgt\n"), "ACGT");
}

TEST(Fasta, HeaderOnlyIsEmptyRecord) {
    EXPECT_THROW((void)io::parse_fasta(">only a header\n"), ConfigError);
}

TEST(Fasta, InvalidSymbolNamesPosition) {
    try {
        (void)io::parse_fasta("ACGN", AlphabetPreset::dna);
        FAIL() << "expected an error";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    EXPECT_EQ(io::parse_fasta("ACGN", AlphabetPreset::automatic), "ACGN");
}

TEST(Fasta, MissingFile) {
    EXPECT_THROW((void)io::read_fasta("/nonexistent/file.fa"), ConfigError);
    EXPECT_THROW((void)io::parse_alphabet_preset("rna"), ConfigError);
}

TEST(Qasm, EmptyOneQubitCircuit) {
    ir::Circuit c;
    c.add_register("q0", 1);
    const auto text = io::emit_qasm(c);
    EXPECT_EQ(text.rfind("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n", 0), 0U) << text;
    EXPECT_NE(text.find("qreg q0[1];"), std::string::npos);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line.starts_with("//") || line.starts_with("OPENQASM") || line.starts_with("include")) {
            continue;
        }
        EXPECT_EQ(line, "qreg q0[1];");
    }
}

TEST(Qasm, CnotLine) {
    ir::Circuit c;
    const auto r = c.add_register("q0", 2);
    c.append(ir::Gate::cnot({r, 0}, {r, 1}));
    EXPECT_NE(io::emit_qasm(c).find("\ncx q0[0],q0[1];\n"), std::string::npos);
}

TEST(Qasm, RejectsMcx) {
    ir::Circuit c;
    const auto r = c.add_register("q", 4);
    c.append(ir::Gate::mcx({{{r, 0}, ir::Polarity::positive}, {{r, 1}, ir::Polarity::positive},
                            {{r, 2}, ir::Polarity::positive}},
                           {r, 3}));
    EXPECT_THROW((void)io::emit_qasm(c), StructuralError);
}

TEST(Qasm, ParsesQelibSubset) {
    const auto c = io::parse_qasm(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[2];\ncreg m[2];\n"
        "h a[0];\ncu1(pi/2) a[0],a[1];\nu3(0.1,-pi, 2*pi/3) a[1];\nbarrier a;\nmeasure a[1] -> m[0];\n");
    EXPECT_EQ(c.num_qubits(), 2U);
    EXPECT_EQ(c.classical_bits(), 2U);
    const auto counts = ir::gate_counts(c);
    EXPECT_EQ(counts.at("h"), 1U);
    EXPECT_EQ(counts.at("cu1"), 1U);
    EXPECT_EQ(counts.at("u3"), 1U);
    EXPECT_EQ(counts.at("measure"), 1U);
    EXPECT_THROW((void)io::parse_qasm("OPENQASM 2.0;\nqreg a[1];\nfoo a[0];\n"), ConfigError);
    EXPECT_THROW((void)io::parse_qasm("OPENQASM 2.0;\nqreg a[1];\nh a[3];\n"), ConfigError);
}

class QasmRoundTrip : public ::testing::TestWithParam<std::tuple<std::string, encoder::McxMode>> {};

TEST_P(QasmRoundTrip, PreservesCountsDepthAndStages) {
    const auto& [backend_name, mode] = GetParam();
    const auto [r, q] = map_alphabet_pair("ACGTTGCA", "AGGTCGCT", AlphabetPreset::dna);
    const auto [pr, pq] = pad_pair(r, q);
    const auto backend = transpile::resolve_backend(backend_name, transpile::default_backend_dir());
    const auto t = transpile::transpile(encoder::build_qpr(pr, pq, {true, mode}), backend, mode);
    const auto text = io::emit_qasm(t.circuit);
    const auto back = io::parse_qasm(text);
    EXPECT_EQ(ir::gate_counts(back), ir::gate_counts(t.circuit));
    EXPECT_EQ(ir::depth(back), ir::depth(t.circuit));
    EXPECT_EQ(ir::stage_depths(back), ir::stage_depths(t.circuit));
    EXPECT_EQ(back.num_qubits(), t.circuit.num_qubits());
    EXPECT_EQ(io::emit_qasm(back), text);
}

INSTANTIATE_TEST_SUITE_P(Backends, QasmRoundTrip,
                         ::testing::Combine(::testing::Values("allsim", "ion-40", "superconducting-53"),
                                            ::testing::Values(encoder::McxMode::ccnot_chain,
                                                              encoder::McxMode::single_ancilla)));

TEST(Qasm, LogicalCircuitRoundTripKeepsRoles) {
    const auto [r, q] = map_alphabet_pair("ACGT", "ACGA", AlphabetPreset::dna);
    const auto lowered = transpile::lower_to_native(encoder::build_qpr(r, q), transpile::logical_backend(64),
                                                    encoder::McxMode::ccnot_chain);
    const auto back = io::parse_qasm(io::emit_qasm(lowered));
    ASSERT_EQ(back.registers().size(), lowered.registers().size());
    for (std::size_t i = 0; i < back.registers().size(); ++i) {
        EXPECT_EQ(back.registers()[i].name, lowered.registers()[i].name);
        EXPECT_EQ(back.registers()[i].role, lowered.registers()[i].role);
        EXPECT_EQ(back.registers()[i].size, lowered.registers()[i].size);
    }
    EXPECT_EQ(ir::stage_gate_counts(back), ir::stage_gate_counts(lowered));
}

TEST(Report, RuntimeFormatting) {
    EXPECT_EQ(io::format_runtime(transpile::estimated_runtime(127315, 130e-9)), "0.0166");
    EXPECT_EQ(io::format_runtime(transpile::estimated_runtime(105143, 20e-6)), "2.1029");
    EXPECT_EQ(io::csv_header(), "dataset,mcx_mode,backend,width,neqr_depth,qdp_depth,qft_depth,total_depth,runtime_s");
}

io::RunConfig demo_config(const fs::path& out) {
    io::RunConfig c;
    c.reference_path = demo("ref8.fasta");
    c.query_path = demo("query8.fasta");
    c.out_dir = out;
    c.shots = 20000;
    return c;
}

TEST(Pipeline, DemoPairWithValidation) {
    auto config = demo_config(temp_dir("pipeline"));
    config.validate = true;
    const auto result = io::run_pipeline(config);
    EXPECT_EQ(result.exit_code, 0);
    ASSERT_TRUE(result.method1.has_value());
    EXPECT_TRUE(result.method1->pass);
    ASSERT_TRUE(result.method2.has_value());
    EXPECT_TRUE(result.method2->pass);
    const auto [lo, hi] = transpile::width_bounds(3, 2);
    EXPECT_GE(result.report.width, lo);
    EXPECT_LE(result.report.width, hi);
    for (const auto& a : result.artifacts) {
        EXPECT_TRUE(fs::is_regular_file(a)) << a;
    }
    const auto csv = slurp(fs::path(config.out_dir) / "ref8.report.csv");
    EXPECT_EQ(csv.rfind(io::csv_header() + "\n", 0), 0U);
}

TEST(Pipeline, SingleAncillaNotWiderThanChain) {
    auto config = demo_config(temp_dir("modes"));
    const auto chain = io::run_pipeline(config);
    config.mcx_mode = encoder::McxMode::single_ancilla;
    const auto single = io::run_pipeline(config);
    EXPECT_LE(single.report.width, chain.report.width);
}

TEST(Pipeline, Deterministic) {
    auto config = demo_config(temp_dir("det_a"));
    config.validate = true;
    (void)io::run_pipeline(config);
    const fs::path a = config.out_dir;
    config.out_dir = temp_dir("det_b");
    (void)io::run_pipeline(config);
    for (const auto* ext : {".qasm", ".report.json", ".method1.json", ".method2.json"}) {
        EXPECT_EQ(slurp(a / (std::string("ref8") + ext)), slurp(fs::path(config.out_dir) / (std::string("ref8") + ext)))
            << ext;
    }
}

TEST(Pipeline, UnknownBackendIsConfigError) {
    auto config = demo_config(temp_dir("bad_backend"));
    config.backend = "no-such-backend";
    EXPECT_THROW((void)io::run_pipeline(config), ConfigError);
}

TEST(Pipeline, SelfAlignmentUsesEqualIndexRegisters) {
    io::RunConfig config;
    config.reference_path = write_text(temp_dir("self") / "s.fa", ">s\nACGTTGCAAC\n");
    const auto in = io::prepare_input(config);
    EXPECT_TRUE(in.self_alignment);
    EXPECT_EQ(in.reference.original_length, in.query.original_length);
    EXPECT_TRUE(std::equal(in.reference.codes.begin(),
                           in.reference.codes.begin() + static_cast<std::ptrdiff_t>(in.reference.original_length),
                           in.query.codes.begin()));
    EXPECT_EQ(in.reference.index_bits(), in.query.index_bits());
}

TEST(CompareModes, ExampleSequence) {
    io::RunConfig config;
    config.reference_path = demo("example.fasta");
    const auto cmp = io::compare_modes(config);
    ASSERT_EQ(cmp.rows.size(), 1U);
    const auto& row = cmp.rows.front();
    EXPECT_EQ(row.brute_mcx, 8U);
    EXPECT_EQ(row.brute_ccnot, 24U);
    EXPECT_LT(row.minimized_mcx, row.brute_mcx);
    EXPECT_LT(row.minimized_ccnot, row.brute_ccnot);
    ASSERT_TRUE(row.compression.has_value());
    EXPECT_DOUBLE_EQ(*row.compression, 1.0 - static_cast<double>(row.minimized_mcx) / 8.0);
}

TEST(CompareModes, ConstantSequenceCollapsesToUnconditionalX) {
    io::RunConfig config;
    config.reference_path = write_text(temp_dir("const") / "c.fa", ">c\nTTTTTTTT\n");
    const auto row = io::compare_modes(config).rows.front();
    EXPECT_EQ(row.brute_mcx, 16U);
    EXPECT_EQ(row.minimized_mcx, 2U);
    EXPECT_EQ(row.minimized_ccnot, 0U);
    ASSERT_TRUE(row.compression.has_value());
    EXPECT_DOUBLE_EQ(*row.compression, 1.0 - 2.0 / 16.0);
}

TEST(CompareModes, AllZeroIsNotApplicable) {
    io::RunConfig config;
    config.reference_path = write_text(temp_dir("zero") / "z.fa", ">z\nAAAAAAAA\n");
    const auto row = io::compare_modes(config).rows.front();
    EXPECT_EQ(row.brute_mcx, 0U);
    EXPECT_EQ(row.minimized_mcx, 0U);
    EXPECT_FALSE(row.compression.has_value());
    EXPECT_EQ(io::format_compression(row.compression), "n/a");
}

}  // namespace
