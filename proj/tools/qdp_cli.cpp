// qdp: dot-plot circuit compiler command line.

#include "qdp/encoder/qdp.hpp"
#include "qdp/error.hpp"
#include "qdp/io/fasta.hpp"
#include "qdp/io/pipeline.hpp"
#include "qdp/io/qasm.hpp"
#include "qdp/io/report.hpp"
#include "qdp/ir/metrics.hpp"
#include "qdp/logic/pla.hpp"
#include "qdp/sim/statevector.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace qdp;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

struct Flags {
    std::string reference;
    std::string query;
    std::string backend = "allsim";
    std::string mcx_mode = "chain";
    std::string alphabet = "dna";
    bool no_minimize = false;
    std::size_t shots = 100000;
    std::uint64_t seed = io::kDefaultSeed;
    std::string out = "out";
    std::string dataset;
    bool validate = false;
};

void add_common(CLI::App* cmd, Flags& f, bool pair = true) {
    cmd->add_option("--reference,-r", f.reference, "Reference sequence (FASTA or raw)")->required();
    if (pair) cmd->add_option("--query,-q", f.query, "Query sequence; omit to align the reference against itself");
    cmd->add_option("--backend,-b", f.backend, "Backend preset or JSON file")->capture_default_str();
    cmd->add_option("--mcx-mode", f.mcx_mode, "chain or single-ancilla")->capture_default_str();
    cmd->add_option("--alphabet", f.alphabet, "dna or auto")->capture_default_str();
    cmd->add_flag("--no-minimize", f.no_minimize, "Brute-force NEQR encoding");
    cmd->add_option("--out,-o", f.out, "Output directory")->capture_default_str();
    cmd->add_option("--dataset", f.dataset, "Report label (default: reference file stem)");
}

io::RunConfig to_config(const Flags& f) {
    io::RunConfig c;
    c.reference_path = f.reference;
    if (!f.query.empty()) c.query_path = f.query;
    c.alphabet = io::parse_alphabet_preset(f.alphabet);
    c.mcx_mode = encoder::parse_mcx_mode(f.mcx_mode);
    c.backend = f.backend;
    c.use_minimizer = !f.no_minimize;
    c.out_dir = f.out;
    c.seed = f.seed;
    c.shots = f.shots;
    c.dataset = f.dataset;
    c.validate = f.validate;
    return c;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

int cmd_encode(const Flags& f) {
    const auto config = to_config(f);
    const auto raw = io::read_fasta(config.reference_path, config.alphabet);
    auto [seq, unused] = pad_pair(map_alphabet(raw, config.alphabet), map_alphabet(raw, config.alphabet));
    (void)unused;
    const auto backend = io::load_configured_backend(config);
    const auto table = logic::build_pla(seq);
    const auto cover = config.use_minimizer ? logic::d1merge_minimize(table) : table;
    const auto circuit = encoder::build_neqr(seq, {config.use_minimizer, config.mcx_mode});
    const auto t = transpile::transpile(circuit, backend, config.mcx_mode);
    const std::string name = config.dataset.empty() ? config.reference_path.stem().string() : config.dataset;
    const auto base = std::filesystem::path(config.out_dir) / name;
    write_file(base.string() + ".neqr.pla", logic::to_pla_string(cover));
    write_file(base.string() + ".neqr.qasm", io::emit_qasm(t.circuit));
    auto report = t.report;
    report.dataset = name;
    ordered_json j = ordered_json::parse(io::report_to_json(report));
    j["length"] = seq.original_length;
    j["padded_length"] = seq.padded_length();
    j["data_bits"] = seq.d;
    j["cubes"] = cover.cubes.size();
    j["mcx_gates"] = ir::stage_gate_counts(circuit).at(std::string(ir::stage::neqr));
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_build(const Flags& f) {
    const auto config = to_config(f);
    const auto in = io::prepare_input(config);
    const auto c = encoder::build_qpr(in.reference, in.query, {config.use_minimizer, config.mcx_mode});
    ordered_json j;
    j["dataset"] = in.dataset;
    ordered_json regs = ordered_json::array();
    for (const auto& r : c.registers()) {
        regs.push_back({{"name", r.name}, {"size", r.size}, {"role", ir::to_string(r.role)}});
    }
    j["registers"] = regs;
    j["classical_bits"] = c.classical_bits();
    j["width"] = ir::width(c);
    j["stage_gate_counts"] = ir::stage_gate_counts(c);
    j["stage_depths"] = ir::stage_depths(c);
    j["gate_counts"] = ir::gate_counts(c);
    j["depth"] = ir::depth(c);
    const std::string text = j.dump(2) + "\n";
    write_file(std::filesystem::path(config.out_dir) / (in.dataset + ".qpr.json"), text);
    std::cout << text;
    return kExitOk;
}

int cmd_transpile(const Flags& f, bool write_qasm) {
    const auto config = to_config(f);
    const auto in = io::prepare_input(config);
    const auto backend = io::load_configured_backend(config);
    const auto c = encoder::build_qpr(in.reference, in.query, {config.use_minimizer, config.mcx_mode});
    auto t = transpile::transpile(c, backend, config.mcx_mode);
    t.report.dataset = in.dataset;
    const std::string json = io::report_to_json(t.report);
    if (write_qasm) {
        const auto base = std::filesystem::path(config.out_dir) / in.dataset;
        write_file(base.string() + ".qasm", io::emit_qasm(t.circuit));
        write_file(base.string() + ".report.json", json + "\n");
    }
    std::cout << json << "\n";
    return kExitOk;
}

int cmd_estimate(const Flags& f, std::optional<std::size_t> depth, std::optional<double> gate_time_ns, bool csv) {
    if (depth || gate_time_ns) {
        if (!depth || !gate_time_ns) throw ConfigError("--depth and --gate-time-ns go together");
        if (!(*gate_time_ns > 0.0)) throw ConfigError("--gate-time-ns must be positive");
        std::cout << io::format_runtime(transpile::estimated_runtime(*depth, *gate_time_ns * 1e-9)) << "\n";
        return kExitOk;
    }
    if (f.reference.empty()) throw ConfigError("estimate needs --reference or --depth/--gate-time-ns");
    const auto config = to_config(f);
    const auto in = io::prepare_input(config);
    const auto backend = io::load_configured_backend(config);
    auto report = transpile::estimate(
        encoder::build_qpr(in.reference, in.query, {config.use_minimizer, config.mcx_mode}), backend, config.mcx_mode);
    report.dataset = in.dataset;
    if (csv) std::cout << io::csv_header() << "\n" << io::csv_row(report) << "\n";
    else std::cout << io::report_to_json(report) << "\n";
    return kExitOk;
}

int cmd_simulate(const Flags& f) {
    const auto config = to_config(f);
    const auto in = io::prepare_input(config);
    const auto c = encoder::build_qpr(in.reference, in.query, {config.use_minimizer, config.mcx_mode});
    if (c.num_qubits() > sim::SimOptions{}.max_qubits) {
        throw ConfigError("circuit has " + std::to_string(c.num_qubits()) + " qubits; the statevector cap is " +
                          std::to_string(sim::SimOptions{}.max_qubits));
    }
    const auto hist = sim::sample(c, config.shots, config.seed);
    ordered_json counts;
    for (const auto& [key, n] : hist) {
        std::string bits;
        for (std::size_t i = c.classical_bits(); i-- > 0;) bits.push_back(((key >> i) & 1U) ? '1' : '0');
        counts[bits] = n;
    }
    const auto layout = encoder::QdpLayout::for_pair(in.reference, in.query, config.mcx_mode);
    ordered_json j;
    j["dataset"] = in.dataset;
    j["shots"] = config.shots;
    j["seed"] = config.seed;
    j["classical_layout"] = {{"x", {0, layout.w}}, {"y", {layout.w, layout.w + layout.h}}, {"v", encoder::v_clbit(layout)}};
    j["counts"] = counts;
    const std::string text = j.dump(2) + "\n";
    write_file(std::filesystem::path(config.out_dir) / (in.dataset + ".histogram.json"), text);
    std::cout << text;
    return kExitOk;
}

int cmd_validate(const Flags& f) {
    const auto config = to_config(f);
    const auto in = io::prepare_input(config);
    const auto v = io::validate_input(in, config);
    ordered_json j;
    j["dataset"] = in.dataset;
    j["method1"] = ordered_json::parse(sim::to_json(v.method1));
    if (v.method2) j["method2"] = ordered_json::parse(sim::to_json(*v.method2));
    else j["method2_skipped"] = v.method2_skipped;
    j["pass"] = v.pass();
    std::cout << j.dump(2) << "\n";
    return v.pass() ? kExitOk : kExitValidation;
}

int cmd_compare(const Flags& f) {
    std::cout << io::to_json(io::compare_modes(to_config(f))) << "\n";
    return kExitOk;
}

int cmd_run(const Flags& f) {
    const auto result = io::run_pipeline(to_config(f));
    std::cout << result.summary_json << "\n";
    for (const auto& a : result.artifacts) std::cerr << "wrote " << a.string() << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum dot-plot circuit compiler"};
    app.require_subcommand(1);
    Flags f;
    std::optional<std::size_t> depth;
    std::optional<double> gate_time_ns;
    bool csv = false;

    auto* encode = app.add_subcommand("encode", "NEQR-encode one sequence and write its PLA and QASM");
    add_common(encode, f, false);

    auto* build = app.add_subcommand("build", "Build the full pattern-recognition circuit and summarise it");
    add_common(build, f);

    auto* tr = app.add_subcommand("transpile", "Lower and route to a backend; write QASM and a report");
    add_common(tr, f);

    auto* est = app.add_subcommand("estimate", "Resource report, or runtime from --depth and --gate-time-ns");
    add_common(est, f);
    est->get_option("--reference")->required(false);
    est->add_option("--depth", depth, "Critical-path depth");
    est->add_option("--gate-time-ns", gate_time_ns, "Time per depth step in ns");
    est->add_flag("--csv", csv, "Print a CSV row instead of JSON");

    auto* simc = app.add_subcommand("simulate", "Sample the pattern-recognition circuit");
    add_common(simc, f);
    simc->add_option("--shots", f.shots)->capture_default_str();
    simc->add_option("--seed", f.seed)->capture_default_str();

    auto* val = app.add_subcommand("validate", "Check the dot-plot circuit against the classical dot plot");
    add_common(val, f);
    val->add_option("--shots", f.shots)->capture_default_str();
    val->add_option("--seed", f.seed)->capture_default_str();

    auto* cmp = app.add_subcommand("compare-modes", "Brute-force vs minimised NEQR encoding");
    add_common(cmp, f);

    auto* run = app.add_subcommand("run", "Whole pipeline: build, transpile, estimate, optionally validate");
    add_common(run, f);
    run->add_flag("--validate", f.validate, "Run both validation methods");
    run->add_option("--shots", f.shots)->capture_default_str();
    run->add_option("--seed", f.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*encode) return cmd_encode(f);
        if (*build) return cmd_build(f);
        if (*tr) return cmd_transpile(f, true);
        if (*est) return cmd_estimate(f, depth, gate_time_ns, csv);
        if (*simc) return cmd_simulate(f);
        if (*val) return cmd_validate(f);
        if (*cmp) return cmd_compare(f);
        if (*run) return cmd_run(f);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
