#include "qdp/io/pipeline.hpp"

#include "qdp/error.hpp"
#include "qdp/io/fasta.hpp"
#include "qdp/io/qasm.hpp"
#include "qdp/io/report.hpp"
#include "qdp/ir/metrics.hpp"
#include "qdp/logic/pla.hpp"
#include "qdp/sim/statevector.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace qdp::io {

using nlohmann::ordered_json;

namespace {

// Runs `fn`, prefixing any library error with the pipeline stage while
// keeping its type.
template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
    const std::string p = std::string(stage) + ": ";
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(p + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError(p + e.what());
    } catch (const StructuralError& e) {
        throw StructuralError(p + e.what());
    } catch (const SimulationError& e) {
        throw SimulationError(p + e.what());
    } catch (const Error& e) {
        throw Error(p + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
}

ordered_json sequence_json(const SymbolSequence& s) {
    ordered_json j;
    j["length"] = s.original_length;
    j["padded_length"] = s.padded_length();
    j["index_bits"] = s.index_bits();
    if (s.pad_code) j["pad_code"] = *s.pad_code;
    return j;
}

}  // namespace

PreparedInput prepare_input(const RunConfig& config) {
    return in_stage("ingest", [&] {
        PreparedInput in;
        in.dataset = config.dataset.empty() ? config.reference_path.stem().string() : config.dataset;
        const std::string r = read_fasta(config.reference_path, config.alphabet);
        in.self_alignment = !config.query_path.has_value();
        const std::string q = in.self_alignment ? r : read_fasta(*config.query_path, config.alphabet);
        auto [rs, qs] = map_alphabet_pair(r, q, config.alphabet);
        auto [rp, qp] = pad_pair(std::move(rs), std::move(qs));
        in.reference = std::move(rp);
        in.query = std::move(qp);
        return in;
    });
}

transpile::BackendModel load_configured_backend(const RunConfig& config) {
    return in_stage("backend", [&] {
        return transpile::resolve_backend(
            config.backend, config.backend_dir.empty() ? transpile::default_backend_dir() : config.backend_dir);
    });
}

ValidationOutcome validate_input(const PreparedInput& input, const RunConfig& config) {
    return in_stage("validate", [&] {
        const encoder::QdpOptions options{config.use_minimizer, config.mcx_mode};
        ValidationOutcome out;
        out.method1 = sim::validate_method1(input.reference, input.query, options);
        const auto layout = encoder::QdpLayout::for_pair(input.reference, input.query, config.mcx_mode);
        const std::size_t qubits = layout.w + layout.h + 2 * layout.d + 1 + layout.ancilla_count();
        if (qubits <= sim::SimOptions{}.max_qubits) {
            out.method2 = sim::validate_method2(input.reference, input.query, config.shots, config.seed, options);
        } else {
            out.method2_skipped = "QDP circuit has " + std::to_string(qubits) + " qubits, above the statevector cap of " +
                                  std::to_string(sim::SimOptions{}.max_qubits);
        }
        return out;
    });
}

PipelineResult run_pipeline(const RunConfig& config) {
    PipelineResult result;
    const auto input = prepare_input(config);
    const auto backend = load_configured_backend(config);
    const encoder::QdpOptions options{config.use_minimizer, config.mcx_mode};
    const auto circuit = in_stage("build", [&] { return encoder::build_qpr(input.reference, input.query, options); });
    auto transpiled = in_stage("transpile", [&] { return transpile::transpile(circuit, backend, config.mcx_mode); });
    transpiled.report.dataset = input.dataset;
    result.report = transpiled.report;

    if (config.validate) {
        auto v = validate_input(input, config);
        result.method1 = v.method1;
        result.method2 = v.method2;
        result.method2_skipped = v.method2_skipped;
        if (!v.pass()) result.exit_code = 1;
    }

    const auto layout = encoder::QdpLayout::for_pair(input.reference, input.query, config.mcx_mode);
    ordered_json j = ordered_json::parse(report_to_json(result.report));
    j["use_minimizer"] = config.use_minimizer;
    j["self_alignment"] = input.self_alignment;
    j["reference"] = sequence_json(input.reference);
    j["query"] = sequence_json(input.query);
    j["data_bits"] = layout.d;
    j["logical_width"] = circuit.num_qubits();
    if (layout.w == layout.h && layout.w >= 2) {
        const auto [lo, hi] = transpile::width_bounds(layout.w, layout.d);
        j["width_bounds"] = {{"lower", lo}, {"upper", hi}};
    }
    j["logical_stage_gate_counts"] = ir::stage_gate_counts(circuit);
    if (config.validate) {
        ordered_json v;
        v["method1"] = ordered_json::parse(sim::to_json(*result.method1));
        if (result.method2) v["method2"] = ordered_json::parse(sim::to_json(*result.method2));
        else v["method2_skipped"] = result.method2_skipped;
        v["pass"] = result.exit_code == 0;
        j["validation"] = v;
    }
    result.summary_json = j.dump(2);

    in_stage("write", [&] {
        std::filesystem::create_directories(config.out_dir);
        const auto base = config.out_dir / input.dataset;
        auto out = [&](const std::string& suffix, const std::string& text) {
            const std::filesystem::path p = base.string() + suffix;
            write_text(p, text);
            result.artifacts.push_back(p);
        };
        out(".qasm", emit_qasm(transpiled.circuit));
        out(".report.json", result.summary_json + "\n");
        out(".report.csv", csv_header() + "\n" + csv_row(result.report) + "\n");
        if (result.method1) out(".method1.json", sim::to_json(*result.method1) + "\n");
        if (result.method2) out(".method2.json", sim::to_json(*result.method2) + "\n");
        return 0;
    });
    return result;
}

ModeComparisonRow compare_sequence(const SymbolSequence& seq, const transpile::BackendModel& backend,
                                   encoder::McxMode mode, std::string label) {
    ModeComparisonRow row;
    row.sequence = std::move(label);
    const auto table = logic::build_pla(seq);
    row.brute_mcx = logic::brute_force_mcx(table).size();
    row.minimized_mcx = logic::cubes_to_mcx(logic::d1merge_minimize(table)).size();
    if (row.brute_mcx > 0) {
        row.compression = 1.0 - static_cast<double>(row.minimized_mcx) / static_cast<double>(row.brute_mcx);
    }
    auto neqr_stats = [&](bool minimize, std::size_t& ccnot, std::size_t& depth) {
        const auto chain = encoder::build_neqr(seq, {minimize, encoder::McxMode::ccnot_chain});
        const auto logical = transpile::lower_to_native(chain, transpile::logical_backend(chain.num_qubits() + 64),
                                                        encoder::McxMode::ccnot_chain);
        const auto counts = ir::gate_counts(logical);
        ccnot = counts.count("ccx") ? counts.at("ccx") : 0;
        const auto native = transpile::transpile(encoder::build_neqr(seq, {minimize, mode}), backend, mode);
        const auto it = native.report.depth_per_stage.find(std::string(ir::stage::neqr));
        depth = it == native.report.depth_per_stage.end() ? 0 : it->second;
    };
    neqr_stats(false, row.brute_ccnot, row.brute_depth);
    neqr_stats(true, row.minimized_ccnot, row.minimized_depth);
    return row;
}

ModeComparison compare_modes(const RunConfig& config) {
    const auto input = prepare_input(config);
    const auto backend = load_configured_backend(config);
    return in_stage("compare-modes", [&] {
        ModeComparison out;
        out.dataset = input.dataset;
        out.backend = backend.name;
        out.mcx_mode = config.mcx_mode;
        out.rows.push_back(compare_sequence(input.reference, backend, config.mcx_mode, "reference"));
        if (!input.self_alignment) {
            out.rows.push_back(compare_sequence(input.query, backend, config.mcx_mode, "query"));
        }
        return out;
    });
}

std::string format_compression(const std::optional<double>& compression) {
    if (!compression) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *compression * 100.0);
    return buf;
}

std::string to_json(const ModeComparison& comparison) {
    ordered_json j;
    j["dataset"] = comparison.dataset;
    j["backend"] = comparison.backend;
    j["mcx_mode"] = encoder::to_string(comparison.mcx_mode);
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& r : comparison.rows) {
        rows.push_back({{"sequence", r.sequence},
                        {"brute_mcx", r.brute_mcx},
                        {"minimized_mcx", r.minimized_mcx},
                        {"brute_ccnot", r.brute_ccnot},
                        {"minimized_ccnot", r.minimized_ccnot},
                        {"brute_neqr_depth", r.brute_depth},
                        {"minimized_neqr_depth", r.minimized_depth},
                        {"compression_percent", format_compression(r.compression)}});
    }
    return j.dump(2);
}

}  // namespace qdp::io
