#pragma once

#include "qdp/encoder/qdp.hpp"
#include "qdp/sequence.hpp"
#include "qdp/sim/validate.hpp"
#include "qdp/transpile/lower.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qdp::io {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct RunConfig {
    std::filesystem::path reference_path;
    /// Absent means the reference is aligned against itself.
    std::optional<std::filesystem::path> query_path;
    AlphabetPreset alphabet = AlphabetPreset::dna;
    encoder::McxMode mcx_mode = encoder::McxMode::ccnot_chain;
    /// Preset name or path to a backend JSON file.
    std::string backend = "allsim";
    std::filesystem::path backend_dir;
    bool use_minimizer = true;
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = kDefaultSeed;
    std::size_t shots = 100000;
    /// Report label; defaults to the reference file's stem.
    std::string dataset;
    bool validate = false;
};

/// Padded sequence pair of a run.
struct PreparedInput {
    std::string dataset;
    SymbolSequence reference;
    SymbolSequence query;
    bool self_alignment = false;
};

/// Ingest, alphabet mapping and padding. Errors carry an "ingest:" prefix.
[[nodiscard]] PreparedInput prepare_input(const RunConfig& config);

[[nodiscard]] transpile::BackendModel load_configured_backend(const RunConfig& config);

struct PipelineResult {
    /// 0, or 1 when a requested validation failed.
    int exit_code = 0;
    transpile::ResourceReport report;
    std::optional<sim::ValidationReport> method1;
    std::optional<sim::ValidationReport> method2;
    /// Why method 2 was not run, when it was requested but skipped.
    std::string method2_skipped;
    std::string summary_json;
    std::vector<std::filesystem::path> artifacts;
};

/// ingest, map, pad, build_qpr, lower/route, estimate; writes
/// <dataset>.qasm, <dataset>.report.json, <dataset>.report.csv and, when
/// validating, <dataset>.method1.json / .method2.json into out_dir.
/// Component errors are rethrown with the failing stage named.
[[nodiscard]] PipelineResult run_pipeline(const RunConfig& config);

/// Validation of a prepared pair: method 1 always, method 2 when the QDP
/// circuit fits the statevector cap.
struct ValidationOutcome {
    sim::ValidationReport method1;
    std::optional<sim::ValidationReport> method2;
    std::string method2_skipped;
    [[nodiscard]] bool pass() const { return method1.pass && (!method2 || method2->pass); }
};
[[nodiscard]] ValidationOutcome validate_input(const PreparedInput& input, const RunConfig& config);

struct ModeComparisonRow {
    std::string sequence;
    std::size_t brute_mcx = 0;
    std::size_t minimized_mcx = 0;
    /// CCNOTs after chain decomposition.
    std::size_t brute_ccnot = 0;
    std::size_t minimized_ccnot = 0;
    /// NEQR-stage depth after lowering to the configured backend and mode.
    std::size_t brute_depth = 0;
    std::size_t minimized_depth = 0;
    /// 1 - minimized/brute over MCX counts; absent when brute is 0.
    std::optional<double> compression;
};

struct ModeComparison {
    std::string dataset;
    std::string backend;
    encoder::McxMode mcx_mode = encoder::McxMode::ccnot_chain;
    std::vector<ModeComparisonRow> rows;
};

/// NEQR stage of each distinct input sequence, with and without the minimizer.
[[nodiscard]] ModeComparison compare_modes(const RunConfig& config);
[[nodiscard]] ModeComparisonRow compare_sequence(const SymbolSequence& seq, const transpile::BackendModel& backend,
                                                 encoder::McxMode mode, std::string label);
[[nodiscard]] std::string to_json(const ModeComparison& comparison);
/// Percentage with two decimals, or "n/a".
[[nodiscard]] std::string format_compression(const std::optional<double>& compression);

}  // namespace qdp::io
