#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/diagnostics.hpp"
#include "cesaro/gallery.hpp"
#include "cesaro/oracle.hpp"
#include "cesaro/selectors.hpp"

namespace cesaro {

/// Flat configuration document, one `key = value` per line ('#' comments).
/// Every field has a resolved default so a manifest reproduces the run.
struct ExperimentConfig {
    // sequence source
    std::string source = "gallery"; // gallery | file
    std::string family = "rademacher"; // rademacher | spike | moving_bump | orthonormal_counting
    unsigned K = 10;
    std::size_t N = 8;
    std::size_t L = 16;
    std::size_t d = 16;
    bool shifted = false;
    std::string path; // sequence csv when source = file

    double p = 1.0;

    // selector
    std::string selector = "none"; // none | hilbert | szlenk | diagonal | banach_saks_lp | okada
    double epsilon = 0.1;
    std::size_t horizon = 8;
    double decay_tol = 0.2; // okada decay target

    // diagnostics grids (empty lists resolve to defaults)
    std::vector<double> delta_grid;
    std::vector<std::size_t> k_grid;
    std::string set_family = "prefixes"; // prefixes | full | all | dyadic:<level>
    double dp_tol = 0.05;

    // oracle cross-checks
    bool oracle = false;
    OracleBudget budget;
    std::size_t random_thetas = 200;

    std::uint64_t seed = 0;
    std::string out_dir = "out";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Field-by-field validation, including selector/p compatibility
/// (hilbert needs p = 2, szlenk and diagonal need p = 1, the L^p selectors
/// need 1 < p < infinity). Throws ValidationError naming the field.
void validate_config(const ExperimentConfig& config);

FunctionSequence build_sequence(const ExperimentConfig& config);

/// Grids with config defaults resolved against the concrete space.
DiagnosticsGrids resolve_grids(const ExperimentConfig& config, const FunctionSequence& seq);

/// Everything a run produced, decoupled from the files it lands in.
struct ReportBundle {
    ExperimentConfig config; // resolved (grids filled in)
    std::optional<DPReport> diagnostics;
    std::optional<SubsequenceSelection> selection;
    std::optional<CesaroTrace> trace;
    std::vector<double> oracle_sup; // per trace point, NaN when not evaluated
    std::vector<std::pair<std::string, std::string>> summary;
    std::string status = "ok"; // ok | diagnostics-failed | selection-exhausted
    std::string detail;
};

/// Pure compute stage: diagnostics, selection, traces, oracle columns and
/// the summary key-values. Selector-stage domain failures (DiagnosticsFailed,
/// SelectionExhausted) are recorded in status/detail rather than thrown.
ReportBundle assemble_experiment(const ExperimentConfig& config);

/// Writes the bundle: format "table" emits diagnostics.txt, selection.tsv
/// and convergence.tsv; format "summary" emits summary.txt. Fixed column
/// order, tab separated, 17-significant-digit decimals.
void emit_report(const ReportBundle& bundle, const std::string& format);

struct RunResult {
    std::string status;
    std::string detail;
    std::string out_dir;
    std::vector<std::string> files;
};

/// Full experiment: assemble, emit both formats plus manifest.txt.
/// Byte-identical across reruns of the same config.
RunResult run_experiment(const ExperimentConfig& config);

/// Oracle cross-checks for the configured run, written to verify.txt:
/// sup-theta against the emitted certificates, seeded random theta sweeps,
/// fractional vs exact uniform integrability (on an atom-prefix restriction
/// when the space exceeds the knapsack budget) and the exhaustive set test
/// when the space is small enough.
RunResult run_verify(const ExperimentConfig& config);

/// Emits the configured gallery sequence as sequence.csv in out_dir.
RunResult run_gallery_emit(const ExperimentConfig& config);

/// Sequence file ingestion per the csv schema (header `weight`, optional
/// `rank` and `limit`, then `u0..u{N-1}`; rows are atoms). Reports the row
/// and column of the first violation.
FunctionSequence ingest_csv(const std::string& path, double p);
void write_sequence_csv(const FunctionSequence& seq, const std::string& path);

/// 17 significant digits, round-trip safe.
std::string format_number(double value);

} // namespace cesaro
