#include "cesaro/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cesaro/rng.hpp"

namespace cesaro {

namespace fs = std::filesystem;

std::string format_number(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ValidationError("config field '" + key + "': not a number: '" + v + "'");
    return d;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || v[0] == '-')
        throw ValidationError("config field '" + key + "': not a nonnegative integer: '" + v + "'");
    return static_cast<std::uint64_t>(u);
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError("config field '" + key + "': expected true/false: '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const std::string& part : split(value, ','))
        if (!trim(part).empty()) out.push_back(parse_double(key, part));
    return out;
}

std::vector<std::size_t> parse_uint_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    for (const std::string& part : split(value, ','))
        if (!trim(part).empty())
            out.push_back(static_cast<std::size_t>(parse_uint(key, part)));
    return out;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "sequence.source") config.source = value;
        else if (key == "sequence.family") config.family = value;
        else if (key == "sequence.K") config.K = static_cast<unsigned>(parse_uint(key, value));
        else if (key == "sequence.N") config.N = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "sequence.L") config.L = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "sequence.d") config.d = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "sequence.shifted") config.shifted = parse_bool(key, value);
        else if (key == "sequence.path") config.path = value;
        else if (key == "p") config.p = parse_double(key, value);
        else if (key == "selector.name") config.selector = value;
        else if (key == "selector.epsilon") config.epsilon = parse_double(key, value);
        else if (key == "selector.horizon")
            config.horizon = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "selector.decay_tol") config.decay_tol = parse_double(key, value);
        else if (key == "diagnostics.delta_grid") config.delta_grid = parse_double_list(key, value);
        else if (key == "diagnostics.k_grid") config.k_grid = parse_uint_list(key, value);
        else if (key == "diagnostics.sets") config.set_family = value;
        else if (key == "diagnostics.tol") config.dp_tol = parse_double(key, value);
        else if (key == "oracle.enabled") config.oracle = parse_bool(key, value);
        else if (key == "oracle.max_atoms")
            config.budget.max_atoms = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "oracle.max_horizon")
            config.budget.max_horizon = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "oracle.max_j")
            config.budget.max_j = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "oracle.max_evaluations")
            config.budget.max_evaluations = parse_uint(key, value);
        else if (key == "oracle.random_thetas")
            config.random_thetas = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "seed") config.seed = parse_uint(key, value);
        else if (key == "output.dir") config.out_dir = value;
        else throw ValidationError("unknown config key '" + key + "'");
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void validate_config(const ExperimentConfig& config) {
    if (config.source != "gallery" && config.source != "file")
        throw ValidationError("sequence.source must be 'gallery' or 'file'");
    if (config.source == "file" && config.path.empty())
        throw ValidationError("sequence.path is required when sequence.source = file");
    if (config.source == "gallery") {
        const std::string& f = config.family;
        if (f != "rademacher" && f != "spike" && f != "moving_bump" &&
            f != "orthonormal_counting" && f != "orthonormal")
            throw ValidationError("sequence.family: unknown family '" + f + "'");
    }
    if (std::isnan(config.p) || config.p < 1.0 || config.p == kInfinity)
        throw ValidationError("p must satisfy 1 <= p < infinity");

    const std::string& sel = config.selector;
    if (sel != "none" && sel != "hilbert" && sel != "szlenk" && sel != "diagonal" &&
        sel != "banach_saks_lp" && sel != "okada")
        throw ValidationError("selector.name: unknown selector '" + sel + "'");
    if (sel == "hilbert" && config.p != 2.0)
        throw ValidationError("selector.name = hilbert requires p = 2");
    if ((sel == "szlenk" || sel == "diagonal") && config.p != 1.0)
        throw ValidationError("selector.name = " + sel + " requires p = 1");
    if ((sel == "banach_saks_lp" || sel == "okada") && !(config.p > 1.0))
        throw ValidationError("selector.name = " + sel + " requires 1 < p < infinity");
    if (sel != "none" && config.horizon == 0)
        throw ValidationError("selector.horizon must be >= 1");
    if (sel == "szlenk" && !(config.epsilon > 0.0))
        throw ValidationError("selector.epsilon must be > 0");
    if (!(config.decay_tol > 0.0))
        throw ValidationError("selector.decay_tol must be > 0");

    for (double d : config.delta_grid)
        if (!(d > 0.0)) throw ValidationError("diagnostics.delta_grid entries must be > 0");
    for (std::size_t k : config.k_grid)
        if (k == 0) throw ValidationError("diagnostics.k_grid entries must be >= 1");
    if (!(config.dp_tol > 0.0)) throw ValidationError("diagnostics.tol must be > 0");
    const std::string& fam = config.set_family;
    if (fam != "prefixes" && fam != "full" && fam != "all" &&
        fam.rfind("dyadic:", 0) != 0)
        throw ValidationError("diagnostics.sets must be prefixes|full|all|dyadic:<level>");
    if (config.out_dir.empty()) throw ValidationError("output.dir must not be empty");
}

FunctionSequence build_sequence(const ExperimentConfig& config) {
    if (config.source == "file") return ingest_csv(config.path, config.p);
    if (config.family == "rademacher")
        return make_rademacher(config.K, config.N, config.p, config.shifted);
    if (config.family == "spike") return make_spike(config.K, config.N);
    if (config.family == "moving_bump") return make_moving_bump(config.L, config.N);
    return make_orthonormal_counting(config.d, config.p);
}

DiagnosticsGrids resolve_grids(const ExperimentConfig& config, const FunctionSequence& seq) {
    DiagnosticsGrids grids = default_grids(seq);
    grids.tol = config.dp_tol;
    if (!config.delta_grid.empty()) grids.delta_grid = config.delta_grid;
    if (!config.k_grid.empty()) grids.k_grid = config.k_grid;
    const std::size_t atoms = seq.space()->atom_count();
    for (std::size_t k : grids.k_grid)
        if (k > atoms)
            throw ValidationError("diagnostics.k_grid entry " + std::to_string(k) +
                                  " exceeds the atom count " + std::to_string(atoms));

    if (config.set_family == "prefixes") {
        grids.sets = exhaustion_prefix_family(seq.space(), grids.k_grid);
    } else if (config.set_family == "full") {
        grids.sets = {{"full", AtomSet::full(seq.space())}};
    } else if (config.set_family == "all") {
        if (atoms > 12)
            throw ValidationError("diagnostics.sets = all needs atom_count <= 12");
        grids.sets.clear();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms); ++mask) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < atoms; ++i)
                if (mask & (std::uint64_t{1} << i)) members.push_back(i);
            grids.sets.push_back(
                {"mask:" + std::to_string(mask), AtomSet(seq.space(), std::move(members))});
        }
    } else { // dyadic:<level>
        const unsigned level =
            static_cast<unsigned>(parse_uint("diagnostics.sets", config.set_family.substr(7)));
        grids.sets = dyadic_interval_family(seq.space(), level);
    }
    return grids;
}

namespace {

struct SelectorOutput {
    SubsequenceSelection selection;
    CesaroTrace trace;
    std::vector<std::pair<std::string, std::string>> extras;
};

SelectorOutput dispatch_selector(const ExperimentConfig& config, const FunctionSequence& seq,
                                 const DiagnosticsGrids& grids) {
    SelectorOutput out;
    if (config.selector == "hilbert") {
        SelectionResult res =
            hilbert_greedy_select(seq, seq.declared_weak_limit(), config.horizon);
        ReplayReport rep = replay_hilbert(seq, seq.declared_weak_limit(), res.selection);
        out.selection = std::move(res.selection);
        out.trace = std::move(res.trace);
        out.extras.emplace_back("r", format_number(res.r));
        out.extras.emplace_back("replay.ok",
                                rep.log_matches && rep.thresholds_ok ? "true" : "false");
        out.extras.emplace_back("replay.max_error", format_number(rep.max_log_error));
    } else if (config.selector == "szlenk") {
        SzlenkResult res = szlenk_epsilon_select(seq, config.epsilon, config.horizon, grids);
        ReplayReport rep = replay_szlenk(res);
        out.extras.emplace_back("epsilon", format_number(res.epsilon));
        out.extras.emplace_back("j0", std::to_string(res.j0));
        out.extras.emplace_back("mu_X0", format_number(res.mu_X0));
        out.extras.emplace_back("r2", format_number(res.r2));
        out.extras.emplace_back("truncated_l1_sup", format_number(res.truncated_l1));
        out.extras.emplace_back("limit_estimate_l1", format_number(res.limit_l1));
        out.extras.emplace_back("delta", format_number(res.split.delta));
        out.extras.emplace_back("m0", format_number(res.split.level));
        out.extras.emplace_back("replay.ok",
                                rep.log_matches && rep.thresholds_ok ? "true" : "false");
        out.extras.emplace_back("replay.max_error", format_number(rep.max_log_error));
        out.selection = std::move(res.selection);
        out.trace = std::move(res.trace);
    } else if (config.selector == "diagonal") {
        DiagonalResult res = diagonal_extract(seq, config.horizon, grids);
        out.extras.emplace_back("max_level", std::to_string(res.max_level));
        out.extras.emplace_back("r", format_number(res.r));
        out.selection = std::move(res.selection);
        out.trace = std::move(res.trace);
    } else if (config.selector == "banach_saks_lp") {
        SelectionResult res = banach_saks_lp_select(seq, config.p, config.horizon);
        ReplayReport rep = replay_banach_saks_lp(seq, res.selection);
        LpConstants consts = zeta_constant(config.p);
        out.extras.emplace_back("r", format_number(res.r));
        out.extras.emplace_back("zeta.C", format_number(consts.C));
        out.extras.emplace_back("zeta.B", format_number(consts.B));
        out.extras.emplace_back("replay.ok",
                                rep.log_matches && rep.thresholds_ok ? "true" : "false");
        out.extras.emplace_back("replay.max_error", format_number(rep.max_log_error));
        out.selection = std::move(res.selection);
        out.trace = std::move(res.trace);
    } else { // okada
        SelectionResult res = okada_select(seq, config.p, config.horizon);
        ReplayReport rep = replay_okada(seq, res.selection);
        DecayCheck decay = verify_decay(res.trace, config.decay_tol);
        out.extras.emplace_back("r", format_number(res.r));
        out.extras.emplace_back("decay.tolerance", format_number(config.decay_tol));
        out.extras.emplace_back("decay.reached", decay.reached ? "true" : "false");
        if (decay.reached)
            out.extras.emplace_back("decay.j_reached", std::to_string(decay.j_reached));
        else
            out.extras.emplace_back("decay.stalled_at_j", std::to_string(decay.j_min));
        out.extras.emplace_back("decay.min_value", format_number(decay.min_value));
        out.extras.emplace_back("replay.ok",
                                rep.log_matches && rep.thresholds_ok ? "true" : "false");
        out.extras.emplace_back("replay.max_error", format_number(rep.max_log_error));
        out.selection = std::move(res.selection);
        out.trace = std::move(res.trace);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("sequence.source", c.source);
    e.emplace_back("sequence.family", c.family == "orthonormal" ? "orthonormal_counting" : c.family);
    e.emplace_back("sequence.K", std::to_string(c.K));
    e.emplace_back("sequence.N", std::to_string(c.N));
    e.emplace_back("sequence.L", std::to_string(c.L));
    e.emplace_back("sequence.d", std::to_string(c.d));
    e.emplace_back("sequence.shifted", c.shifted ? "true" : "false");
    e.emplace_back("sequence.path", c.path);
    e.emplace_back("p", format_number(c.p));
    e.emplace_back("selector.name", c.selector);
    e.emplace_back("selector.epsilon", format_number(c.epsilon));
    e.emplace_back("selector.horizon", std::to_string(c.horizon));
    e.emplace_back("selector.decay_tol", format_number(c.decay_tol));
    std::string deltas;
    for (double d : c.delta_grid) deltas += (deltas.empty() ? "" : ",") + format_number(d);
    e.emplace_back("diagnostics.delta_grid", deltas);
    std::string ks;
    for (std::size_t k : c.k_grid) ks += (ks.empty() ? "" : ",") + std::to_string(k);
    e.emplace_back("diagnostics.k_grid", ks);
    e.emplace_back("diagnostics.sets", c.set_family);
    e.emplace_back("diagnostics.tol", format_number(c.dp_tol));
    e.emplace_back("oracle.enabled", c.oracle ? "true" : "false");
    e.emplace_back("oracle.max_atoms", std::to_string(c.budget.max_atoms));
    e.emplace_back("oracle.max_horizon", std::to_string(c.budget.max_horizon));
    e.emplace_back("oracle.max_j", std::to_string(c.budget.max_j));
    e.emplace_back("oracle.max_evaluations", std::to_string(c.budget.max_evaluations));
    e.emplace_back("oracle.random_thetas", std::to_string(c.random_thetas));
    e.emplace_back("seed", std::to_string(c.seed));
    // output.dir is a location, not an experiment parameter; the manifest
    // stays byte-identical wherever the bundle lands.
    std::sort(e.begin(), e.end());
    return e;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (const std::string& line : lines) out << line << '\n';
}

} // namespace

ReportBundle assemble_experiment(const ExperimentConfig& config) {
    validate_config(config);
    ReportBundle bundle;
    bundle.config = config;

    FunctionSequence seq = build_sequence(config);
    DiagnosticsGrids grids = resolve_grids(config, seq);
    bundle.config.delta_grid = grids.delta_grid;
    bundle.config.k_grid = grids.k_grid;

    bundle.diagnostics =
        dunford_pettis_report(seq, grids.delta_grid, grids.k_grid, grids.sets, grids.tol);

    bundle.summary.emplace_back("label", seq.label());
    bundle.summary.emplace_back("selector", config.selector);
    if (config.selector != "none")
        bundle.summary.emplace_back("theorem", theorem_tag(
            config.selector == "hilbert"          ? "hilbert-greedy"
            : config.selector == "szlenk"         ? "szlenk-epsilon"
            : config.selector == "diagonal"       ? "diagonal"
            : config.selector == "banach_saks_lp" ? "banach-saks-lp"
                                                  : "okada-duality"));
    bundle.summary.emplace_back("verdict", to_string(bundle.diagnostics->verdict));
    if (!seq.expected_verdict().empty())
        bundle.summary.emplace_back("expected_verdict", seq.expected_verdict());

    if (config.selector != "none") {
        try {
            SelectorOutput out = dispatch_selector(config, seq, grids);
            bundle.selection = std::move(out.selection);
            bundle.trace = std::move(out.trace);
            for (auto& kv : out.extras) bundle.summary.push_back(std::move(kv));
        } catch (const DiagnosticsFailed& e) {
            bundle.status = "diagnostics-failed";
            bundle.detail = e.what();
        } catch (const SelectionExhausted& e) {
            bundle.status = "selection-exhausted";
            bundle.detail = e.what();
        }
    }
    bundle.summary.emplace_back("status", bundle.status);
    if (!bundle.detail.empty()) bundle.summary.emplace_back("detail", bundle.detail);

    if (bundle.selection && bundle.trace) {
        bundle.oracle_sup.assign(bundle.trace->points.size(),
                                 std::numeric_limits<double>::quiet_NaN());
        if (config.oracle) {
            const std::size_t M =
                std::min(bundle.selection->indices.size(), config.budget.max_horizon);
            for (std::size_t idx = 0; idx < bundle.trace->points.size(); ++idx) {
                const std::size_t j = bundle.trace->points[idx].j;
                if (j == 0 || j > config.budget.max_j || j > M) continue;
                if (binomial_count(M, j) > config.budget.max_evaluations) continue;
                bundle.oracle_sup[idx] =
                    brute_force_sup_theta(seq, *bundle.selection, j, bundle.trace->p,
                                          config.budget)
                        .value;
            }
        }
        const TracePoint& last = bundle.trace->points.back();
        bundle.summary.emplace_back("trace.final_j", std::to_string(last.j));
        bundle.summary.emplace_back("trace.final_norm", format_number(last.cesaro_norm));
        bundle.summary.emplace_back("trace.final_bound", format_number(last.analytic_bound));
    }
    return bundle;
}

void emit_report(const ReportBundle& bundle, const std::string& format) {
    const fs::path dir(bundle.config.out_dir);
    fs::create_directories(dir);
    if (format == "summary") {
        std::vector<std::string> lines;
        for (const auto& [k, v] : bundle.summary) lines.push_back(k + " = " + v);
        write_lines((dir / "summary.txt").string(), lines);
        return;
    }
    if (format != "table")
        throw ValidationError("emit_report: format must be 'table' or 'summary'");

    if (bundle.diagnostics) {
        const DPReport& rep = *bundle.diagnostics;
        std::vector<std::string> lines;
        lines.push_back("norm_bound = " + format_number(rep.norm_bound));
        for (std::size_t i = 0; i < rep.ui_samples.size(); ++i) {
            lines.push_back("ui." + std::to_string(i) + ".delta = " +
                            format_number(rep.ui_samples[i].first));
            lines.push_back("ui." + std::to_string(i) + ".omega = " +
                            format_number(rep.ui_samples[i].second));
        }
        for (std::size_t i = 0; i < rep.tight_samples.size(); ++i) {
            lines.push_back("tight." + std::to_string(i) + ".k = " +
                            std::to_string(rep.tight_samples[i].first));
            lines.push_back("tight." + std::to_string(i) + ".tau = " +
                            format_number(rep.tight_samples[i].second));
        }
        for (std::size_t i = 0; i < rep.set_test.size(); ++i) {
            lines.push_back("set." + std::to_string(i) + ".label = " + rep.set_test[i].label);
            lines.push_back("set." + std::to_string(i) + ".deviation = " +
                            format_number(rep.set_test[i].tail_deviation));
        }
        lines.push_back("verdict = " + to_string(rep.verdict));
        lines.push_back("advisory = " + rep.advisory);
        write_lines((dir / "diagnostics.txt").string(), lines);
    }

    if (bundle.selection && bundle.trace) {
        std::vector<std::string> sel_lines;
        sel_lines.push_back("j\tn_j\tpairing");
        for (std::size_t s = 0; s < bundle.selection->indices.size(); ++s) {
            double pairing = 0.0;
            if (s < bundle.selection->pair_log.size()) {
                const auto& log = bundle.selection->pair_log[s];
                if (log.size() == 1) {
                    pairing = log[0];
                } else {
                    for (double v : log) pairing = std::fabs(v) > std::fabs(pairing) ? v : pairing;
                }
            }
            sel_lines.push_back(std::to_string(s + 1) + "\t" +
                                std::to_string(bundle.selection->indices[s]) + "\t" +
                                format_number(pairing));
        }
        write_lines((dir / "selection.tsv").string(), sel_lines);

        std::vector<std::string> conv_lines;
        conv_lines.push_back("j\tcesaro_norm\tanalytic_bound\toracle_sup");
        for (std::size_t i = 0; i < bundle.trace->points.size(); ++i) {
            const TracePoint& pt = bundle.trace->points[i];
            const double sup = i < bundle.oracle_sup.size()
                                   ? bundle.oracle_sup[i]
                                   : std::numeric_limits<double>::quiet_NaN();
            conv_lines.push_back(std::to_string(pt.j) + "\t" + format_number(pt.cesaro_norm) +
                                 "\t" + format_number(pt.analytic_bound) + "\t" +
                                 format_number(sup));
        }
        write_lines((dir / "convergence.tsv").string(), conv_lines);
    }
}

RunResult run_experiment(const ExperimentConfig& config) {
    ReportBundle bundle = assemble_experiment(config);
    const fs::path dir(bundle.config.out_dir);
    fs::create_directories(dir);

    std::vector<std::string> manifest;
    for (const auto& [k, v] : config_entries(bundle.config)) manifest.push_back(k + " = " + v);
    write_lines((dir / "manifest.txt").string(), manifest);

    emit_report(bundle, "table");
    emit_report(bundle, "summary");

    RunResult result{bundle.status, bundle.detail, bundle.config.out_dir, {}};
    result.files.push_back("manifest.txt");
    if (bundle.diagnostics) result.files.push_back("diagnostics.txt");
    if (bundle.selection) {
        result.files.push_back("selection.tsv");
        result.files.push_back("convergence.tsv");
    }
    result.files.push_back("summary.txt");
    return result;
}

RunResult run_verify(const ExperimentConfig& config) {
    validate_config(config);
    FunctionSequence seq = build_sequence(config);
    DiagnosticsGrids grids = resolve_grids(config, seq);

    std::vector<std::string> lines;
    bool ok = true;
    std::string status = "ok";
    std::string detail;

    if (config.selector != "none") {
        try {
            SelectorOutput out = dispatch_selector(config, seq, grids);
            const std::size_t len = out.selection.indices.size();
            const std::size_t M = std::min(len, config.budget.max_horizon);
            for (std::size_t j = 1; j <= std::min(M, config.budget.max_j); ++j) {
                if (binomial_count(M, j) > config.budget.max_evaluations) break;
                SupThetaResult sup =
                    brute_force_sup_theta(seq, out.selection, j, out.trace.p, config.budget);
                const double bound = out.trace.points[j - 1].analytic_bound;
                std::string verdict = "na";
                if (!std::isnan(bound)) {
                    const bool within = sup.value <= bound + 1e-12;
                    verdict = within ? "ok" : "violation";
                    ok = ok && within;
                }
                lines.push_back("sup_theta j=" + std::to_string(j) + " value=" +
                                format_number(sup.value) + " bound=" + format_number(bound) +
                                " status=" + verdict);
            }
            // Seeded random increasing maps at full scale.
            SplitMix64 rng(config.seed);
            std::size_t violations = 0;
            double worst_ratio = 0.0;
            for (std::size_t t = 0; t < config.random_thetas; ++t) {
                const std::size_t j = 1 + static_cast<std::size_t>(rng.below(len));
                std::vector<std::size_t> positions = rng.increasing_sample(len, j);
                std::vector<std::size_t> original(j);
                for (std::size_t s = 0; s < j; ++s)
                    original[s] = out.selection.indices[positions[s]];
                Density mean = cesaro_mean(seq.terms(), original, j) - seq.declared_weak_limit();
                const double norm = lp_norm(mean, out.trace.p);
                const double bound = out.trace.points[j - 1].analytic_bound;
                if (!std::isnan(bound)) {
                    if (norm > bound + 1e-12) ++violations;
                    if (bound > 0.0) worst_ratio = std::max(worst_ratio, norm / bound);
                }
            }
            ok = ok && violations == 0;
            lines.push_back("random_theta count=" + std::to_string(config.random_thetas) +
                            " violations=" + std::to_string(violations) +
                            " worst_ratio=" + format_number(worst_ratio));
        } catch (const DiagnosticsFailed& e) {
            status = "diagnostics-failed";
            detail = e.what();
            lines.push_back("selector: diagnostics-failed: " + detail);
        } catch (const SelectionExhausted& e) {
            status = "selection-exhausted";
            detail = e.what();
            lines.push_back("selector: selection-exhausted: " + detail);
        }
    }

    // Fractional vs exact uniform integrability.
    {
        const std::size_t atoms = seq.space()->atom_count();
        const bool restricted = atoms > config.budget.max_atoms;
        const FunctionSequence* target = &seq;
        std::optional<FunctionSequence> small;
        if (restricted) {
            small = restrict_to_atom_prefix(seq, config.budget.max_atoms);
            target = &*small;
        }
        for (double delta : grids.delta_grid) {
            const double frac = ui_modulus(*target, delta);
            const double exact = exact_ui_modulus(*target, delta, config.budget);
            const bool dominated = frac >= exact - 1e-12;
            ok = ok && dominated;
            lines.push_back(std::string("ui_compare") + (restricted ? " (restricted)" : "") +
                            " delta=" + format_number(delta) + " fractional=" +
                            format_number(frac) + " exact=" + format_number(exact) +
                            " status=" + (dominated ? "ok" : "violation"));
        }
    }

    // Exhaustive indicator-set test at very small scale.
    if (seq.space()->atom_count() <= 12) {
        ExhaustiveWeakResult exhaustive = exhaustive_weak_test(seq, grids.tol, config.budget);
        std::vector<LabeledAtomSet> all_sets;
        const std::size_t atoms = seq.space()->atom_count();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms); ++mask) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < atoms; ++i)
                if (mask & (std::uint64_t{1} << i)) members.push_back(i);
            all_sets.push_back(
                {"mask:" + std::to_string(mask), AtomSet(seq.space(), std::move(members))});
        }
        WeakNullResult direct = weak_null_test(seq, all_sets, grids.tol);
        double max_gap = 0.0;
        for (std::size_t mask = 0; mask < exhaustive.deviations.size(); ++mask)
            max_gap = std::max(max_gap, std::fabs(exhaustive.deviations[mask] -
                                                  direct.deviations[mask].tail_deviation));
        const bool agree = (exhaustive.passed == direct.passed) && max_gap <= 1e-12;
        ok = ok && agree;
        lines.push_back("exhaustive_weak agree=" + std::string(agree ? "true" : "false") +
                        " max_gap=" + format_number(max_gap) + " passed=" +
                        (exhaustive.passed ? "true" : "false"));
    }

    if (status == "ok" && !ok) status = "violation";
    lines.push_back("status = " + status);

    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    write_lines((dir / "verify.txt").string(), lines);
    return {status, detail, config.out_dir, {"verify.txt"}};
}

RunResult run_gallery_emit(const ExperimentConfig& config) {
    validate_config(config);
    FunctionSequence seq = build_sequence(config);
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    write_sequence_csv(seq, (dir / "sequence.csv").string());
    return {"ok", "", config.out_dir, {"sequence.csv"}};
}

FunctionSequence ingest_csv(const std::string& path, double p) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open sequence file '" + path + "'");
    std::string line;
    SequenceTable table;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split(line, ',');
        if (table.columns.empty()) {
            for (const std::string& c : cells) table.columns.push_back(trim(c));
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size())
                throw ValidationError("csv parse error at line " + std::to_string(lineno) +
                                      ", column " + std::to_string(c + 1) + ": '" + cell + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) throw ValidationError("sequence file is empty: '" + path + "'");
    return load_sequence(table, p);
}

void write_sequence_csv(const FunctionSequence& seq, const std::string& path) {
    SequenceTable table = to_table(seq);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

} // namespace cesaro
