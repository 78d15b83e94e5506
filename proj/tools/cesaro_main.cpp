// Command line front end: builds gallery sequences or ingests external
// ones, runs diagnostics / selectors / oracle cross-checks per a config
// file, and writes deterministic report bundles.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "cesaro/experiment.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t budget = 0;
    bool budget_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file")->required();
    cmd->add_option("--out", opts.out_override, "override output.dir");
    cmd->add_option("--seed", opts.seed, "override seed for randomized sweeps")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--budget", opts.budget, "override oracle.max_evaluations")
        ->each([&](const std::string&) { opts.budget_set = true; });
}

cesaro::ExperimentConfig resolve(const CommonOpts& opts) {
    cesaro::ExperimentConfig config = cesaro::load_config(opts.config_path);
    if (!opts.out_override.empty()) config.out_dir = opts.out_override;
    if (opts.seed_set) config.seed = opts.seed;
    if (opts.budget_set) config.budget.max_evaluations = opts.budget;
    return config;
}

int report(const cesaro::RunResult& result) {
    std::printf("status: %s\n", result.status.c_str());
    if (!result.detail.empty()) std::printf("detail: %s\n", result.detail.c_str());
    for (const std::string& file : result.files)
        std::printf("wrote %s/%s\n", result.out_dir.c_str(), file.c_str());
    return result.status == "ok" ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cesaro-mean subsequence selection and weak-compactness diagnostics "
                 "on discrete measure spaces"};
    app.require_subcommand(1);

    CommonOpts gallery_opts, diagnose_opts, select_opts, verify_opts, run_opts;
    CLI::App* gallery = app.add_subcommand("gallery", "emit a built-in sequence to csv");
    add_common(gallery, gallery_opts);
    CLI::App* diagnose = app.add_subcommand("diagnose", "Dunford-Pettis diagnostics only");
    add_common(diagnose, diagnose_opts);
    CLI::App* select = app.add_subcommand("select", "run the configured selector");
    add_common(select, select_opts);
    CLI::App* verify = app.add_subcommand("verify", "oracle cross-checks of the certificates");
    add_common(verify, verify_opts);
    CLI::App* run = app.add_subcommand("run", "full experiment (diagnostics + selection + tables)");
    add_common(run, run_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gallery->parsed()) return report(cesaro::run_gallery_emit(resolve(gallery_opts)));
        if (verify->parsed()) return report(cesaro::run_verify(resolve(verify_opts)));
        if (diagnose->parsed()) {
            cesaro::ExperimentConfig config = resolve(diagnose_opts);
            config.selector = "none";
            return report(cesaro::run_experiment(config));
        }
        // `select` and `run` share the full pipeline; select exists so configs
        // with oracle toggles can skip the oracle columns quickly.
        if (select->parsed()) {
            cesaro::ExperimentConfig config = resolve(select_opts);
            config.oracle = false;
            return report(cesaro::run_experiment(config));
        }
        return report(cesaro::run_experiment(resolve(run_opts)));
    } catch (const cesaro::ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
