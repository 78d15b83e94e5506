#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cesaro/experiment.hpp"
#include "testutil.hpp"

using namespace cesaro;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("cesaro_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("config parsing and validation") {
    ExperimentConfig config = parse_config_text(
        "# comment\n"
        "sequence.source = gallery\n"
        "sequence.family = rademacher\n"
        "sequence.K = 10\n"
        "sequence.N = 8\n"
        "p = 2\n"
        "selector.name = hilbert\n"
        "selector.horizon = 8\n"
        "diagnostics.delta_grid = 0.5, 0.25\n"
        "diagnostics.k_grid = 512,1024\n"
        "oracle.enabled = true\n"
        "seed = 42\n"
        "output.dir = /tmp/x\n");
    CHECK(config.K == 10);
    CHECK(config.p == 2.0);
    CHECK(config.selector == "hilbert");
    CHECK(config.delta_grid.size() == 2);
    CHECK(config.k_grid[1] == 1024);
    CHECK(config.oracle);
    CHECK(config.seed == 42);
    validate_config(config);

    CHECK_THROWS_WITH_AS(parse_config_text("bogus.key = 1\n"),
                         doctest::Contains("unknown config key"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_config_text("sequence.K = ten\n"),
                         doctest::Contains("sequence.K"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("just a line\n"), ValidationError);

    ExperimentConfig bad = config;
    bad.p = 1.0; // hilbert requires p = 2
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("hilbert"), ValidationError);
    bad = config;
    bad.selector = "szlenk";
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("szlenk"), ValidationError);
    bad = config;
    bad.selector = "warp";
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("unknown selector"),
                         ValidationError);
    bad = config;
    bad.dp_tol = 0.0;
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("diagnostics.tol"),
                         ValidationError);
    bad = config;
    bad.set_family = "everything";
    CHECK_THROWS_AS(validate_config(bad), ValidationError);
}

TEST_CASE("number formatting is round-trip safe") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 2000; ++trial) {
        const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, double(rng.below(13)) - 6.0);
        const std::string s = format_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
}

TEST_CASE("csv round trip through files is bit identical") {
    fs::path dir = fresh_dir("csv");
    FunctionSequence rad = make_rademacher(6, 4);
    const std::string path = (dir / "rad.csv").string();
    write_sequence_csv(rad, path);
    FunctionSequence loaded = ingest_csv(path, 1.0);
    REQUIRE(loaded.size() == rad.size());
    for (std::size_t n = 0; n < rad.size(); ++n)
        for (std::size_t i = 0; i < rad.term(n).size(); ++i)
            CHECK(loaded.term(n)[i] == rad.term(n)[i]);
    for (std::size_t i = 0; i < rad.space()->atom_count(); ++i)
        CHECK(loaded.space()->weight(i) == rad.space()->weight(i));

    // emitting the loaded sequence reproduces the same bytes
    const std::string again = (dir / "rad2.csv").string();
    write_sequence_csv(loaded, again);
    CHECK(slurp(path) == slurp(again));
}

TEST_CASE("csv ingestion errors name the location") {
    fs::path dir = fresh_dir("csv_err");
    {
        std::ofstream out(dir / "bad.csv");
        out << "weight,u0\n1.0,0.5\nnot_a_number,0.5\n";
    }
    CHECK_THROWS_WITH_AS(ingest_csv((dir / "bad.csv").string(), 1.0),
                         doctest::Contains("line 3"), ValidationError);
    {
        std::ofstream out(dir / "zero.csv");
        out << "weight,u0\n0.0,0.5\n";
    }
    CHECK_THROWS_WITH_AS(ingest_csv((dir / "zero.csv").string(), 1.0),
                         doctest::Contains("non-positive weight"), ValidationError);
    {
        std::ofstream out(dir / "missing.csv");
        out << "u0\n0.5\n";
    }
    CHECK_THROWS_WITH_AS(ingest_csv((dir / "missing.csv").string(), 1.0),
                         doctest::Contains("weight"), ValidationError);
    CHECK_THROWS_AS(ingest_csv((dir / "absent.csv").string(), 1.0), ValidationError);
}

TEST_CASE("run_experiment writes a deterministic hilbert bundle") {
    ExperimentConfig config;
    config.family = "rademacher";
    config.K = 10;
    config.N = 8;
    config.p = 2.0;
    config.selector = "hilbert";
    config.horizon = 8;
    config.oracle = true;
    config.set_family = "dyadic:4";

    fs::path dir_a = fresh_dir("run_a");
    fs::path dir_b = fresh_dir("run_b");
    config.out_dir = dir_a.string();
    RunResult first = run_experiment(config);
    CHECK(first.status == "ok");
    config.out_dir = dir_b.string();
    RunResult second = run_experiment(config);

    for (const std::string& name :
         {"manifest.txt", "diagnostics.txt", "selection.tsv", "convergence.tsv", "summary.txt"})
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));

    // convergence table: fixed columns, bound column recomputed from the
    // theorem formula (r = 1)
    std::istringstream table(slurp(dir_a / "convergence.tsv"));
    std::string header;
    std::getline(table, header);
    CHECK(header == "j\tcesaro_norm\tanalytic_bound\toracle_sup");
    std::string row;
    std::size_t j = 0;
    while (std::getline(table, row)) {
        ++j;
        std::istringstream cells(row);
        std::string j_cell, norm_cell, bound_cell, sup_cell;
        std::getline(cells, j_cell, '\t');
        std::getline(cells, norm_cell, '\t');
        std::getline(cells, bound_cell, '\t');
        std::getline(cells, sup_cell, '\t');
        CHECK(j_cell == std::to_string(j));
        const double bound = std::strtod(bound_cell.c_str(), nullptr);
        CHECK(close_rel(bound, std::sqrt(3.0 / double(j)), 1e-12));
        const double sup = std::strtod(sup_cell.c_str(), nullptr);
        const double norm = std::strtod(norm_cell.c_str(), nullptr);
        if (!std::isnan(sup)) {
            CHECK(sup <= bound + 1e-12);
            CHECK(sup + 1e-12 >= norm); // the identity theta is enumerated
        }
    }
    CHECK(j == 8);

    const std::string summary = slurp(dir_a / "summary.txt");
    CHECK(summary.find("theorem = uniform Banach-Saks property of Hilbert space") !=
          std::string::npos);
    CHECK(summary.find("status = ok") != std::string::npos);
    CHECK(summary.find("replay.ok = true") != std::string::npos);
}

TEST_CASE("spike with szlenk exits with a named diagnostics failure") {
    ExperimentConfig config;
    config.family = "spike";
    config.K = 10;
    config.N = 8;
    config.p = 1.0;
    config.selector = "szlenk";
    config.epsilon = 0.5;
    config.horizon = 8;
    config.delta_grid = {0.5, 0.25, 0.125, 1.0 / 256.0};
    config.k_grid = {512, 1024};
    config.set_family = "full";
    config.dp_tol = 0.01;
    fs::path dir = fresh_dir("spike_szlenk");
    config.out_dir = dir.string();

    RunResult result = run_experiment(config);
    CHECK(result.status == "diagnostics-failed");
    const std::string diagnostics = slurp(dir / "diagnostics.txt");
    CHECK(diagnostics.find("verdict = UI-failure") != std::string::npos);
    const std::string summary = slurp(dir / "summary.txt");
    CHECK(summary.find("status = diagnostics-failed") != std::string::npos);

    // reruns of the failing config are byte-identical too
    fs::path dir2 = fresh_dir("spike_szlenk2");
    config.out_dir = dir2.string();
    run_experiment(config);
    CHECK(slurp(dir / "diagnostics.txt") == slurp(dir2 / "diagnostics.txt"));
    CHECK(slurp(dir / "summary.txt") == slurp(dir2 / "summary.txt"));
}

TEST_CASE("gallery emit then ingest reproduces the sequence") {
    ExperimentConfig config;
    config.family = "rademacher";
    config.K = 6;
    config.N = 4;
    config.p = 1.0;
    fs::path dir = fresh_dir("gallery_emit");
    config.out_dir = dir.string();
    RunResult result = run_gallery_emit(config);
    CHECK(result.status == "ok");

    FunctionSequence loaded = ingest_csv((dir / "sequence.csv").string(), 1.0);
    FunctionSequence rad = make_rademacher(6, 4);
    REQUIRE(loaded.size() == rad.size());
    for (std::size_t n = 0; n < rad.size(); ++n)
        for (std::size_t i = 0; i < rad.term(n).size(); ++i)
            CHECK(loaded.term(n)[i] == rad.term(n)[i]);
}

TEST_CASE("verify run cross-checks certificates") {
    ExperimentConfig config;
    config.family = "rademacher";
    config.K = 8;
    config.N = 8;
    config.p = 2.0;
    config.selector = "hilbert";
    config.horizon = 8;
    config.budget.max_atoms = 16;
    config.random_thetas = 50;
    config.seed = 7;
    fs::path dir = fresh_dir("verify");
    config.out_dir = dir.string();

    RunResult result = run_verify(config);
    CHECK(result.status == "ok");
    const std::string verify = slurp(dir / "verify.txt");
    CHECK(verify.find("sup_theta j=1") != std::string::npos);
    CHECK(verify.find("violations=0") != std::string::npos);
    CHECK(verify.find("ui_compare (restricted)") != std::string::npos);
    CHECK(verify.find("status = ok") != std::string::npos);

    // rerun with the same seed is byte-identical
    fs::path dir2 = fresh_dir("verify2");
    config.out_dir = dir2.string();
    run_verify(config);
    CHECK(slurp(dir / "verify.txt") == slurp(dir2 / "verify.txt"));
}

TEST_CASE("file-sourced experiment round trip") {
    fs::path dir = fresh_dir("file_source");
    FunctionSequence rad = make_rademacher(8, 6, 1.0);
    const std::string csv = (dir / "seq.csv").string();
    write_sequence_csv(rad, csv);

    ExperimentConfig config;
    config.source = "file";
    config.path = csv;
    config.p = 1.0;
    config.selector = "szlenk";
    config.epsilon = 0.5;
    config.horizon = 6;
    config.out_dir = (dir / "out").string();
    RunResult result = run_experiment(config);
    CHECK(result.status == "ok");
    const std::string summary = slurp(dir / "out" / "summary.txt");
    CHECK(summary.find("status = ok") != std::string::npos);
}
