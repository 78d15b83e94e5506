#include <doctest.h>

#include <cmath>

#include "cesaro/diagnostics.hpp"
#include "cesaro/gallery.hpp"
#include "cesaro/selectors.hpp"
#include "testutil.hpp"

using namespace cesaro;
using namespace testutil;

namespace {

DiagnosticsGrids grids_for(const FunctionSequence& seq) { return default_grids(seq); }

double measured_mean_norm(const FunctionSequence& seq, const std::vector<std::size_t>& idx,
                          std::size_t j, double p) {
    Density mean = cesaro_mean(seq.terms(), idx, j) - seq.declared_weak_limit();
    return lp_norm(mean, p);
}

} // namespace

TEST_CASE("hilbert greedy on an orthonormal basis selects consecutively") {
    FunctionSequence basis = make_orthonormal_counting(16);
    SelectionResult res = hilbert_greedy_select(basis, basis.declared_weak_limit(), 16);
    REQUIRE(res.selection.indices.size() == 16);
    for (std::size_t j = 0; j < 16; ++j) CHECK(res.selection.indices[j] == j);
    CHECK(res.r == 1.0);
    for (const TracePoint& pt : res.trace.points) {
        const double expect_sq = 1.0 / static_cast<double>(pt.j);
        CHECK(close(pt.cesaro_norm * pt.cesaro_norm, expect_sq, 1e-12));
        CHECK(pt.cesaro_norm <= pt.analytic_bound + 1e-12);
    }
    // all logged pairings are zero
    for (const auto& step : res.selection.pair_log)
        for (double v : step) CHECK(v == 0.0);
}

TEST_CASE("hilbert certificate (r^2+2)/j holds on rademacher") {
    FunctionSequence rad = make_rademacher(12, 12, 2.0);
    SelectionResult res = hilbert_greedy_select(rad, rad.declared_weak_limit(), 12);
    REQUIRE(res.selection.indices.size() == 12);
    CHECK(res.r == 1.0);
    for (const TracePoint& pt : res.trace.points) {
        const double bound_sq = (res.r * res.r + 2.0) / static_cast<double>(pt.j);
        CHECK(pt.cesaro_norm * pt.cesaro_norm <= bound_sq + 1e-12);
        CHECK(close_rel(pt.analytic_bound, std::sqrt(bound_sq), 1e-13));
    }
}

TEST_CASE("hilbert greedy exhausts on a constant sequence at step 2") {
    SpacePtr space = make_space({0.5, 0.5});
    Density v = make_density(space, {1.0, 1.0}); // ||v||_2 = 1
    FunctionSequence constant = make_constant(v, 6, 2.0);
    try {
        hilbert_greedy_select(constant, Density::zero(space), 6);
        FAIL("expected SelectionExhausted");
    } catch (const SelectionExhausted& e) {
        CHECK(e.failed_step() == 2); // 1/(j+1) < 1 = |(v,v)| from j = 2 on
    }
}

TEST_CASE("hilbert greedy with a nonzero center matches the centered run") {
    FunctionSequence shifted = make_rademacher(10, 8, 2.0, true);
    FunctionSequence plain = make_rademacher(10, 8, 2.0);
    SelectionResult a = hilbert_greedy_select(shifted, shifted.declared_weak_limit(), 8);
    SelectionResult b = hilbert_greedy_select(plain, plain.declared_weak_limit(), 8);
    CHECK(a.selection.indices == b.selection.indices);
    CHECK(a.r == b.r);
    for (std::size_t i = 0; i < a.trace.points.size(); ++i)
        CHECK(a.trace.points[i].cesaro_norm ==
              doctest::Approx(b.trace.points[i].cesaro_norm).epsilon(1e-14));
}

TEST_CASE("hilbert replay recomputes the log exactly") {
    FunctionSequence rad = make_rademacher(10, 10, 2.0);
    SelectionResult res = hilbert_greedy_select(rad, rad.declared_weak_limit(), 10);
    ReplayReport rep = replay_hilbert(rad, rad.declared_weak_limit(), res.selection);
    CHECK(rep.log_matches);
    CHECK(rep.thresholds_ok);
    CHECK(rep.max_log_error <= 1e-12);
}

TEST_CASE("selectors are deterministic across reruns") {
    FunctionSequence rad2 = make_rademacher(10, 10, 2.0);
    SelectionResult h1 = hilbert_greedy_select(rad2, rad2.declared_weak_limit(), 10);
    SelectionResult h2 = hilbert_greedy_select(rad2, rad2.declared_weak_limit(), 10);
    CHECK(h1.selection.indices == h2.selection.indices);
    CHECK(h1.selection.pair_log == h2.selection.pair_log);

    FunctionSequence rad1 = make_rademacher(10, 10, 1.0);
    DiagnosticsGrids grids = grids_for(rad1);
    SzlenkResult s1 = szlenk_epsilon_select(rad1, 0.25, 10, grids);
    SzlenkResult s2 = szlenk_epsilon_select(rad1, 0.25, 10, grids);
    CHECK(s1.selection.indices == s2.selection.indices);
    CHECK(s1.j0 == s2.j0);
}

TEST_CASE("truncation split on rademacher leaves the terms untouched") {
    FunctionSequence rad = make_rademacher(10, 8, 1.0);
    DiagnosticsGrids grids = grids_for(rad);
    TruncationSplit split = truncation_split(rad, 0.6, grids);
    // m0 = r/delta > 1 = |r_n| on every atom, so every A_n is empty and the
    // whole grid survives as X_0
    CHECK(split.level > 1.0);
    CHECK(split.base_set.measure() == doctest::Approx(1.0).epsilon(1e-15));
    for (const AtomSet& A : split.truncation_sets) CHECK(A.size() == 0);
    CHECK(split.truncated_l1_sup == 0.0);
    for (std::size_t n = 0; n < rad.size(); ++n) {
        CHECK(lp_norm(split.truncated[n], 1.0) == 0.0);
        for (std::size_t i = 0; i < rad.term(n).size(); ++i)
            CHECK(split.remainder[n][i] == rad.term(n)[i]);
    }
    // the limit estimate agrees with the known weak limit 0
    CHECK(lp_norm(split.limit_estimate, 1.0) == 0.0);
    CHECK(split.remainder_l2_sq_sup <= split.remainder_l2_sq_bound + 1e-12);
}

TEST_CASE("truncation split rejects the spike family") {
    FunctionSequence spike = make_spike(10, 8);
    DiagnosticsGrids grids;
    grids.delta_grid = {0.5, 0.25, 0.125, 1.0 / 256.0};
    grids.k_grid = {512, 1024};
    grids.sets = {{"full", AtomSet::full(spike.space())}};
    grids.tol = 0.01;
    CHECK_THROWS_AS(truncation_split(spike, 0.5, grids), DiagnosticsFailed);
}

TEST_CASE("truncation split cuts tall peaks into v_n") {
    // atoms 0..7 carry tiny weight 2^-10, atoms 8..15 bulk weight 1/8;
    // u_n = moving peak of height 64 at atom n plus an alternating +-1
    // pattern on the bulk. The peak exceeds m_0 and must land in A_n.
    std::vector<double> weights(16, 1.0 / 8.0);
    for (std::size_t i = 0; i < 8; ++i) weights[i] = std::ldexp(1.0, -10);
    SpacePtr space = make_space(std::move(weights));
    std::vector<Density> terms;
    for (std::size_t n = 0; n < 8; ++n) {
        std::vector<double> v(16, 0.0);
        v[n] = 64.0;
        for (std::size_t i = 8; i < 16; ++i) v[i] = ((i + n) % 2 == 0) ? 1.0 : -1.0;
        terms.emplace_back(space, std::move(v));
    }
    FunctionSequence seq(terms, Density::zero(space), 1.0625, 1.0, "peaks-over-bulk");
    DiagnosticsGrids grids = default_grids(seq);
    grids.tol = 0.2;
    TruncationSplit split = truncation_split(seq, 0.9, grids);

    CHECK(split.truncated_l1_sup <= 0.3 + 1e-12); // < eps/3
    CHECK(split.remainder_l2_sq_sup <= split.remainder_l2_sq_bound + 1e-12);
    CHECK(split.level > 1.0);  // bulk survives
    CHECK(split.level < 64.0); // peaks do not
    for (std::size_t n = 0; n < seq.size(); ++n) {
        REQUIRE(split.truncation_sets[n].size() == 1);
        CHECK(split.truncation_sets[n].members()[0] == n);
        CHECK(split.truncation_sets[n].measure() <= split.delta + 1e-15);
        // v_n + remainder_n reassembles the centered term
        for (std::size_t i = 0; i < 16; ++i)
            CHECK(split.truncated[n][i] + split.remainder[n][i] == seq.term(n)[i]);
    }
    CHECK(lp_norm(split.limit_estimate, 1.0) <= 0.3 + 1e-12);
}

TEST_CASE("szlenk on the zero sequence certifies zero") {
    SpacePtr space = make_space(std::vector<double>(8, 0.125));
    FunctionSequence zeros(std::vector<Density>(8, Density::zero(space)),
                           Density::zero(space), 0.0, 1.0, "zeros");
    DiagnosticsGrids grids = default_grids(zeros);
    SzlenkResult res = szlenk_epsilon_select(zeros, 0.3, 8, grids);
    REQUIRE(res.selection.indices.size() == 8);
    for (std::size_t j = 0; j < 8; ++j) CHECK(res.selection.indices[j] == j);
    CHECK(res.j0 == 1);
    CHECK(res.mu_X0 == 0.0); // the empty prefix already carries the tail bound
    for (const TracePoint& pt : res.trace.points) {
        CHECK(pt.cesaro_norm == 0.0);
        CHECK(pt.analytic_bound == 0.0);
    }
}

TEST_CASE("szlenk on rademacher reduces to the pure hilbert stage") {
    FunctionSequence rad = make_rademacher(12, 12, 1.0);
    DiagnosticsGrids grids = grids_for(rad);
    const double eps = 0.1;
    SzlenkResult res = szlenk_epsilon_select(rad, eps, 12, grids);
    REQUIRE(res.selection.indices.size() == 12);

    CHECK(res.truncated_l1 == 0.0);
    CHECK(res.limit_l1 == 0.0);
    CHECK(res.mu_X0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.r2 == 1.0);

    // j0 from the analytic hilbert bound: ceil(9 mu (r2^2+2) / eps^2)
    const double target = 9.0 * res.mu_X0 * (res.r2 * res.r2 + 2.0) / (eps * eps);
    CHECK(res.j0 == static_cast<std::size_t>(std::ceil(target - 1e-9)));

    for (const TracePoint& pt : res.trace.points) {
        const double envelope = std::sqrt(3.0 / static_cast<double>(pt.j));
        CHECK(pt.cesaro_norm <= envelope + 1e-12);
        CHECK(close_rel(pt.analytic_bound, envelope, 1e-12));
        CHECK(pt.cesaro_norm <= res.certificate(pt.j) + 1e-12);
    }

    ReplayReport rep = replay_szlenk(res);
    CHECK(rep.log_matches);
    CHECK(rep.thresholds_ok);
}

TEST_CASE("szlenk certificate dominates the measured norms at every j") {
    for (double eps : {0.5, 0.2, 0.1}) {
        FunctionSequence rad = make_rademacher(12, 12, 1.0);
        DiagnosticsGrids grids = grids_for(rad);
        SzlenkResult res = szlenk_epsilon_select(rad, eps, 12, grids);
        for (const TracePoint& pt : res.trace.points) {
            const double measured =
                measured_mean_norm(rad, res.selection.indices, pt.j, 1.0);
            CHECK(close_rel(measured, pt.cesaro_norm, 1e-12));
            CHECK(measured <= res.certificate(pt.j) + 1e-12);
        }
    }
}

TEST_CASE("diagonal extraction on the zero sequence is the identity") {
    SpacePtr space = make_space(std::vector<double>(6, 1.0 / 6.0));
    FunctionSequence zeros(std::vector<Density>(6, Density::zero(space)),
                           Density::zero(space), 0.0, 1.0, "zeros");
    DiagnosticsGrids grids = default_grids(zeros);
    DiagonalResult res = diagonal_extract(zeros, 6, grids);
    REQUIRE(res.max_level == 6);
    for (std::size_t j = 0; j < 6; ++j) CHECK(res.selection.indices[j] == j);
    for (const TracePoint& pt : res.trace.points) CHECK(pt.cesaro_norm == 0.0);
}

TEST_CASE("diagonal extraction on rademacher") {
    FunctionSequence rad = make_rademacher(12, 12, 1.0);
    DiagnosticsGrids grids = grids_for(rad);
    DiagonalResult res = diagonal_extract(rad, 12, grids);
    REQUIRE(res.max_level >= 6);

    // indices strictly increase
    for (std::size_t i = 1; i < res.selection.indices.size(); ++i)
        CHECK(res.selection.indices[i] > res.selection.indices[i - 1]);

    // measured norms decay beyond the burn-in and certificates dominate
    for (const TracePoint& pt : res.trace.points) {
        const double measured = measured_mean_norm(rad, res.selection.indices, pt.j, 1.0);
        CHECK(close_rel(measured, pt.cesaro_norm, 1e-12));
        CHECK(measured <= res.certificate(pt.j) + 1e-12);
    }
    // burn-in certificate at l = 2: 1/2 + 2 r / j
    const std::size_t last = res.trace.points.size();
    if (last >= 3) {
        const double bound = 0.5 + 2.0 * res.r / static_cast<double>(last);
        CHECK(res.certificate(last) <= bound + 1e-12);
    }

    // nested levels: each level's indices are a subsequence of the previous
    for (std::size_t l = 1; l < res.levels.size(); ++l) {
        const auto& prev = res.levels[l - 1].indices;
        for (std::size_t idx : res.levels[l].indices)
            CHECK(std::find(prev.begin(), prev.end(), idx) != prev.end());
    }

    // diagonal rerun is index-identical
    DiagonalResult again = diagonal_extract(rad, 12, grids);
    CHECK(again.selection.indices == res.selection.indices);
}

TEST_CASE("diagonal extraction propagates diagnostics failures") {
    FunctionSequence spike = make_spike(10, 8);
    DiagnosticsGrids grids;
    grids.delta_grid = {0.5, 0.25, 0.125, 1.0 / 256.0};
    grids.k_grid = {512, 1024};
    grids.sets = {{"full", AtomSet::full(spike.space())}};
    grids.tol = 0.01;
    CHECK_THROWS_AS(diagonal_extract(spike, 8, grids), DiagnosticsFailed);
}

TEST_CASE("selector preconditions") {
    FunctionSequence rad1 = make_rademacher(8, 6, 1.0);
    CHECK_THROWS_AS(hilbert_greedy_select(rad1, rad1.declared_weak_limit(), 6),
                    ValidationError); // needs p = 2
    FunctionSequence rad2 = make_rademacher(8, 6, 2.0);
    CHECK_THROWS_AS(hilbert_greedy_select(rad2, rad2.declared_weak_limit(), 0),
                    ValidationError);
    CHECK_THROWS_AS(hilbert_greedy_select(rad2, rad2.declared_weak_limit(), 7),
                    ValidationError);
    DiagnosticsGrids grids = default_grids(rad2);
    CHECK_THROWS_AS(szlenk_epsilon_select(rad2, 0.1, 6, grids), ValidationError); // needs p = 1
    FunctionSequence r1 = make_rademacher(8, 6, 1.0);
    CHECK_THROWS_AS(szlenk_epsilon_select(r1, -0.1, 6, default_grids(r1)), ValidationError);
}
