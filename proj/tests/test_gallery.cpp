#include <doctest.h>

#include <cmath>

#include "cesaro/diagnostics.hpp"
#include "cesaro/gallery.hpp"
#include "testutil.hpp"

using namespace cesaro;
using namespace testutil;

TEST_CASE("rademacher metadata recomputes from scratch") {
    FunctionSequence rad = make_rademacher(10, 8);
    CHECK(rad.size() == 8);
    CHECK(rad.norm_bound() == 1.0);
    for (std::size_t n = 0; n < rad.size(); ++n) {
        // terms are exactly +-1
        for (std::size_t i = 0; i < rad.term(n).size(); ++i)
            CHECK(std::fabs(rad.term(n)[i]) == 1.0);
        CHECK(lp_norm(rad.term(n), 1.0) == 1.0);
        CHECK(lp_norm(rad.term(n), 2.0) == 1.0);
        CHECK(naive_l1_norm(rad.term(n)) == 1.0);
    }
    // declared limit is zero
    CHECK(lp_norm(rad.declared_weak_limit(), 1.0) == 0.0);
    CHECK_THROWS_AS(make_rademacher(4, 5), ValidationError);
}

TEST_CASE("rademacher alternation pattern is exact") {
    FunctionSequence rad = make_rademacher(3, 3);
    // r_1 on 8 atoms: + + + + - - - -
    std::vector<double> expect1 = {1, 1, 1, 1, -1, -1, -1, -1};
    std::vector<double> expect2 = {1, 1, -1, -1, 1, 1, -1, -1};
    std::vector<double> expect3 = {1, -1, 1, -1, 1, -1, 1, -1};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(rad.term(0)[i] == expect1[i]);
        CHECK(rad.term(1)[i] == expect2[i]);
        CHECK(rad.term(2)[i] == expect3[i]);
    }
}

TEST_CASE("shifted rademacher declares the limit 1") {
    const double p = 2.0;
    FunctionSequence shifted = make_rademacher(8, 6, p, true);
    CHECK(shifted.declared_weak_limit()[0] == 1.0);
    const double expect_r = std::pow(2.0, 1.0 - 1.0 / p);
    CHECK(shifted.norm_bound() == doctest::Approx(expect_r).epsilon(1e-14));
    for (std::size_t n = 0; n < shifted.size(); ++n)
        CHECK(lp_norm(shifted.term(n), p) == doctest::Approx(expect_r).epsilon(1e-14));
    // weak-null test against the limit: centered terms are plain rademachers
    FunctionSequence plain = make_rademacher(8, 6, p);
    for (std::size_t n = 0; n < shifted.size(); ++n)
        for (std::size_t i = 0; i < plain.term(n).size(); ++i)
            CHECK(shifted.term(n)[i] - shifted.declared_weak_limit()[i] == plain.term(n)[i]);
}

TEST_CASE("spike terms conserve unit mass") {
    FunctionSequence spike = make_spike(10, 8);
    for (std::size_t m = 0; m < spike.size(); ++m) {
        CHECK(lp_norm(spike.term(m), 1.0) == 1.0);
        CHECK(dual_pairing(spike.term(m), Density::constant(spike.space(), 1.0)) == 1.0);
    }
    CHECK(spike.expected_verdict() == "UI-failure");
    CHECK_THROWS_AS(make_spike(6, 7), ValidationError);
}

TEST_CASE("moving bump escapes the exhaustion") {
    FunctionSequence bump = make_moving_bump(16, 12);
    CHECK(bump.space()->atom_count() == 32);
    for (std::size_t n = 0; n < bump.size(); ++n) {
        CHECK(lp_norm(bump.term(n), 1.0) == 1.0);
        CHECK(lp_norm(bump.term(n), kInfinity) == 1.0);
    }
    // direct tail sums: every bump with n >= 4 lies fully outside [0,4)
    CHECK(tightness_tail(bump, 8) == 1.0);
    for (std::size_t k = 1; k + 1 <= bump.size(); ++k)
        CHECK(tightness_tail(bump, 2 * k) == 1.0);
    CHECK(tightness_tail(bump, bump.space()->atom_count()) == 0.0);
    CHECK(bump.expected_verdict() == "tightness-failure");
    CHECK_THROWS_AS(make_moving_bump(4, 5), ValidationError);
}

TEST_CASE("orthonormal counting basis") {
    FunctionSequence basis = make_orthonormal_counting(6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(lp_norm(basis.term(i), 1.0) == 1.0);
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(dual_pairing(basis.term(i), basis.term(j)) == (i == j ? 1.0 : 0.0));
    }
    std::vector<std::size_t> all = {0, 1, 2, 3, 4, 5};
    for (std::size_t j = 1; j <= 6; ++j) {
        Density mean = cesaro_mean(basis.terms(), all, j);
        CHECK(close_rel(lp_norm(mean, 2.0), 1.0 / std::sqrt(double(j)), 1e-13));
    }
}

TEST_CASE("sequence invariant rejects terms above the declared bound") {
    SpacePtr space = make_space({1.0, 1.0});
    std::vector<Density> terms = {make_density(space, {3.0, 0.0})};
    CHECK_THROWS_AS(FunctionSequence(terms, Density::zero(space), 1.0, 2.0, "bad"),
                    ValidationError);
}

TEST_CASE("table round-trip preserves values bit for bit") {
    FunctionSequence rad = make_rademacher(6, 4);
    SequenceTable table = to_table(rad);
    FunctionSequence loaded = load_sequence(table, rad.p());
    CHECK(loaded.size() == rad.size());
    CHECK(same_space(loaded.space(), rad.space()));
    for (std::size_t n = 0; n < rad.size(); ++n)
        for (std::size_t i = 0; i < rad.term(n).size(); ++i)
            CHECK(loaded.term(n)[i] == rad.term(n)[i]);
    for (std::size_t i = 0; i < rad.space()->atom_count(); ++i)
        CHECK(loaded.declared_weak_limit()[i] == rad.declared_weak_limit()[i]);
}

TEST_CASE("load_sequence rejects bad tables with distinct messages") {
    SequenceTable table;
    table.columns = {"weight", "u0"};
    table.rows = {{1.0, 0.5}, {0.0, 0.5}};
    CHECK_THROWS_WITH_AS(load_sequence(table), doctest::Contains("non-positive weight"),
                         ValidationError);

    table.rows = {{1.0, 0.5}, {1.0}};
    CHECK_THROWS_WITH_AS(load_sequence(table), doctest::Contains("ragged row"), ValidationError);

    table.rows = {{1.0, 0.5}, {1.0, std::numeric_limits<double>::infinity()}};
    CHECK_THROWS_WITH_AS(load_sequence(table), doctest::Contains("non-finite entry"),
                         ValidationError);

    table.columns = {"weight", "rank", "u0"};
    table.rows = {{1.0, 0.0, 0.5}, {1.0, 0.0, 0.5}};
    CHECK_THROWS_WITH_AS(load_sequence(table), doctest::Contains("not a permutation"),
                         ValidationError);

    table.columns = {"weight"};
    table.rows = {{1.0}};
    CHECK_THROWS_WITH_AS(load_sequence(table), doctest::Contains("no term columns"),
                         ValidationError);
}

TEST_CASE("load_sequence honors a declared limit column") {
    SequenceTable table;
    table.columns = {"weight", "limit", "u0", "u1"};
    table.rows = {{0.5, 1.0, 2.0, 1.0}, {0.5, -1.0, 0.0, -1.0}};
    FunctionSequence seq = load_sequence(table, 1.0);
    CHECK(seq.declared_weak_limit()[0] == 1.0);
    CHECK(seq.declared_weak_limit()[1] == -1.0);
    // r is the recomputed max norm
    CHECK(seq.norm_bound() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("subsequence and atom prefix restriction") {
    FunctionSequence rad = make_rademacher(6, 6);
    std::vector<std::size_t> picks = {1, 3, 4};
    FunctionSequence sub = subsequence(rad, picks);
    CHECK(sub.size() == 3);
    for (std::size_t i = 0; i < sub.term(0).size(); ++i)
        CHECK(sub.term(0)[i] == rad.term(1)[i]);
    std::vector<std::size_t> bad = {3, 1};
    CHECK_THROWS_AS(subsequence(rad, bad), ValidationError);

    FunctionSequence spike = make_spike(10, 8);
    FunctionSequence small = restrict_to_atom_prefix(spike, 16);
    CHECK(small.space()->atom_count() == 16);
    CHECK(small.size() == spike.size());
    // term m=6 (index 5) is fully supported on the kept prefix
    CHECK(lp_norm(small.term(5), 1.0) == 1.0);
}
