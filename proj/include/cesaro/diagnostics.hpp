#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cesaro/gallery.hpp"
#include "cesaro/measure.hpp"

namespace cesaro {

struct LabeledAtomSet {
    std::string label;
    AtomSet set;
};

/// Upper bound on sup over n and over atom sets E with measure(E) <= delta
/// of the integral of |u_n| over E. Computed by the fractional relaxation:
/// atoms sorted by |u_n| descending fill the measure budget, the boundary
/// atom prorated. Always >= the exact combinatorial supremum, with equality
/// whenever the budget is consumed by whole atoms, so a reported UI failure
/// is never spurious.
double ui_modulus(const FunctionSequence& seq, double delta);

/// sup_n of the integral of |u_n| outside the exhaustion prefix E_k (the
/// first k atoms in exhaustion order). Nonincreasing in k; zero at
/// k = atom_count. Requires 1 <= k <= atom_count.
double tightness_tail(const FunctionSequence& seq, std::size_t k);

/// tightness_tail with k = 0 admitted (empty prefix; used by the selectors'
/// witness search, where X_0 may legitimately be empty).
double tail_outside_prefix(const FunctionSequence& seq, std::size_t k);

struct SetDeviation {
    std::string label;
    /// max over the last-quarter window of |integral over the set of u_n - u|.
    double tail_deviation = 0.0;
};

struct WeakNullResult {
    bool passed = false;
    std::vector<SetDeviation> deviations;
    std::size_t worst_set = 0;
    double worst_deviation = 0.0;
};

/// First index of the last-quarter window: the final ceil(N/4) terms are the
/// finite-horizon stand-in for the limit n -> infinity.
std::size_t tail_window_start(std::size_t horizon);

/// Indicator-set weak convergence test: for each set A the tail maximum of
/// |integral_A (u_n - u)| over the last quarter of the horizon must be
/// within tol.
WeakNullResult weak_null_test(const FunctionSequence& seq,
                              std::span<const LabeledAtomSet> sets, double tol);

enum class DPVerdict { weakly_compatible, ui_failure, tightness_failure, set_test_failure };

std::string to_string(DPVerdict v);

/// Dunford-Pettis style report. The verdict is advisory: it certifies that
/// the finite data is consistent with boundedness + uniform integrability +
/// tightness + set convergence, not the asymptotic statements themselves.
struct DPReport {
    double norm_bound = 0.0;                                  // sup_n ||u_n||_1
    std::vector<std::pair<double, double>> ui_samples;        // (delta, omega(delta))
    std::vector<std::pair<std::size_t, double>> tight_samples; // (k, tau(k))
    std::vector<SetDeviation> set_test;
    DPVerdict verdict = DPVerdict::weakly_compatible;
    std::string advisory;
};

/// Assembles the three diagnostics over the given grids. UI fails when the
/// smallest omega on the grid exceeds tol, tightness fails when tau at the
/// largest k exceeds tol, the set test fails when weak_null_test does;
/// checks run in that order and the first failure decides the verdict.
DPReport dunford_pettis_report(const FunctionSequence& seq,
                               std::span<const double> delta_grid,
                               std::span<const std::size_t> k_grid,
                               std::span<const LabeledAtomSet> sets, double tol);

/// Grid bundle used both by dunford_pettis_report callers and by the
/// selectors that need tightness / uniform-integrability witnesses.
struct DiagnosticsGrids {
    std::vector<double> delta_grid;
    std::vector<std::size_t> k_grid;
    std::vector<LabeledAtomSet> sets;
    double tol = 0.05;
};

/// Defaults: delta = total_mass * 2^-t for t = 1..10, k = quarters of the
/// atom count plus the full space (the finite reading; pass a truncated
/// k-grid to probe escape along the exhaustion), sets = the exhaustion
/// prefixes of the k-grid.
DiagnosticsGrids default_grids(const FunctionSequence& seq);

/// All dyadic subintervals of [0,1] of length >= 2^-max_level, as runs of
/// atoms. Requires a 2^K dyadic grid with max_level <= K.
std::vector<LabeledAtomSet> dyadic_interval_family(const SpacePtr& space,
                                                   unsigned max_level);

/// Exhaustion prefixes E_k for each k in ks.
std::vector<LabeledAtomSet> exhaustion_prefix_family(const SpacePtr& space,
                                                     std::span<const std::size_t> ks);

} // namespace cesaro
