#include "cesaro/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cesaro {

double ui_modulus(const FunctionSequence& seq, double delta) {
    if (!(delta > 0.0)) throw ValidationError("ui_modulus requires delta > 0");
    const auto& space = *seq.space();
    const std::size_t atoms = space.atom_count();
    std::vector<std::size_t> order(atoms);
    double worst = 0.0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const Density& u = seq.term(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = std::fabs(u[a]);
            const double vb = std::fabs(u[b]);
            if (va != vb) return va > vb;
            return a < b;
        });
        CompensatedSum gain;
        double budget = delta;
        for (std::size_t i : order) {
            const double v = std::fabs(u[i]);
            if (v == 0.0 || budget <= 0.0) break;
            const double w = space.weight(i);
            const double take = std::min(w, budget);
            gain.add(take * v);
            budget -= take;
        }
        worst = std::max(worst, gain.value());
    }
    return worst;
}

double tail_outside_prefix(const FunctionSequence& seq, std::size_t k) {
    const auto& space = *seq.space();
    if (k > space.atom_count()) throw ValidationError("tightness_tail: k out of range");
    std::vector<bool> inside(space.atom_count(), false);
    for (std::size_t r = 0; r < k; ++r) inside[space.exhaustion_rank()[r]] = true;
    double worst = 0.0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const Density& u = seq.term(n);
        CompensatedSum s;
        for (std::size_t i = 0; i < space.atom_count(); ++i)
            if (!inside[i]) s.add(space.weight(i) * std::fabs(u[i]));
        worst = std::max(worst, s.value());
    }
    return worst;
}

double tightness_tail(const FunctionSequence& seq, std::size_t k) {
    if (k == 0) throw ValidationError("tightness_tail: k out of range");
    return tail_outside_prefix(seq, k);
}

std::size_t tail_window_start(std::size_t horizon) {
    const std::size_t quarter = (horizon + 3) / 4;
    return horizon - quarter;
}

WeakNullResult weak_null_test(const FunctionSequence& seq,
                              std::span<const LabeledAtomSet> sets, double tol) {
    if (sets.empty()) throw ValidationError("weak_null_test requires a nonempty set family");
    if (!(tol > 0.0)) throw ValidationError("weak_null_test requires tol > 0");
    const Density& limit = seq.declared_weak_limit();
    const std::size_t start = tail_window_start(seq.size());
    WeakNullResult result;
    result.deviations.reserve(sets.size());
    result.passed = true;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const AtomSet& A = sets[s].set;
        const double limit_integral = integrate_over_set(limit, A);
        double dev = 0.0;
        for (std::size_t n = start; n < seq.size(); ++n)
            dev = std::max(dev, std::fabs(integrate_over_set(seq.term(n), A) - limit_integral));
        result.deviations.push_back({sets[s].label, dev});
        if (dev > result.worst_deviation) {
            result.worst_deviation = dev;
            result.worst_set = s;
        }
        if (dev > tol) result.passed = false;
    }
    return result;
}

std::string to_string(DPVerdict v) {
    switch (v) {
        case DPVerdict::weakly_compatible: return "weakly-compatible";
        case DPVerdict::ui_failure: return "UI-failure";
        case DPVerdict::tightness_failure: return "tightness-failure";
        case DPVerdict::set_test_failure: return "set-test-failure";
    }
    return "unknown";
}

DPReport dunford_pettis_report(const FunctionSequence& seq,
                               std::span<const double> delta_grid,
                               std::span<const std::size_t> k_grid,
                               std::span<const LabeledAtomSet> sets, double tol) {
    if (delta_grid.empty() || k_grid.empty())
        throw ValidationError("dunford_pettis_report requires nonempty grids");
    if (!(tol > 0.0)) throw ValidationError("dunford_pettis_report requires tol > 0");

    DPReport report;
    report.advisory =
        "finite-horizon evidence only: the verdict certifies consistency of the "
        "sampled data with the Dunford-Pettis conditions, not weak compactness";

    double norm_bound = 0.0;
    for (std::size_t n = 0; n < seq.size(); ++n)
        norm_bound = std::max(norm_bound, lp_norm(seq.term(n), 1.0));
    report.norm_bound = norm_bound;

    std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
    std::sort(deltas.begin(), deltas.end());
    for (double d : deltas) report.ui_samples.emplace_back(d, ui_modulus(seq, d));

    std::vector<std::size_t> ks(k_grid.begin(), k_grid.end());
    std::sort(ks.begin(), ks.end());
    for (std::size_t k : ks) report.tight_samples.emplace_back(k, tightness_tail(seq, k));

    WeakNullResult set_result = weak_null_test(seq, sets, tol);
    report.set_test = set_result.deviations;

    double min_omega = report.ui_samples.front().second;
    for (const auto& [d, omega] : report.ui_samples) min_omega = std::min(min_omega, omega);
    const double last_tau = report.tight_samples.back().second;

    if (min_omega > tol)
        report.verdict = DPVerdict::ui_failure;
    else if (last_tau > tol)
        report.verdict = DPVerdict::tightness_failure;
    else if (!set_result.passed)
        report.verdict = DPVerdict::set_test_failure;
    else
        report.verdict = DPVerdict::weakly_compatible;
    return report;
}

DiagnosticsGrids default_grids(const FunctionSequence& seq) {
    DiagnosticsGrids grids;
    const double total = seq.space()->total_mass();
    for (int t = 1; t <= 10; ++t) grids.delta_grid.push_back(std::ldexp(total, -t));
    const std::size_t atoms = seq.space()->atom_count();
    for (std::size_t q = 1; q <= 4; ++q) {
        std::size_t k = std::max<std::size_t>(1, atoms * q / 4);
        if (grids.k_grid.empty() || grids.k_grid.back() != k) grids.k_grid.push_back(k);
    }
    if (grids.k_grid.back() != atoms) grids.k_grid.push_back(atoms);
    grids.sets = exhaustion_prefix_family(seq.space(), grids.k_grid);
    grids.tol = 0.05;
    return grids;
}

std::vector<LabeledAtomSet> dyadic_interval_family(const SpacePtr& space,
                                                   unsigned max_level) {
    const std::size_t atoms = space->atom_count();
    unsigned K = 0;
    while ((std::size_t{1} << K) < atoms) ++K;
    if ((std::size_t{1} << K) != atoms)
        throw ValidationError("dyadic interval family needs a 2^K grid");
    if (max_level > K)
        throw ValidationError("dyadic interval level finer than the grid");
    std::vector<LabeledAtomSet> sets;
    for (unsigned level = 0; level <= max_level; ++level) {
        const std::size_t run = atoms >> level;
        for (std::size_t a = 0; a < (std::size_t{1} << level); ++a) {
            std::vector<std::size_t> members(run);
            std::iota(members.begin(), members.end(), a * run);
            sets.push_back({"dyadic[" + std::to_string(a) + "/" + std::to_string(std::size_t{1} << level) +
                                ",+2^-" + std::to_string(level) + ")",
                            AtomSet(space, std::move(members))});
        }
    }
    return sets;
}

std::vector<LabeledAtomSet> exhaustion_prefix_family(const SpacePtr& space,
                                                     std::span<const std::size_t> ks) {
    std::vector<LabeledAtomSet> sets;
    sets.reserve(ks.size());
    for (std::size_t k : ks)
        sets.push_back({"E_" + std::to_string(k), AtomSet::exhaustion_prefix(space, k)});
    return sets;
}

} // namespace cesaro
