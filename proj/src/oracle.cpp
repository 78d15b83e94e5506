#include "cesaro/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

std::uint64_t binomial_count(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t cap = ~std::uint64_t{0} / (n - k + i);
        if (result > cap) return ~std::uint64_t{0}; // saturate
        result = result * (n - k + i) / i;
    }
    return result;
}

SupThetaResult brute_force_sup_theta(const FunctionSequence& seq,
                                     const SubsequenceSelection& selection, std::size_t j,
                                     double p, const OracleBudget& budget) {
    if (selection.indices.empty())
        throw ValidationError("brute_force_sup_theta: empty selection");
    const std::size_t M = std::min(selection.indices.size(), budget.max_horizon);
    if (j == 0 || j > M)
        throw ValidationError("brute_force_sup_theta: j out of range for the prefix");
    if (j > budget.max_j)
        throw BudgetExceeded("brute_force_sup_theta: j exceeds the subset-size budget");
    const std::uint64_t count = binomial_count(M, j);
    if (count > budget.max_evaluations)
        throw BudgetExceeded("brute_force_sup_theta: C(M,j) exceeds the evaluation budget");

    const Density& limit = seq.declared_weak_limit();
    const std::size_t atoms = seq.space()->atom_count();

    // Centered terms of the selection prefix, materialized once.
    std::vector<std::vector<double>> x(M);
    for (std::size_t t = 0; t < M; ++t) {
        const Density& term = seq.term(selection.indices[t]);
        x[t].resize(atoms);
        for (std::size_t i = 0; i < atoms; ++i) x[t][i] = term[i] - limit[i];
    }

    std::vector<std::size_t> combo(j);
    for (std::size_t t = 0; t < j; ++t) combo[t] = t;
    std::vector<double> mean(atoms);

    SupThetaResult result;
    const double inv = 1.0 / static_cast<double>(j);
    while (true) {
        ++result.enumerated;
        std::fill(mean.begin(), mean.end(), 0.0);
        for (std::size_t t : combo)
            for (std::size_t i = 0; i < atoms; ++i) mean[i] += x[t][i];
        for (double& v : mean) v *= inv;
        const double norm = lp_norm(Density(seq.space(), mean), p);
        if (norm > result.value) {
            result.value = norm;
            result.witness.resize(j);
            for (std::size_t t = 0; t < j; ++t)
                result.witness[t] = selection.indices[combo[t]];
        }
        // next combination in lexicographic order
        std::size_t t = j;
        while (t > 0 && combo[t - 1] == M - j + t - 1) --t;
        if (t == 0) break;
        ++combo[t - 1];
        for (std::size_t s = t; s < j; ++s) combo[s] = combo[s - 1] + 1;
    }
    if (result.witness.empty()) {
        result.witness.assign(selection.indices.begin(),
                              selection.indices.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return result;
}

namespace {

/// Exact 0/1 knapsack by dynamic program when all weights are integer
/// multiples of the smallest one; returns false when they are not.
bool knapsack_on_grid(const std::vector<double>& weights, const std::vector<double>& values,
                      double delta, double& best) {
    double unit = weights[0];
    for (double w : weights) unit = std::min(unit, w);
    std::vector<std::uint64_t> units(weights.size());
    std::uint64_t total_units = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double q = weights[i] / unit;
        const double rounded = std::round(q);
        if (std::fabs(q - rounded) > 1e-9 * std::max(1.0, q)) return false;
        units[i] = static_cast<std::uint64_t>(rounded);
        total_units += units[i];
    }
    double cap_d = std::floor(delta / unit + 1e-12);
    std::uint64_t capacity =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(0.0, cap_d)), total_units);
    if (capacity > std::uint64_t{1} << 22) return false; // too large for the DP table
    std::vector<double> dp(static_cast<std::size_t>(capacity) + 1, 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (units[i] > capacity) continue;
        for (std::uint64_t c = capacity; c >= units[i]; --c) {
            const double candidate = dp[static_cast<std::size_t>(c - units[i])] + values[i];
            if (candidate > dp[static_cast<std::size_t>(c)])
                dp[static_cast<std::size_t>(c)] = candidate;
            if (c == units[i]) break;
        }
    }
    best = dp[static_cast<std::size_t>(capacity)];
    return true;
}

double knapsack_exhaustive(const std::vector<double>& weights,
                           const std::vector<double>& values, double delta) {
    const std::size_t n = weights.size();
    const std::uint64_t masks = std::uint64_t{1} << n;
    double best = 0.0;
    for (std::uint64_t mask = 1; mask < masks; ++mask) {
        double w = 0.0;
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                w += weights[i];
                v += values[i];
            }
        }
        if (w <= delta && v > best) best = v;
    }
    return best;
}

} // namespace

double exact_ui_modulus(const FunctionSequence& seq, double delta,
                        const OracleBudget& budget) {
    if (!(delta > 0.0)) throw ValidationError("exact_ui_modulus requires delta > 0");
    const auto& space = *seq.space();
    const std::size_t atoms = space.atom_count();
    if (atoms > budget.max_atoms)
        throw BudgetExceeded("exact_ui_modulus: atom count exceeds the knapsack budget");
    if ((std::uint64_t{1} << atoms) > budget.max_evaluations * 2)
        throw BudgetExceeded("exact_ui_modulus: 2^atoms exceeds the evaluation budget");

    std::vector<double> weights(atoms);
    for (std::size_t i = 0; i < atoms; ++i) weights[i] = space.weight(i);

    double best = 0.0;
    std::vector<double> values(atoms);
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const Density& u = seq.term(n);
        for (std::size_t i = 0; i < atoms; ++i) values[i] = weights[i] * std::fabs(u[i]);
        double value = 0.0;
        if (!knapsack_on_grid(weights, values, delta, value))
            value = knapsack_exhaustive(weights, values, delta);
        best = std::max(best, value);
    }
    return best;
}

ExhaustiveWeakResult exhaustive_weak_test(const FunctionSequence& seq, double tol,
                                          const OracleBudget& budget) {
    if (!(tol > 0.0)) throw ValidationError("exhaustive_weak_test requires tol > 0");
    const auto& space = *seq.space();
    const std::size_t atoms = space.atom_count();
    if (atoms > 12 || (std::uint64_t{1} << atoms) > budget.max_evaluations)
        throw BudgetExceeded("exhaustive_weak_test: needs atom_count <= 12 within budget");

    const std::size_t start = tail_window_start(seq.size());
    const Density& limit = seq.declared_weak_limit();
    const std::uint64_t masks = std::uint64_t{1} << atoms;

    ExhaustiveWeakResult result;
    result.passed = true;
    result.deviations.assign(static_cast<std::size_t>(masks), 0.0);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        double dev = 0.0;
        for (std::size_t n = start; n < seq.size(); ++n) {
            const Density& u = seq.term(n);
            double integral = 0.0; // plain ascending sum, independent of CompensatedSum
            for (std::size_t i = 0; i < atoms; ++i)
                if (mask & (std::uint64_t{1} << i))
                    integral += space.weight(i) * (u[i] - limit[i]);
            dev = std::max(dev, std::fabs(integral));
        }
        result.deviations[static_cast<std::size_t>(mask)] = dev;
        if (dev > result.worst_deviation) {
            result.worst_deviation = dev;
            result.worst_mask = mask;
        }
        if (dev > tol) result.passed = false;
    }
    return result;
}

} // namespace cesaro
