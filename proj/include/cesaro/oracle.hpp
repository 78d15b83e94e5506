#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cesaro/gallery.hpp"
#include "cesaro/selectors.hpp"

namespace cesaro {

/// Hard enumeration limits. Oracles are exact or loud, never approximate:
/// anything past the caps throws BudgetExceeded.
struct OracleBudget {
    std::size_t max_atoms = 20;      // knapsack enumeration
    std::size_t max_horizon = 16;    // selection prefix length M
    std::size_t max_j = 8;           // subset size
    std::uint64_t max_evaluations = std::uint64_t{1} << 20;
};

struct SupThetaResult {
    double value = 0.0;                 // max Cesaro norm over all theta
    std::vector<std::size_t> witness;   // maximizing theta, as original term indices
    std::uint64_t enumerated = 0;
};

/// Exact supremum over every j-element strictly increasing map theta into
/// the first M = min(selection length, budget.max_horizon) selected terms of
/// || (1/j) sum_k (u_{n_theta(k)} - u) ||_p. Ground truth for the uniform
/// Cesaro certificates.
SupThetaResult brute_force_sup_theta(const FunctionSequence& seq,
                                     const SubsequenceSelection& selection, std::size_t j,
                                     double p, const OracleBudget& budget = {});

/// Exact 0/1 supremum of the integral of |u_n| over atom subsets E with
/// measure(E) <= delta, over all n. Uses an exact dynamic program over the
/// measure budget when the weights share a common grid unit, exhaustive
/// subset enumeration otherwise.
double exact_ui_modulus(const FunctionSequence& seq, double delta,
                        const OracleBudget& budget = {});

struct ExhaustiveWeakResult {
    bool passed = false;
    std::uint64_t worst_mask = 0;
    double worst_deviation = 0.0;
    /// Tail deviation per indicator set, indexed by atom bitmask.
    std::vector<double> deviations;
};

/// Runs the indicator-set test against all 2^atom_count subsets: the
/// finite-space ground truth for the set-convergence criterion. Integrals
/// are recomputed with plain summation, independent of the measure module's
/// accumulation path. Requires atom_count <= 12.
ExhaustiveWeakResult exhaustive_weak_test(const FunctionSequence& seq, double tol,
                                          const OracleBudget& budget = {});

/// C(n, k) with saturation, used for budget checks.
std::uint64_t binomial_count(std::size_t n, std::size_t k);

} // namespace cesaro
