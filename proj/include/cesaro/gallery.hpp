#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cesaro/measure.hpp"

namespace cesaro {

/// An indexed finite family of densities over one space, together with its
/// declared weak limit and the norm bound r valid at the declared exponent p.
/// Construction re-checks that every term obeys the bound.
class FunctionSequence {
public:
    FunctionSequence(std::vector<Density> terms, Density declared_weak_limit,
                     double norm_bound, double p, std::string label,
                     std::string expected_verdict = "");

    std::size_t size() const noexcept { return terms_.size(); }
    const Density& term(std::size_t n) const { return terms_.at(n); }
    const std::vector<Density>& terms() const noexcept { return terms_; }
    const Density& declared_weak_limit() const noexcept { return limit_; }
    double norm_bound() const noexcept { return norm_bound_; }
    double p() const noexcept { return p_; }
    const std::string& label() const noexcept { return label_; }
    /// Expected Dunford-Pettis verdict for gallery families ("" if unknown).
    const std::string& expected_verdict() const noexcept { return expected_verdict_; }
    const SpacePtr& space() const noexcept { return space_; }

private:
    SpacePtr space_;
    std::vector<Density> terms_;
    Density limit_;
    double norm_bound_;
    double p_;
    std::string label_;
    std::string expected_verdict_;
};

/// Dyadic grid of 2^K equal atoms on [0,1].
SpacePtr dyadic_grid(unsigned K);

/// Rademacher family r_n(x) = sign(sin(2^n pi x)), n = 1..N, sampled at atom
/// centers of the 2^K dyadic grid. Sampling is exact (all values +-1), which
/// is why K bounds N. Terms are pairwise orthogonal with unit L^p norm;
/// declared weak limit 0 and r = 1. With `shifted` the family is 1 + r_n
/// (weak limit 1), exercising nonzero-limit paths.
FunctionSequence make_rademacher(unsigned K, std::size_t N, double p = 1.0,
                                 bool shifted = false);

/// Spike family u_m = 2^m 1_{(0, 2^-m]}, m = 1..N on the 2^K dyadic grid.
/// Every term has unit L^1 norm but mass concentrates: bounded, not
/// uniformly integrable, no weak limit (the declared limit 0 is the
/// pointwise limit off the origin; the set test rejects it).
FunctionSequence make_spike(unsigned K, std::size_t N);

/// Moving bump family u_n = 1_{[n, n+1)}, n = 0..N-1, on L unit cells each
/// split into two atoms, exhausted left to right. Unit mass escapes every
/// fixed exhaustion prefix: bounded, uniformly integrable, not tight.
FunctionSequence make_moving_bump(std::size_t L, std::size_t N);

/// Standard basis e_1..e_d of R^d with the counting measure (all weights 1).
FunctionSequence make_orthonormal_counting(std::size_t d, double p = 2.0);

/// Constant sequence u_n = c for n = 1..N (fails every selection past the
/// first step when the declared limit is not c).
FunctionSequence make_constant(const Density& c, std::size_t N, double p);

/// A flat numeric table: one row per atom. Columns are `weight`, optional
/// `rank` (exhaustion order), optional `limit`, then `u0..u{N-1}`.
struct SequenceTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Builds a space plus sequence from a table, validating all invariants.
/// The declared limit defaults to 0 when the column is absent. Distinct
/// violations (non-positive weight, ragged row, non-finite entry, bad rank)
/// are reported with distinct messages naming the offending row.
FunctionSequence load_sequence(const SequenceTable& table, double p = 1.0);

/// Emits the table form (the inverse of load_sequence).
SequenceTable to_table(const FunctionSequence& seq);

/// The subsequence at the given strictly increasing term indices, on the
/// same space with the same limit and bounds.
FunctionSequence subsequence(const FunctionSequence& seq,
                             std::span<const std::size_t> indices);

/// Restriction of the whole family to the first `atoms` atoms (by atom
/// index). Used to compare against the exhaustive oracles at small scale.
FunctionSequence restrict_to_atom_prefix(const FunctionSequence& seq,
                                         std::size_t atoms);

} // namespace cesaro
