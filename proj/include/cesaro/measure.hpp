#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cesaro/errors.hpp"

namespace cesaro {

/// Compensated (Neumaier) accumulator. Every norm, pairing and set integral
/// in the library sums in ascending atom index through one of these, so
/// results are reproducible across runs.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class DiscreteMeasureSpace;
using SpacePtr = std::shared_ptr<const DiscreteMeasureSpace>;

/// A finite atomic measure space: atoms with strictly positive weights plus
/// an exhaustion order, the nested prefixes E_1 c E_2 c ... used to quantify
/// tightness. An "infinite measure" regime is modeled by large total mass
/// together with the exhaustion order.
class DiscreteMeasureSpace {
public:
    /// `exhaustion_rank[k]` is the atom index occupying rank k; empty means
    /// the identity (atom order). Must be a permutation of the atom indices.
    explicit DiscreteMeasureSpace(std::vector<double> weights,
                                  std::vector<std::size_t> exhaustion_rank = {});

    static SpacePtr create(std::vector<double> weights,
                           std::vector<std::size_t> exhaustion_rank = {});

    std::size_t atom_count() const noexcept { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double total_mass() const noexcept { return total_mass_; }

    /// rank -> atom index.
    const std::vector<std::size_t>& exhaustion_rank() const noexcept { return exhaustion_; }

    bool operator==(const DiscreteMeasureSpace& other) const noexcept;

private:
    std::vector<double> weights_;
    std::vector<std::size_t> exhaustion_;
    double total_mass_ = 0.0;
};

/// Same space: pointer identity or structural equality (weights and
/// exhaustion order coincide). Structural equality makes load round-trips
/// interoperable with in-memory construction.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// A measurable set, kept as a sorted list of member atom indices.
class AtomSet {
public:
    AtomSet() = default;
    AtomSet(SpacePtr space, std::vector<std::size_t> members);

    static AtomSet empty(SpacePtr space);
    static AtomSet full(SpacePtr space);
    /// First k atoms in exhaustion order (k = 0 gives the empty set).
    static AtomSet exhaustion_prefix(SpacePtr space, std::size_t k);

    const std::vector<std::size_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(std::size_t atom) const;
    double measure() const;
    const SpacePtr& space() const noexcept { return space_; }

private:
    SpacePtr space_;
    std::vector<std::size_t> members_;
};

/// One real value per atom; stands in for an element of L^p(X).
class Density {
public:
    Density(SpacePtr space, std::vector<double> values);
    static Density zero(SpacePtr space);
    static Density constant(SpacePtr space, double c);

    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const SpacePtr& space() const noexcept { return space_; }

    Density& operator+=(const Density& other);
    Density& operator-=(const Density& other);
    Density& operator*=(double scalar);

private:
    SpacePtr space_;
    std::vector<double> values_;
};

Density operator+(Density a, const Density& b);
Density operator-(Density a, const Density& b);
Density operator*(double scalar, Density a);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// L^p norm (sum_i w_i |u_i|^p)^(1/p); max_i |u_i| for p = infinity.
/// Requires p >= 1.
double lp_norm(const Density& u, double p);

/// Dual pairing sum_i w_i u_i g_i. For p = 2 this is the Hilbert inner
/// product. Requires matching spaces.
double dual_pairing(const Density& u, const Density& g);

/// Integral of u over the atom set A.
double integrate_over_set(const Density& u, const AtomSet& A);

/// L^p norm restricted to a set, (sum_{i in A} w_i |u_i|^p)^(1/p).
double lp_norm_on_set(const Density& u, double p, const AtomSet& A);

/// Cesaro mean (1/j) sum_{k<j} terms[indices[k]] of the first j selected
/// terms. Requires 1 <= j <= indices.size().
Density cesaro_mean(std::span<const Density> terms,
                    std::span<const std::size_t> indices, std::size_t j);

} // namespace cesaro
