#include "cesaro/measure.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<double> weights,
                                           std::vector<std::size_t> exhaustion_rank)
    : weights_(std::move(weights)), exhaustion_(std::move(exhaustion_rank)) {
    if (weights_.empty())
        throw ValidationError("measure space needs at least one atom");
    CompensatedSum mass;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw ValidationError("atom weights must be strictly positive and finite");
        mass.add(w);
    }
    total_mass_ = mass.value();
    if (!std::isfinite(total_mass_))
        throw ValidationError("total mass must be finite");
    if (exhaustion_.empty()) {
        exhaustion_.resize(weights_.size());
        for (std::size_t i = 0; i < exhaustion_.size(); ++i) exhaustion_[i] = i;
    } else {
        if (exhaustion_.size() != weights_.size())
            throw ValidationError("exhaustion rank must list every atom exactly once");
        std::vector<bool> seen(weights_.size(), false);
        for (std::size_t atom : exhaustion_) {
            if (atom >= weights_.size() || seen[atom])
                throw ValidationError("exhaustion rank is not a permutation of the atoms");
            seen[atom] = true;
        }
    }
}

SpacePtr DiscreteMeasureSpace::create(std::vector<double> weights,
                                      std::vector<std::size_t> exhaustion_rank) {
    return std::make_shared<const DiscreteMeasureSpace>(std::move(weights),
                                                        std::move(exhaustion_rank));
}

bool DiscreteMeasureSpace::operator==(const DiscreteMeasureSpace& other) const noexcept {
    return weights_ == other.weights_ && exhaustion_ == other.exhaustion_;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return a != nullptr;
    if (!a || !b) return false;
    return *a == *b;
}

AtomSet::AtomSet(SpacePtr space, std::vector<std::size_t> members)
    : space_(std::move(space)), members_(std::move(members)) {
    if (!space_) throw ValidationError("atom set needs a space");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= space_->atom_count())
        throw ValidationError("atom set member out of range");
}

AtomSet AtomSet::empty(SpacePtr space) { return AtomSet(std::move(space), {}); }

AtomSet AtomSet::full(SpacePtr space) {
    std::vector<std::size_t> all(space->atom_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return AtomSet(std::move(space), std::move(all));
}

AtomSet AtomSet::exhaustion_prefix(SpacePtr space, std::size_t k) {
    if (k > space->atom_count())
        throw ValidationError("exhaustion prefix exceeds atom count");
    const auto& rank = space->exhaustion_rank();
    std::vector<std::size_t> members(rank.begin(), rank.begin() + static_cast<std::ptrdiff_t>(k));
    return AtomSet(std::move(space), std::move(members));
}

bool AtomSet::contains(std::size_t atom) const {
    return std::binary_search(members_.begin(), members_.end(), atom);
}

double AtomSet::measure() const {
    CompensatedSum s;
    for (std::size_t i : members_) s.add(space_->weight(i));
    return s.value();
}

Density::Density(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw ValidationError("density needs a space");
    if (values_.size() != space_->atom_count())
        throw ValidationError("density length must equal atom count");
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("density values must be finite");
}

Density Density::zero(SpacePtr space) {
    std::vector<double> v(space->atom_count(), 0.0);
    return Density(std::move(space), std::move(v));
}

Density Density::constant(SpacePtr space, double c) {
    std::vector<double> v(space->atom_count(), c);
    return Density(std::move(space), std::move(v));
}

namespace {
void require_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (!same_space(a, b)) throw ValidationError("operands live on different spaces");
}
} // namespace

Density& Density::operator+=(const Density& other) {
    require_same_space(space_, other.space_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Density& Density::operator-=(const Density& other) {
    require_same_space(space_, other.space_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Density& Density::operator*=(double scalar) {
    for (double& v : values_) v *= scalar;
    return *this;
}

Density operator+(Density a, const Density& b) { return a += b; }
Density operator-(Density a, const Density& b) { return a -= b; }
Density operator*(double scalar, Density a) { return a *= scalar; }

double lp_norm(const Density& u, double p) {
    if (std::isnan(p) || p < 1.0)
        throw ValidationError("lp_norm requires p >= 1 or p = infinity");
    const auto& space = *u.space();
    if (p == kInfinity) {
        double m = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::fabs(u[i]));
        return m;
    }
    CompensatedSum s;
    if (p == 1.0) {
        for (std::size_t i = 0; i < u.size(); ++i) s.add(space.weight(i) * std::fabs(u[i]));
        return s.value();
    }
    if (p == 2.0) {
        for (std::size_t i = 0; i < u.size(); ++i) s.add(space.weight(i) * u[i] * u[i]);
        return std::sqrt(s.value());
    }
    for (std::size_t i = 0; i < u.size(); ++i)
        s.add(space.weight(i) * std::pow(std::fabs(u[i]), p));
    return std::pow(s.value(), 1.0 / p);
}

double dual_pairing(const Density& u, const Density& g) {
    require_same_space(u.space(), g.space());
    const auto& space = *u.space();
    CompensatedSum s;
    for (std::size_t i = 0; i < u.size(); ++i) s.add(space.weight(i) * u[i] * g[i]);
    return s.value();
}

double integrate_over_set(const Density& u, const AtomSet& A) {
    require_same_space(u.space(), A.space());
    const auto& space = *u.space();
    CompensatedSum s;
    for (std::size_t i : A.members()) s.add(space.weight(i) * u[i]);
    return s.value();
}

double lp_norm_on_set(const Density& u, double p, const AtomSet& A) {
    require_same_space(u.space(), A.space());
    if (std::isnan(p) || p < 1.0)
        throw ValidationError("lp_norm_on_set requires p >= 1 or p = infinity");
    const auto& space = *u.space();
    if (p == kInfinity) {
        double m = 0.0;
        for (std::size_t i : A.members()) m = std::max(m, std::fabs(u[i]));
        return m;
    }
    CompensatedSum s;
    for (std::size_t i : A.members())
        s.add(space.weight(i) * (p == 1.0   ? std::fabs(u[i])
                                 : p == 2.0 ? u[i] * u[i]
                                            : std::pow(std::fabs(u[i]), p)));
    double total = s.value();
    return p == 1.0 ? total : (p == 2.0 ? std::sqrt(total) : std::pow(total, 1.0 / p));
}

Density cesaro_mean(std::span<const Density> terms,
                    std::span<const std::size_t> indices, std::size_t j) {
    if (j == 0 || j > indices.size())
        throw ValidationError("cesaro_mean: j out of range");
    const SpacePtr& space = terms[indices[0]].space();
    std::vector<double> acc(space->atom_count(), 0.0);
    for (std::size_t k = 0; k < j; ++k) {
        const Density& t = terms[indices[k]];
        require_same_space(space, t.space());
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
    }
    const double inv = 1.0 / static_cast<double>(j);
    for (double& v : acc) v *= inv;
    return Density(space, std::move(acc));
}

} // namespace cesaro
