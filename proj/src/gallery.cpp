#include "cesaro/gallery.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

FunctionSequence::FunctionSequence(std::vector<Density> terms, Density declared_weak_limit,
                                   double norm_bound, double p, std::string label,
                                   std::string expected_verdict)
    : space_(declared_weak_limit.space()),
      terms_(std::move(terms)),
      limit_(std::move(declared_weak_limit)),
      norm_bound_(norm_bound),
      p_(p),
      label_(std::move(label)),
      expected_verdict_(std::move(expected_verdict)) {
    if (terms_.empty()) throw ValidationError("sequence needs at least one term");
    if (!(norm_bound_ >= 0.0) || !std::isfinite(norm_bound_))
        throw ValidationError("norm bound must be a nonnegative finite real");
    if (std::isnan(p_) || p_ < 1.0 || p_ == kInfinity)
        throw ValidationError("sequence exponent must satisfy 1 <= p < infinity");
    const double slack = 1e-12 * std::max(1.0, norm_bound_);
    for (const Density& t : terms_) {
        if (!same_space(t.space(), space_))
            throw ValidationError("all terms must share the limit's space");
        if (lp_norm(t, p_) > norm_bound_ + slack)
            throw ValidationError("term exceeds the declared norm bound at p");
    }
}

SpacePtr dyadic_grid(unsigned K) {
    if (K > 26) throw ValidationError("dyadic grid too fine (K > 26)");
    const std::size_t n = std::size_t{1} << K;
    std::vector<double> weights(n, std::ldexp(1.0, -static_cast<int>(K)));
    return DiscreteMeasureSpace::create(std::move(weights));
}

FunctionSequence make_rademacher(unsigned K, std::size_t N, double p, bool shifted) {
    if (N == 0) throw ValidationError("rademacher: need at least one term");
    if (N > K)
        throw ValidationError("rademacher: N > K, the grid cannot resolve the oscillation exactly");
    SpacePtr space = dyadic_grid(K);
    const std::size_t atoms = space->atom_count();
    std::vector<Density> terms;
    terms.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        // sign(sin(2^n pi x)) at center x = (2i+1) 2^-(K+1) is determined by
        // the parity of floor((2i+1) 2^(n-K-1)); exact in integer arithmetic.
        const unsigned shift = K + 1 - static_cast<unsigned>(n);
        std::vector<double> v(atoms);
        for (std::size_t i = 0; i < atoms; ++i) {
            const std::size_t parity = ((2 * i + 1) >> shift) & 1u;
            v[i] = (parity ? -1.0 : 1.0) + (shifted ? 1.0 : 0.0);
        }
        terms.emplace_back(space, std::move(v));
    }
    Density limit = shifted ? Density::constant(space, 1.0) : Density::zero(space);
    const double r = shifted ? std::pow(2.0, 1.0 - 1.0 / p) : 1.0;
    std::string label = (shifted ? "rademacher-shifted K=" : "rademacher K=") +
                        std::to_string(K) + " N=" + std::to_string(N);
    return FunctionSequence(std::move(terms), std::move(limit), r, p, std::move(label),
                            "weakly-compatible");
}

FunctionSequence make_spike(unsigned K, std::size_t N) {
    if (N == 0) throw ValidationError("spike: need at least one term");
    if (N > K) throw ValidationError("spike: N > K, resolution exceeded");
    SpacePtr space = dyadic_grid(K);
    const std::size_t atoms = space->atom_count();
    std::vector<Density> terms;
    terms.reserve(N);
    for (std::size_t m = 1; m <= N; ++m) {
        const std::size_t support = std::size_t{1} << (K - m);
        std::vector<double> v(atoms, 0.0);
        const double height = std::ldexp(1.0, static_cast<int>(m));
        for (std::size_t i = 0; i < support; ++i) v[i] = height;
        terms.emplace_back(space, std::move(v));
    }
    std::string label = "spike K=" + std::to_string(K) + " N=" + std::to_string(N) +
                        " (not uniformly integrable, no weak limit)";
    return FunctionSequence(std::move(terms), Density::zero(space), 1.0, 1.0,
                            std::move(label), "UI-failure");
}

FunctionSequence make_moving_bump(std::size_t L, std::size_t N) {
    if (N == 0) throw ValidationError("moving bump: need at least one term");
    if (N > L) throw ValidationError("moving bump: N > L, not enough cells");
    std::vector<double> weights(2 * L, 0.5);
    SpacePtr space = DiscreteMeasureSpace::create(std::move(weights));
    std::vector<Density> terms;
    terms.reserve(N);
    for (std::size_t n = 0; n < N; ++n) {
        std::vector<double> v(2 * L, 0.0);
        v[2 * n] = 1.0;
        v[2 * n + 1] = 1.0;
        terms.emplace_back(space, std::move(v));
    }
    std::string label = "moving-bump L=" + std::to_string(L) + " N=" + std::to_string(N);
    return FunctionSequence(std::move(terms), Density::zero(space), 1.0, 1.0,
                            std::move(label), "tightness-failure");
}

FunctionSequence make_orthonormal_counting(std::size_t d, double p) {
    if (d == 0) throw ValidationError("orthonormal: need at least one atom");
    std::vector<double> weights(d, 1.0);
    SpacePtr space = DiscreteMeasureSpace::create(std::move(weights));
    std::vector<Density> terms;
    terms.reserve(d);
    for (std::size_t n = 0; n < d; ++n) {
        std::vector<double> v(d, 0.0);
        v[n] = 1.0;
        terms.emplace_back(space, std::move(v));
    }
    std::string label = "orthonormal-counting d=" + std::to_string(d);
    return FunctionSequence(std::move(terms), Density::zero(space), 1.0, p,
                            std::move(label), "weakly-compatible");
}

FunctionSequence make_constant(const Density& c, std::size_t N, double p) {
    if (N == 0) throw ValidationError("constant: need at least one term");
    std::vector<Density> terms(N, c);
    const double r = lp_norm(c, p);
    return FunctionSequence(std::move(terms), Density::zero(c.space()), r, p,
                            "constant N=" + std::to_string(N));
}

namespace {

std::size_t find_column(const SequenceTable& table, const std::string& name) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        if (table.columns[c] == name) return c;
    return table.columns.size();
}

} // namespace

FunctionSequence load_sequence(const SequenceTable& table, double p) {
    const std::size_t ncols = table.columns.size();
    const std::size_t weight_col = find_column(table, "weight");
    if (weight_col == ncols)
        throw ValidationError("sequence table is missing the 'weight' column");
    const std::size_t rank_col = find_column(table, "rank");
    const std::size_t limit_col = find_column(table, "limit");

    std::vector<std::size_t> term_cols;
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::string& name = table.columns[c];
        if (name.size() >= 2 && name[0] == 'u') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                digits = digits && (name[i] >= '0' && name[i] <= '9');
            if (digits) term_cols.push_back(c);
        }
    }
    if (term_cols.empty())
        throw ValidationError("sequence table has no term columns u0..u{N-1}");
    if (table.rows.empty()) throw ValidationError("sequence table has no atom rows");

    const std::size_t atoms = table.rows.size();
    std::vector<double> weights(atoms);
    std::vector<std::size_t> atom_rank(atoms, 0);
    std::vector<double> limit_values(atoms, 0.0);
    std::vector<std::vector<double>> term_values(term_cols.size(),
                                                 std::vector<double>(atoms));
    for (std::size_t r = 0; r < atoms; ++r) {
        const auto& row = table.rows[r];
        if (row.size() != ncols)
            throw ValidationError("ragged row " + std::to_string(r) + ": expected " +
                                  std::to_string(ncols) + " cells, got " +
                                  std::to_string(row.size()));
        for (double cell : row)
            if (!std::isfinite(cell))
                throw ValidationError("non-finite entry in row " + std::to_string(r));
        if (!(row[weight_col] > 0.0))
            throw ValidationError("non-positive weight in row " + std::to_string(r));
        weights[r] = row[weight_col];
        if (rank_col < ncols) {
            double rk = row[rank_col];
            if (rk < 0.0 || rk != std::floor(rk) ||
                rk >= static_cast<double>(atoms))
                throw ValidationError("rank out of range in row " + std::to_string(r));
            atom_rank[r] = static_cast<std::size_t>(rk);
        } else {
            atom_rank[r] = r;
        }
        if (limit_col < ncols) limit_values[r] = row[limit_col];
        for (std::size_t t = 0; t < term_cols.size(); ++t)
            term_values[t][r] = row[term_cols[t]];
    }

    // rank column stores atom -> rank; the space wants rank -> atom.
    std::vector<std::size_t> rank_to_atom(atoms, atoms);
    for (std::size_t atom = 0; atom < atoms; ++atom) {
        if (rank_to_atom[atom_rank[atom]] != atoms)
            throw ValidationError("rank column is not a permutation");
        rank_to_atom[atom_rank[atom]] = atom;
    }

    SpacePtr space = DiscreteMeasureSpace::create(std::move(weights), std::move(rank_to_atom));
    std::vector<Density> terms;
    terms.reserve(term_cols.size());
    double r = 0.0;
    for (auto& v : term_values) {
        terms.emplace_back(space, std::move(v));
        r = std::max(r, lp_norm(terms.back(), p));
    }
    Density limit(space, std::move(limit_values));
    return FunctionSequence(std::move(terms), std::move(limit), r, p, "loaded");
}

SequenceTable to_table(const FunctionSequence& seq) {
    SequenceTable table;
    const auto& space = *seq.space();
    const std::size_t atoms = space.atom_count();
    table.columns = {"weight", "rank", "limit"};
    for (std::size_t t = 0; t < seq.size(); ++t)
        table.columns.push_back("u" + std::to_string(t));
    std::vector<std::size_t> atom_rank(atoms);
    for (std::size_t rank = 0; rank < atoms; ++rank)
        atom_rank[space.exhaustion_rank()[rank]] = rank;
    table.rows.reserve(atoms);
    for (std::size_t i = 0; i < atoms; ++i) {
        std::vector<double> row;
        row.reserve(3 + seq.size());
        row.push_back(space.weight(i));
        row.push_back(static_cast<double>(atom_rank[i]));
        row.push_back(seq.declared_weak_limit()[i]);
        for (std::size_t t = 0; t < seq.size(); ++t) row.push_back(seq.term(t)[i]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

FunctionSequence subsequence(const FunctionSequence& seq,
                             std::span<const std::size_t> indices) {
    if (indices.empty()) throw ValidationError("subsequence needs at least one index");
    std::vector<Density> terms;
    terms.reserve(indices.size());
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t n : indices) {
        if (!first && n <= prev)
            throw ValidationError("subsequence indices must be strictly increasing");
        first = false;
        prev = n;
        terms.push_back(seq.term(n));
    }
    return FunctionSequence(std::move(terms), seq.declared_weak_limit(), seq.norm_bound(),
                            seq.p(), seq.label() + " (subsequence)", seq.expected_verdict());
}

FunctionSequence restrict_to_atom_prefix(const FunctionSequence& seq, std::size_t atoms) {
    const auto& space = *seq.space();
    if (atoms == 0 || atoms > space.atom_count())
        throw ValidationError("atom prefix out of range");
    std::vector<double> weights(space.weights().begin(),
                                space.weights().begin() + static_cast<std::ptrdiff_t>(atoms));
    std::vector<std::size_t> rank;
    rank.reserve(atoms);
    for (std::size_t atom : space.exhaustion_rank())
        if (atom < atoms) rank.push_back(atom);
    SpacePtr sub = DiscreteMeasureSpace::create(std::move(weights), std::move(rank));
    auto cut = [&](const Density& d) {
        std::vector<double> v(d.values().begin(),
                              d.values().begin() + static_cast<std::ptrdiff_t>(atoms));
        return Density(sub, std::move(v));
    };
    std::vector<Density> terms;
    terms.reserve(seq.size());
    for (std::size_t t = 0; t < seq.size(); ++t) terms.push_back(cut(seq.term(t)));
    return FunctionSequence(std::move(terms), cut(seq.declared_weak_limit()),
                            seq.norm_bound(), seq.p(),
                            seq.label() + " (restricted to " + std::to_string(atoms) + " atoms)",
                            "");
}

} // namespace cesaro
