#include "cesaro/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace cesaro {

namespace {

constexpr double kReplayTol = 1e-12;

std::vector<Density> center_terms(const FunctionSequence& seq, const Density& center) {
    std::vector<Density> out;
    out.reserve(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) out.push_back(seq.term(n) - center);
    return out;
}

double max_norm(const std::vector<Density>& terms, double p) {
    double r = 0.0;
    for (const Density& t : terms) r = std::max(r, lp_norm(t, p));
    return r;
}

double signed_pow(double s, double e) {
    if (s == 0.0) return 0.0;
    if (e == 1.0) return s;
    const double m = std::pow(std::fabs(s), e);
    return s < 0.0 ? -m : m;
}

/// |S|^{p-2} S pointwise, with the continuous extension 0 at S = 0.
Density lp_dual_element(const Density& S, double p) {
    std::vector<double> v(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) v[i] = signed_pow(S[i], p - 1.0);
    return Density(S.space(), std::move(v));
}

double ipow(double x, long n) {
    double r = 1.0;
    for (long i = 0; i < n; ++i) r *= x;
    return r;
}

struct GreedyOutcome {
    std::vector<std::size_t> indices;
    std::vector<std::vector<double>> pair_log;
    std::optional<std::size_t> failed_step; // set when the requested length was not reached
};

/// Shared greedy loop over candidate indices in ascending order. `admits`
/// returns the recorded pairings when the candidate passes, nothing when it
/// violates the step's threshold.
template <typename Admits>
GreedyOutcome greedy_select(std::size_t total, std::size_t horizon, Admits&& admits) {
    GreedyOutcome out;
    out.indices.reserve(horizon);
    for (std::size_t j = 1; j <= horizon; ++j) {
        const std::size_t begin = out.indices.empty() ? 0 : out.indices.back() + 1;
        bool found = false;
        for (std::size_t cand = begin; cand < total && !found; ++cand) {
            auto log = admits(j, cand, out.indices);
            if (log.has_value()) {
                out.indices.push_back(cand);
                out.pair_log.push_back(std::move(*log));
                found = true;
            }
        }
        if (!found) {
            out.failed_step = j;
            break;
        }
    }
    return out;
}

void throw_if_short(const GreedyOutcome& out, const std::string& rule) {
    if (out.failed_step)
        throw SelectionExhausted(*out.failed_step,
                                 rule + ": no admissible index before the horizon at step j=" +
                                     std::to_string(*out.failed_step));
}

GreedyOutcome hilbert_core(const std::vector<Density>& x, std::size_t horizon,
                           bool best_effort) {
    GreedyOutcome out = greedy_select(
        x.size(), horizon,
        [&](std::size_t j, std::size_t cand,
            const std::vector<std::size_t>& chosen) -> std::optional<std::vector<double>> {
            const double threshold = 1.0 / static_cast<double>(j + 1);
            std::vector<double> log;
            log.reserve(chosen.size());
            for (std::size_t k : chosen) {
                const double pairing = dual_pairing(x[k], x[cand]);
                if (std::fabs(pairing) > threshold) return std::nullopt;
                log.push_back(pairing);
            }
            return log;
        });
    if (!best_effort) throw_if_short(out, "hilbert_greedy_select");
    return out;
}

CesaroTrace build_trace(const std::vector<Density>& centered,
                        const std::vector<std::size_t>& indices, double p,
                        const std::function<double(std::size_t)>& bound) {
    CesaroTrace trace;
    trace.p = p;
    if (indices.empty()) return trace;
    Density partial = Density::zero(centered[indices[0]].space());
    for (std::size_t j = 1; j <= indices.size(); ++j) {
        partial += centered[indices[j - 1]];
        Density mean = (1.0 / static_cast<double>(j)) * partial;
        trace.points.push_back(
            {j, lp_norm(mean, p), bound(j), lp_norm(partial, p)});
    }
    return trace;
}

void require_exponent(const FunctionSequence& seq, double p, const std::string& who) {
    if (seq.p() != p)
        throw ValidationError(who + " requires a sequence declared at p = " +
                              std::to_string(p) + " (got " + std::to_string(seq.p()) + ")");
}

void check_horizon(const FunctionSequence& seq, std::size_t horizon, const std::string& who) {
    if (horizon == 0 || horizon > seq.size())
        throw ValidationError(who + ": horizon must satisfy 1 <= horizon <= sequence length");
}

} // namespace

SelectionResult hilbert_greedy_select(const FunctionSequence& seq, const Density& center,
                                      std::size_t horizon) {
    require_exponent(seq, 2.0, "hilbert_greedy_select");
    check_horizon(seq, horizon, "hilbert_greedy_select");
    if (!same_space(center.space(), seq.space()))
        throw ValidationError("hilbert_greedy_select: center lives on a different space");
    const std::vector<Density> x = center_terms(seq, center);
    const double r = max_norm(x, 2.0);
    GreedyOutcome out = hilbert_core(x, horizon, false);
    const double cert = r * r + 2.0;
    CesaroTrace trace = build_trace(x, out.indices, 2.0, [cert](std::size_t j) {
        return std::sqrt(cert / static_cast<double>(j));
    });
    return {{std::move(out.indices), "hilbert-greedy", std::move(out.pair_log), 1}, std::move(trace), r};
}

TruncationSplit truncation_split(const FunctionSequence& seq, double epsilon,
                                 const DiagnosticsGrids& grids) {
    require_exponent(seq, 1.0, "truncation_split");
    if (!(epsilon > 0.0)) throw ValidationError("truncation_split requires epsilon > 0");

    const SpacePtr& space = seq.space();
    std::vector<Density> x = center_terms(seq, seq.declared_weak_limit());
    const double r1 = max_norm(x, 1.0);
    FunctionSequence centered(x, Density::zero(space), r1, 1.0, seq.label() + " (centered)");

    DPReport gate = dunford_pettis_report(centered, grids.delta_grid, grids.k_grid,
                                          grids.sets, grids.tol);
    if (gate.verdict != DPVerdict::weakly_compatible)
        throw DiagnosticsFailed("dunford-pettis precondition failed: " +
                                to_string(gate.verdict) + " on '" + seq.label() + "'");

    // Tightness witness: smallest prefix among {0} union k_grid.
    std::vector<std::size_t> ks(grids.k_grid.begin(), grids.k_grid.end());
    ks.push_back(0);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::optional<std::size_t> k_star;
    for (std::size_t k : ks) {
        if (tail_outside_prefix(centered, k) <= epsilon / 6.0) {
            k_star = k;
            break;
        }
    }
    if (!k_star)
        throw DiagnosticsFailed("no tightness witness: centered tail above eps/6 on the k-grid");

    // Uniform-integrability witness: largest grid delta with omega <= eps/6.
    std::vector<double> deltas(grids.delta_grid.begin(), grids.delta_grid.end());
    std::sort(deltas.begin(), deltas.end(), std::greater<double>());
    std::optional<double> delta;
    for (double d : deltas) {
        if (ui_modulus(centered, d) <= epsilon / 6.0) {
            delta = d;
            break;
        }
    }
    if (!delta)
        throw DiagnosticsFailed("no uniform-integrability witness: omega above eps/6 on the delta-grid");

    const double m0 = r1 / *delta; // Chebyshev: sup_n mu(A_{n,m0}) <= r1/m0 = delta
    AtomSet X0 = AtomSet::exhaustion_prefix(space, *k_star);
    std::vector<bool> in_X0(space->atom_count(), false);
    for (std::size_t i : X0.members()) in_X0[i] = true;

    std::vector<AtomSet> truncation_sets;
    std::vector<Density> truncated;
    std::vector<Density> remainder;
    truncation_sets.reserve(x.size());
    truncated.reserve(x.size());
    remainder.reserve(x.size());
    double sup_v = 0.0;
    double sup_rem_sq = 0.0;
    for (const Density& xn : x) {
        std::vector<std::size_t> A;
        std::vector<double> v(space->atom_count(), 0.0);
        std::vector<double> rem(space->atom_count(), 0.0);
        for (std::size_t i = 0; i < space->atom_count(); ++i) {
            const bool high = in_X0[i] && std::fabs(xn[i]) >= m0;
            if (high) A.push_back(i);
            if (!in_X0[i] || high)
                v[i] = xn[i];
            else
                rem[i] = xn[i];
        }
        truncation_sets.emplace_back(space, std::move(A));
        truncated.emplace_back(space, std::move(v));
        remainder.emplace_back(space, std::move(rem));
        sup_v = std::max(sup_v, lp_norm(truncated.back(), 1.0));
        const double l2 = lp_norm(remainder.back(), 2.0);
        sup_rem_sq = std::max(sup_rem_sq, l2 * l2);
    }

    const double mu_X0 = X0.measure();
    const double l2_bound = mu_X0 * m0 * m0;
    const double slack = 1e-12 * std::max(1.0, epsilon);
    if (sup_v > epsilon / 3.0 + slack)
        throw Error("truncation_split: internal bound violated, sup ||v_n||_1 > eps/3");
    if (sup_rem_sq > l2_bound + 1e-12 * std::max(1.0, l2_bound))
        throw Error("truncation_split: internal bound violated, remainder exceeds mu(X0) m0^2");

    // w estimate from the truncation parts over the tail window, restricted
    // to X_0 so the L^1 -> L^2 comparison on X_0 stays valid.
    const std::size_t start = tail_window_start(x.size());
    std::vector<double> w(space->atom_count(), 0.0);
    for (std::size_t n = start; n < x.size(); ++n)
        for (std::size_t i : X0.members()) w[i] += truncated[n][i];
    const double scale = -1.0 / static_cast<double>(x.size() - start);
    for (double& value : w) value *= scale;

    return TruncationSplit{std::move(X0),
                           *delta,
                           m0,
                           std::move(truncation_sets),
                           std::move(truncated),
                           std::move(remainder),
                           sup_v,
                           sup_rem_sq,
                           l2_bound,
                           Density(space, std::move(w)),
                           epsilon};
}

double SzlenkResult::certificate(std::size_t j) const {
    return std::sqrt(mu_X0 * (r2 * r2 + 2.0) / static_cast<double>(j)) + truncated_l1 +
           limit_l1;
}

namespace {

SzlenkResult szlenk_core(const FunctionSequence& seq, double epsilon, std::size_t horizon,
                         const DiagnosticsGrids& grids, bool best_effort) {
    check_horizon(seq, horizon, "szlenk_epsilon_select");
    TruncationSplit split = truncation_split(seq, epsilon, grids);

    const double rem_bound = max_norm(split.remainder, 2.0);
    FunctionSequence rem_seq(split.remainder, split.limit_estimate, rem_bound, 2.0,
                             seq.label() + " (remainders)");
    std::vector<Density> rem_centered = center_terms(rem_seq, split.limit_estimate);
    const double r2 = max_norm(rem_centered, 2.0);
    GreedyOutcome out = hilbert_core(rem_centered, horizon, best_effort);
    if (!best_effort) throw_if_short(out, "szlenk_epsilon_select");

    const double mu_X0 = split.base_set.measure();
    const double v_bar = split.truncated_l1_sup;
    const double w_bar = lp_norm(split.limit_estimate, 1.0);

    const double hilbert_cert = mu_X0 * (r2 * r2 + 2.0);
    std::size_t j0 = 1;
    if (hilbert_cert > 0.0) {
        const double target = 9.0 * hilbert_cert / (epsilon * epsilon);
        j0 = target >= 1e18 ? static_cast<std::size_t>(1e18)
                            : static_cast<std::size_t>(std::ceil(target - 1e-9));
        j0 = std::max<std::size_t>(j0, 1);
    }

    std::vector<Density> x = center_terms(seq, seq.declared_weak_limit());
    SzlenkResult result{
        {out.indices, "szlenk-epsilon", std::move(out.pair_log), j0},
        CesaroTrace{},
        std::move(split),
        epsilon,
        mu_X0,
        r2,
        v_bar,
        w_bar,
        j0};
    result.trace = build_trace(x, result.selection.indices, 1.0, [&result](std::size_t j) {
        return result.certificate(j);
    });
    return result;
}

} // namespace

SzlenkResult szlenk_epsilon_select(const FunctionSequence& seq, double epsilon,
                                   std::size_t horizon, const DiagnosticsGrids& grids) {
    return szlenk_core(seq, epsilon, horizon, grids, false);
}

double DiagonalResult::certificate(std::size_t j) const {
    double best = r;
    const std::size_t top = std::min(max_level, j > 0 ? j - 1 : 0);
    for (std::size_t l = 1; l <= top; ++l)
        best = std::min(best, 1.0 / static_cast<double>(l) +
                                  static_cast<double>(l) * r / static_cast<double>(j));
    return best;
}

DiagonalResult diagonal_extract(const FunctionSequence& seq, std::size_t horizon,
                                const DiagnosticsGrids& grids) {
    require_exponent(seq, 1.0, "diagonal_extract");
    check_horizon(seq, horizon, "diagonal_extract");

    std::vector<std::size_t> current(seq.size());
    for (std::size_t i = 0; i < current.size(); ++i) current[i] = i;

    DiagonalResult result;
    std::vector<std::size_t> diagonal;
    for (std::size_t level = 1; level <= horizon; ++level) {
        if (current.size() < level) break;
        FunctionSequence level_seq = subsequence(seq, current);
        const double eps = 1.0 / static_cast<double>(level);
        SzlenkResult szl = szlenk_core(level_seq, eps, level_seq.size(), grids, true);
        std::vector<std::size_t> mapped;
        mapped.reserve(szl.selection.indices.size());
        for (std::size_t local : szl.selection.indices) mapped.push_back(current[local]);
        if (mapped.size() < level) break;
        current = std::move(mapped);
        diagonal.push_back(current[level - 1]);
        result.levels.push_back({level, eps, current});
    }
    if (diagonal.empty())
        throw SelectionExhausted(1, "diagonal_extract: no level produced a usable selection");

    result.max_level = diagonal.size();
    std::vector<Density> x = center_terms(seq, seq.declared_weak_limit());
    result.r = max_norm(x, 1.0);
    result.selection = {diagonal, "diagonal", {}, 1};
    result.selection.pair_log.assign(diagonal.size(), {});
    result.trace = build_trace(x, result.selection.indices, 1.0, [&result](std::size_t j) {
        return result.certificate(j);
    });
    return result;
}

double zeta_value(double p, double t) {
    if (t == 0.0) return 0.0;
    const long fp = static_cast<long>(std::floor(p));
    const double at = std::fabs(t);
    if (p == static_cast<double>(fp)) {
        // The binomial sum equals (1+t)^p exactly for integer p; evaluating
        // it that way makes the cancellation exact (zeta == 0 for even p).
        const double num = ipow(std::fabs(1.0 + t), fp) - ipow(1.0 + t, fp);
        return num / ipow(at, fp);
    }
    std::vector<double> binom(static_cast<std::size_t>(fp) + 1);
    binom[0] = 1.0;
    for (long k = 1; k <= fp; ++k)
        binom[static_cast<std::size_t>(k)] =
            binom[static_cast<std::size_t>(k - 1)] * (p - static_cast<double>(k - 1)) /
            static_cast<double>(k);
    double sum = binom[static_cast<std::size_t>(fp)];
    for (long k = fp - 1; k >= 0; --k) sum = sum * t + binom[static_cast<std::size_t>(k)];
    return (std::pow(std::fabs(1.0 + t), p) - sum) / std::pow(at, p);
}

LpConstants zeta_constant(double p) {
    if (!(p > 1.0) || !(p < kInfinity) || std::isnan(p))
        throw ValidationError("zeta_constant requires 1 < p < infinity");
    LpConstants c;
    c.p = p;
    c.floor_p = static_cast<long>(std::floor(p));
    c.p_dual = p / (p - 1.0);
    c.binomials.resize(static_cast<std::size_t>(c.floor_p) + 1);
    c.binomials[0] = 1.0;
    for (long k = 1; k <= c.floor_p; ++k)
        c.binomials[static_cast<std::size_t>(k)] =
            c.binomials[static_cast<std::size_t>(k - 1)] * (p - static_cast<double>(k - 1)) /
            static_cast<double>(k);
    CompensatedSum b;
    for (long k = 2; k <= c.floor_p; ++k) b.add(c.binomials[static_cast<std::size_t>(k)]);
    c.B = b.value();

    // Symmetric sampling grid: fine linear sweep near the origin plus a
    // geometric sweep out to |t| = 10^4.
    const double T = 1e4;
    c.grid_extent = T;
    double sup = 0.0;
    auto probe = [&](double t) { sup = std::max(sup, std::fabs(zeta_value(p, t))); };
    const double step = 1.0 / 1024.0;
    for (double t = step; t <= 50.0; t += step) {
        probe(t);
        probe(-t);
    }
    for (double t = 50.0; t <= T; t *= 1.002) {
        probe(t);
        probe(-t);
    }
    for (double t = 1e-8; t < 1e-3; t *= 1.1) {
        probe(t);
        probe(-t);
    }
    c.sampled_sup = sup;

    const bool integral = (p == static_cast<double>(c.floor_p));
    const bool even = integral && (c.floor_p % 2 == 0);
    c.limit_at_pos_inf = integral ? 0.0 : 1.0;
    c.limit_at_neg_inf = integral ? (even ? 0.0 : 2.0) : 1.0;
    c.sup = std::max({c.sampled_sup, std::fabs(c.limit_at_pos_inf),
                      std::fabs(c.limit_at_neg_inf)});
    c.C = std::max(1.0, 1.01 * c.sup);
    return c;
}

namespace {

SelectionResult lp_greedy(const FunctionSequence& seq, double p, std::size_t horizon,
                          bool two_sided) {
    if (!(p > 1.0) || !(p < kInfinity))
        throw ValidationError("selection requires 1 < p < infinity");
    require_exponent(seq, p, two_sided ? "okada_select" : "banach_saks_lp_select");
    check_horizon(seq, horizon, two_sided ? "okada_select" : "banach_saks_lp_select");

    const std::vector<Density> x = center_terms(seq, seq.declared_weak_limit());
    const double r = max_norm(x, p);

    // The dual element of S_{j-1} changes as the partial sum grows, so the
    // loop carries it alongside the selection.
    Density running = Density::zero(seq.space());
    Density dual = Density::zero(seq.space());
    GreedyOutcome out;
    for (std::size_t j = 1; j <= horizon; ++j) {
        if (j > 1) {
            dual = two_sided ? duality_map(running, p).phi : lp_dual_element(running, p);
        }
        const std::size_t begin = out.indices.empty() ? 0 : out.indices.back() + 1;
        bool found = false;
        for (std::size_t cand = begin; cand < x.size() && !found; ++cand) {
            if (j == 1) {
                out.indices.push_back(cand);
                out.pair_log.push_back({});
                found = true;
                break;
            }
            const double pairing = dual_pairing(dual, x[cand]);
            const bool ok = two_sided ? std::fabs(pairing) <= 1.0 : pairing <= 1.0;
            if (ok) {
                out.indices.push_back(cand);
                out.pair_log.push_back({pairing});
                found = true;
            }
        }
        if (!found) {
            out.failed_step = j;
            break;
        }
        running += x[out.indices.back()];
    }
    throw_if_short(out, two_sided ? "okada_select" : "banach_saks_lp_select");

    std::function<double(std::size_t)> bound;
    if (two_sided) {
        bound = [](std::size_t) { return std::numeric_limits<double>::quiet_NaN(); };
    } else {
        const LpConstants consts = zeta_constant(p);
        const double rp = std::pow(r, p);
        bound = [p, rp, consts](std::size_t j) {
            const double jd = static_cast<double>(j);
            double value = rp / std::pow(jd, p) + (p + consts.C * rp) / std::pow(jd, p - 1.0);
            if (p >= 2.0) value += consts.B * rp / jd;
            return std::pow(value, 1.0 / p);
        };
    }
    CesaroTrace trace = build_trace(x, out.indices, p, bound);
    return {{std::move(out.indices), two_sided ? "okada-duality" : "banach-saks-lp",
             std::move(out.pair_log), 1},
            std::move(trace), r};
}

} // namespace

SelectionResult banach_saks_lp_select(const FunctionSequence& seq, double p,
                                      std::size_t horizon) {
    return lp_greedy(seq, p, horizon, false);
}

DualityVector duality_map(const Density& u, double p) {
    if (!(p > 1.0) || !(p < kInfinity) || std::isnan(p))
        throw ValidationError("duality_map requires 1 < p < infinity");
    const double norm = lp_norm(u, p);
    if (p == 2.0) return {u, norm}; // phi is the identity on a Hilbert space
    if (norm == 0.0) return {Density::zero(u.space()), 0.0};
    const double scale = std::pow(norm, 2.0 - p);
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = scale * signed_pow(u[i], p - 1.0);
    return {Density(u.space(), std::move(v)), norm};
}

SelectionResult okada_select(const FunctionSequence& seq, double p, std::size_t horizon) {
    return lp_greedy(seq, p, horizon, true);
}

DecayCheck verify_decay(const CesaroTrace& trace, double tol) {
    if (!(tol > 0.0)) throw ValidationError("verify_decay requires tol > 0");
    DecayCheck check;
    if (trace.points.empty()) return check;
    check.min_value = trace.points.front().cesaro_norm;
    check.j_min = trace.points.front().j;
    for (const TracePoint& pt : trace.points) {
        if (pt.cesaro_norm < check.min_value) {
            check.min_value = pt.cesaro_norm;
            check.j_min = pt.j;
        }
        if (!check.reached && pt.cesaro_norm <= tol) {
            check.reached = true;
            check.j_reached = pt.j;
        }
    }
    return check;
}

namespace {

ReplayReport compare_logs(const std::vector<std::vector<double>>& expected,
                          const std::vector<std::vector<double>>& logged,
                          const std::function<bool(std::size_t, double)>& threshold_ok) {
    ReplayReport report;
    report.checked_steps = expected.size();
    if (expected.size() != logged.size()) {
        report.log_matches = false;
        return report;
    }
    for (std::size_t s = 0; s < expected.size(); ++s) {
        if (expected[s].size() != logged[s].size()) {
            report.log_matches = false;
            continue;
        }
        for (std::size_t k = 0; k < expected[s].size(); ++k) {
            const double err = std::fabs(expected[s][k] - logged[s][k]);
            report.max_log_error = std::max(report.max_log_error, err);
            if (err > kReplayTol) report.log_matches = false;
            if (!threshold_ok(s + 1, expected[s][k])) report.thresholds_ok = false;
        }
    }
    return report;
}

std::vector<std::vector<double>> recompute_hilbert_log(const std::vector<Density>& x,
                                                       const std::vector<std::size_t>& idx) {
    std::vector<std::vector<double>> log;
    log.reserve(idx.size());
    for (std::size_t j = 1; j <= idx.size(); ++j) {
        std::vector<double> step;
        step.reserve(j - 1);
        for (std::size_t k = 0; k + 1 < j; ++k)
            step.push_back(dual_pairing(x[idx[k]], x[idx[j - 1]]));
        log.push_back(std::move(step));
    }
    return log;
}

std::vector<std::vector<double>> recompute_lp_log(const std::vector<Density>& x,
                                                  const std::vector<std::size_t>& idx,
                                                  double p, bool two_sided) {
    std::vector<std::vector<double>> log;
    log.reserve(idx.size());
    Density running = Density::zero(x.front().space());
    for (std::size_t j = 1; j <= idx.size(); ++j) {
        if (j == 1) {
            log.push_back({});
        } else {
            Density dual = two_sided ? duality_map(running, p).phi : lp_dual_element(running, p);
            log.push_back({dual_pairing(dual, x[idx[j - 1]])});
        }
        running += x[idx[j - 1]];
    }
    return log;
}

} // namespace

ReplayReport replay_hilbert(const FunctionSequence& seq, const Density& center,
                            const SubsequenceSelection& sel) {
    const std::vector<Density> x = center_terms(seq, center);
    return compare_logs(recompute_hilbert_log(x, sel.indices), sel.pair_log,
                        [](std::size_t j, double pairing) {
                            return std::fabs(pairing) <=
                                   1.0 / static_cast<double>(j + 1) + kReplayTol;
                        });
}

ReplayReport replay_banach_saks_lp(const FunctionSequence& seq,
                                   const SubsequenceSelection& sel) {
    const std::vector<Density> x = center_terms(seq, seq.declared_weak_limit());
    return compare_logs(recompute_lp_log(x, sel.indices, seq.p(), false), sel.pair_log,
                        [](std::size_t, double pairing) { return pairing <= 1.0 + kReplayTol; });
}

ReplayReport replay_okada(const FunctionSequence& seq, const SubsequenceSelection& sel) {
    const std::vector<Density> x = center_terms(seq, seq.declared_weak_limit());
    return compare_logs(recompute_lp_log(x, sel.indices, seq.p(), true), sel.pair_log,
                        [](std::size_t, double pairing) {
                            return std::fabs(pairing) <= 1.0 + kReplayTol;
                        });
}

ReplayReport replay_szlenk(const SzlenkResult& result) {
    std::vector<Density> rem_centered;
    rem_centered.reserve(result.split.remainder.size());
    for (const Density& rem : result.split.remainder)
        rem_centered.push_back(rem - result.split.limit_estimate);
    return compare_logs(recompute_hilbert_log(rem_centered, result.selection.indices),
                        result.selection.pair_log, [](std::size_t j, double pairing) {
                            return std::fabs(pairing) <=
                                   1.0 / static_cast<double>(j + 1) + kReplayTol;
                        });
}

std::string theorem_tag(const std::string& threshold_rule) {
    if (threshold_rule == "hilbert-greedy")
        return "uniform Banach-Saks property of Hilbert space";
    if (threshold_rule == "szlenk-epsilon")
        return "epsilon-step of the weak Banach-Saks property of L1";
    if (threshold_rule == "diagonal")
        return "weak Banach-Saks property of L1 (diagonal of nested epsilon-selections)";
    if (threshold_rule == "banach-saks-lp")
        return "Banach-Saks property of Lp, 1 < p < infinity";
    if (threshold_rule == "okada-duality")
        return "Banach-Saks property via a uniformly convex dual (duality mapping)";
    return "unknown selector";
}

} // namespace cesaro
