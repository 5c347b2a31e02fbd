#include "cantor/nesting.hpp"

#include <map>
#include <stdexcept>

namespace cantor {

namespace {

constexpr std::size_t kPairBudget = std::size_t(1) << 26;

// Length tally of a budgeted gap prefix: the constructions repeat few distinct
// lengths, so per-length rounding work is shared across millions of gaps.
struct GapTally {
    std::map<Rational, mpz_class> by_length;
    std::size_t count = 0;
    bool complete = false;
};

GapTally tally_lengths(const GapCantor& gc, const GapBudget& budget) {
    GapTally t;
    auto info = gc.for_each_gap(budget, [&](int, const Interval& g) {
        ++t.by_length[g.length()];
        return true;
    });
    t.count = info.emitted;
    t.complete = info.complete;
    return t;
}

}  // namespace

CpReport cp_partial_sum(const GapCantor& gc, const Rational& p, const GapBudget& budget,
                        unsigned precision) {
    if (!p.is_positive() || Rational(1) < p)
        throw std::domain_error("cp_partial_sum: need 0 < p <= 1");

    CpReport report;
    report.p = p;

    // Per-level length tallies, then one rounded power per distinct length.
    std::map<int, std::map<Rational, mpz_class>> levels;
    gc.for_each_gap(budget, [&](int level, const Interval& g) {
        ++levels[level][g.length()];
        return true;
    });

    std::map<Rational, Rational> pow_cache;
    auto term_upper = [&](const Rational& l) {
        if (p == Rational(1)) return l;
        auto it = pow_cache.find(l);
        if (it != pow_cache.end()) return it->second;
        Rational v = pow_upper(l, p, precision);
        pow_cache.emplace(l, v);
        return v;
    };

    Rational cumulative(0);
    std::vector<Rational> increments;
    for (const auto& [level, tally] : levels) {
        Rational inc(0);
        for (const auto& [len, cnt] : tally) inc += Rational(cnt) * term_upper(len);
        cumulative += inc;
        increments.push_back(inc);
        report.partial_sums.emplace_back(level, cumulative);
    }

    // Advisory tail-ratio verdict over the last three per-level increments.
    if (increments.size() >= 3) {
        bool shrinking = true, growing = true;
        for (std::size_t i = increments.size() - 2; i < increments.size(); ++i) {
            const Rational& prev = increments[i - 1];
            const Rational& cur = increments[i];
            if (!(cur * Rational(8) <= prev * Rational(7))) shrinking = false;
            if (cur < prev) growing = false;
        }
        if (shrinking)
            report.verdict = CpReport::Verdict::converging_evidence;
        else if (growing)
            report.verdict = CpReport::Verdict::diverging_evidence;
    }
    return report;
}

PEstimate estimate_P(const GapCantor& gc, const GapBudget& budget, unsigned precision) {
    PEstimate est;
    GapTally tally = tally_lengths(gc, budget);
    est.sample_size = tally.count;
    if (tally.complete) {
        // The whole gap list is this finite prefix: the series converges for
        // every p, so the exponent of convergence is exactly 0.
        est.lo = est.hi = Rational(0);
        return est;
    }
    if (tally.count < 32) {
        est.inconclusive = true;
        est.lo = Rational(0);
        est.hi = tally.count == 0 ? Rational(0) : Rational(1);
        return est;
    }

    // Runs of equal length in decreasing order; indices are 1-based ranks.
    const mpz_class n_total(static_cast<unsigned long>(tally.count));
    const mpz_class window_start = n_total / 2 + 1;
    bool have = false;
    Rational lo, hi;
    mpz_class rank_end = n_total;
    for (const auto& [len, cnt] : tally.by_length) {  // ascending length = descending rank
        mpz_class rank_begin = rank_end - cnt + 1;
        mpz_class lo_rank = rank_begin > window_start ? rank_begin : window_start;
        if (lo_rank <= rank_end && len < Rational(1)) {
            RatBounds denom = log_bounds(Rational(1) / len, precision);
            // log n / log(1/l) is increasing in n within a run.
            RatBounds num_lo = log_bounds(Rational(lo_rank), precision);
            RatBounds num_hi = log_bounds(Rational(rank_end), precision);
            Rational run_lo = num_lo.lo / denom.hi;
            Rational run_hi = num_hi.hi / denom.lo;
            if (!have || run_lo < lo) lo = run_lo;
            if (!have || hi < run_hi) hi = run_hi;
            have = true;
        }
        rank_end = rank_begin - 1;
        if (rank_end < window_start) break;
    }
    if (!have) {
        est.inconclusive = true;
        est.lo = Rational(0);
        est.hi = Rational(1);
        return est;
    }

    // Truncated enumerations widen the upper end by one resolution step
    // 1/(-log2 l_min): a single further dyadic halving of the smallest
    // enumerated gap moves log n / (-log l) by about this much, and unseen
    // smaller gaps can still lift the limsup within that resolution.
    const Rational& l_min = tally.by_length.begin()->first;
    if (l_min < Rational(1)) {
        Rational log2_inv_lmin = log_bounds(Rational(1) / l_min, precision).lo /
                                 log_bounds(Rational(2), precision).hi;
        if (log2_inv_lmin.is_positive()) hi += Rational(1) / log2_inv_lmin;
    }

    est.lo = max(lo, Rational(0));
    est.hi = min(hi, Rational(1));
    if (est.hi < est.lo) est.hi = est.lo;
    return est;
}

IntervalUnion admissible_complement(const std::vector<Interval>& gaps, const IntervalUnion& cover,
                                    const Interval& base) {
    if (gaps.size() * std::max<std::size_t>(cover.size(), 1) > kPairBudget)
        throw std::length_error("admissible_complement: pair budget exceeded");
    std::vector<Interval> diffs;
    diffs.reserve(gaps.size() * cover.size());
    for (const Interval& g : gaps)
        for (const Interval& c : cover.parts()) diffs.push_back(interval_difference(g, c));
    return intersect(IntervalUnion::normalized(std::move(diffs)), IntervalUnion(base));
}

namespace {

NestingReport oracle_report(const IntervalUnion& cover, const IntervalUnion& known_subset,
                            const GapCantor& gc, const GapBudget& budget) {
    NestingReport r;
    auto k_hull = cover.hull();
    if (!k_hull) throw std::domain_error("x_inner_outer: empty cover for K");
    r.diam_k = k_hull->length();
    r.diam_ktilde = gc.diameter();

    // Normalized frame: inf K̃ = 0, inf K = 0.
    const Rational k_shift = -k_hull->lo;
    const Rational kt_shift = -gc.ambient().lo;
    IntervalUnion cover0 = cover.translated(k_shift);
    IntervalUnion known0 = known_subset.translated(k_shift);

    r.oracle_computed = true;
    if (r.diam_ktilde < r.diam_k) {
        r.base = std::nullopt;
        r.tail_incomplete = gc.truncated();
        return r;
    }
    Interval base = Interval::closed(Rational(0), r.diam_ktilde - r.diam_k);
    r.base = base;

    std::vector<Interval> gaps;
    auto info = gc.for_each_gap(budget, [&](int, const Interval& g) {
        gaps.push_back(g.translated(kt_shift));
        return true;
    });
    r.gaps_used = info.emitted;
    r.tail_incomplete = !info.complete;

    r.x_inner = complement_in(base, admissible_complement(gaps, cover0, base));
    if (known0.empty()) throw std::domain_error("x_inner_outer: empty known subset of K");
    r.x_outer = complement_in(base, admissible_complement(gaps, known0, base));
    return r;
}

}  // namespace

NestingReport x_inner_outer_sets(const IntervalUnion& cover, const IntervalUnion& known_subset,
                                 const GapCantor& gc, const GapBudget& budget) {
    return oracle_report(cover, known_subset, gc, budget);
}

NestingReport x_inner_outer(const DigitCantorSpec& spec, const GapCantor& gc, int depth,
                            const GapBudget& budget) {
    NestingReport r = oracle_report(cover_at_depth(spec, depth).cover,
                                    cover_endpoints(spec, depth), gc, budget);
    r.depth_used = depth;
    return r;
}

NestingReport theo1_lower_bound(const DigitCantorSpec& spec, const FuzzyMeasureCert& cert,
                                const GapCantor& gc, const GapBudget& budget,
                                unsigned precision) {
    if (cert.dim.degenerate)
        throw std::domain_error("theo1_lower_bound: refusing degenerate dimension certificate");
    if (Rational(1) <= cert.dim.hi)
        throw std::domain_error("theo1_lower_bound: dimension enclosure must stay below 1");
    if (!cert.ck_upper.is_positive())
        throw std::domain_error("theo1_lower_bound: missing ck_upper certificate");

    NestingReport r;
    r.diam_k = spec.diameter();
    r.diam_ktilde = gc.diameter();
    if (r.diam_ktilde < r.diam_k) {
        r.base = std::nullopt;
    } else {
        r.base = Interval::closed(Rational(0), r.diam_ktilde - r.diam_k);
    }

    GapTally tally = tally_lengths(gc, budget);
    r.gaps_used = tally.count;
    r.tail_incomplete = !tally.complete;

    const Rational one_minus_d_lo = Rational(1) - cert.dim.hi;
    const Rational one_minus_d_hi = Rational(1) - cert.dim.lo;
    Rational small_power_sum_upper(0);
    for (const auto& [len, cnt] : tally.by_length) {
        if (r.diam_k < len) {
            r.big_gap_sum += Rational(cnt) * (r.diam_k + len);
        } else {
            Rational up = pow_bounds_exponent_range(len, one_minus_d_lo, one_minus_d_hi, precision).hi;
            small_power_sum_upper += Rational(cnt) * up;
        }
    }
    r.small_gap_sum_upper = Rational(2) * cert.ck_upper * small_power_sum_upper;
    r.theo1_bound = r.diam_ktilde - r.diam_k - r.big_gap_sum - r.small_gap_sum_upper;
    r.bound_computed = true;
    return r;
}

std::vector<ScanRow> lambda_scan(const DigitCantorSpec& unit_spec, const FuzzyMeasureCert& cert,
                                 const GapCantor& gc, const std::vector<Rational>& grid, int depth,
                                 const GapBudget& budget, unsigned precision) {
    if (unit_spec.diameter() != Rational(1))
        throw std::domain_error("lambda_scan: normalize K to diameter 1 first");
    if (grid.empty()) throw std::invalid_argument("lambda_scan: empty grid");

    std::vector<ScanRow> rows;
    rows.reserve(grid.size());
    for (const Rational& lambda : grid) {
        if (!lambda.is_positive()) throw std::domain_error("lambda_scan: lambda must be positive");
        DigitCantorSpec scaled = unit_spec.scaled(lambda);
        FuzzyMeasureCert scaled_cert = scale_cert(cert, lambda, precision);
        NestingReport bound = theo1_lower_bound(scaled, scaled_cert, gc, budget, precision);
        NestingReport oracle = x_inner_outer(scaled, gc, depth, budget);
        rows.push_back(ScanRow{lambda, bound.theo1_bound, oracle.x_inner.measure(),
                               oracle.x_outer.measure(),
                               bound.tail_incomplete || oracle.tail_incomplete});
    }
    return rows;
}

IntervalBoundCheck interval_minus_cantor_bound_check(const Interval& I,
                                                     const DigitCantorSpec& spec,
                                                     const FuzzyMeasureCert& cert, int depth,
                                                     unsigned precision) {
    IntervalBoundCheck out;
    const IntervalUnion cover = cover_at_depth(spec, depth).cover;
    out.measured = minkowski_diff(IntervalUnion(I), cover).measure();
    const Rational diam_k = spec.diameter();
    out.small_case = I.length() <= diam_k;
    if (out.small_case) {
        if (I.length().is_zero()) {
            out.bound = Rational(0);  // 2 C_K 0^{1-d}; the true Leb(I - K) is 0
        } else {
            Rational up = pow_bounds_exponent_range(I.length(), Rational(1) - cert.dim.hi,
                                                    Rational(1) - cert.dim.lo, precision)
                              .hi;
            out.bound = Rational(2) * cert.ck_upper * up;
        }
    } else {
        out.bound = I.length() + diam_k;
    }
    return out;
}

Rational periodic_translates_measure_upper(const IntervalUnion& c, const Rational& h,
                                           const mpz_class& Q, const Interval& window) {
    if (!h.is_positive()) throw std::domain_error("periodic_translates_measure_upper: h <= 0");
    if (c.empty() || Q == 0) return Rational(0);

    const Rational mod_measure = c.mod_reduce(h).measure();
    // Periods of Z h + (c mod h) that can meet the window.
    mpz_class periods = (window.length() / h).floor() + 2;
    Rational bound = Rational(periods) * mod_measure;
    Rational per_translate = Rational(Q) * c.measure();
    if (per_translate < bound) bound = per_translate;
    return min(bound, window.length());
}

}  // namespace cantor
