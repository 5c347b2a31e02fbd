#pragma once

#include <optional>
#include <vector>

#include "cantor/cantor_model.hpp"
#include "cantor/interval.hpp"
#include "cantor/rounding.hpp"

namespace cantor {

/// Partial sums of the gap-length series sum l_n^p over a budgeted prefix.
/// The verdict is a tail-ratio heuristic and is advisory only; the certified
/// content is the upper-rounded partial sums themselves.
struct CpReport {
    enum class Verdict { converging_evidence, diverging_evidence, inconclusive };

    Rational p;
    std::vector<std::pair<int, Rational>> partial_sums;  // (level, cumulative upper bound)
    Verdict verdict = Verdict::inconclusive;

    Rational total() const { return partial_sums.empty() ? Rational(0) : partial_sums.back().second; }
};

/// Requires 0 < p <= 1 (p = 1 gives the exact total gap length).
CpReport cp_partial_sum(const GapCantor& gc, const Rational& p, const GapBudget& budget,
                        unsigned precision = 64);

/// Gap-exponent estimate: with gaps sorted decreasing, the exponent of
/// convergence is limsup log n / (-log l_(n)). The enclosure collects that
/// quotient over the last half of the sorted sample (a window wide enough to
/// straddle at least one full level of every library construction), widens
/// the upper end by one resolution step 1/(-log2 l_min) when the enumeration
/// is truncated, and clamps to [0, 1]. Empirical by nature; never feeds a
/// certified bound. A complete finite gap list returns exactly 0.
struct PEstimate {
    Rational lo;
    Rational hi;
    std::size_t sample_size = 0;
    bool inconclusive = false;

    static constexpr const char* method = "sorted-gap exponent of convergence";

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    Rational width() const { return hi - lo; }
};

/// Needs at least 32 budgeted gaps; otherwise returns inconclusive [0, 1].
PEstimate estimate_P(const GapCantor& gc, const GapBudget& budget, unsigned precision = 64);

/// Everything Theorem-3.1-shaped in one report. All quantities live in the
/// normalized frame where inf K̃ = 0 and inf K = 0; a translation admissible
/// here corresponds to t + (inf K̃ - inf K) in original coordinates.
struct NestingReport {
    Rational diam_k{0};
    Rational diam_ktilde{0};
    std::optional<Interval> base;  // [0, diam K̃ - diam K]; empty when diam K > diam K̃

    // Bound fields (theo1_lower_bound / lambda_scan).
    bool bound_computed = false;
    Rational big_gap_sum{0};           // sum over l_n > diam K of (diam K + l_n), exact
    Rational small_gap_sum_upper{0};   // upper bound of 2 C_K sum l_n^{1-d}
    Rational theo1_bound{0};           // diam K̃ - diam K - big - small; signed, never clamped

    // Oracle fields (x_inner_outer).
    bool oracle_computed = false;
    IntervalUnion x_inner;  // certified subset of the admissible set given all enumerated gaps
    IntervalUnion x_outer;  // certified superset for any gap prefix

    int depth_used = 0;
    std::size_t gaps_used = 0;
    bool tail_incomplete = false;  // gaps beyond the enumerated prefix exist
};

/// Theorem 3.1 evaluation over the budgeted gap prefix with certified
/// rounding. Refuses degenerate certificates (no uncertified bound is ever
/// emitted). A positive value certifies Leb(X) >= theo1_bound for the
/// truncated K̃; the tail flag records whether gaps were left out.
NestingReport theo1_lower_bound(const DigitCantorSpec& spec, const FuzzyMeasureCert& cert,
                                const GapCantor& gc, const GapBudget& budget,
                                unsigned precision = 64);

/// Exact union of (gap - cover) intersected with base; with cover containing
/// K this is a superset of the true complement of the admissible set.
IntervalUnion admissible_complement(const std::vector<Interval>& gaps, const IntervalUnion& cover,
                                    const Interval& base);

/// Core oracle over explicit set data: `cover` contains K and drives the
/// inner approximation; `known_subset` consists of points certified to lie in
/// K and drives the outer one. When both equal K exactly (finite-union K),
/// x_inner == x_outer is the exact admissible set.
NestingReport x_inner_outer_sets(const IntervalUnion& cover, const IntervalUnion& known_subset,
                                 const GapCantor& gc, const GapBudget& budget);

/// Spec-driven oracle: cover at the given depth, outer side from the cover
/// part endpoints (genuine elements of K).
NestingReport x_inner_outer(const DigitCantorSpec& spec, const GapCantor& gc, int depth,
                            const GapBudget& budget);

struct ScanRow {
    Rational lambda;
    Rational theo1_bound;
    Rational x_inner_measure;
    Rational x_outer_measure;
    bool tail_incomplete;
};

/// Per-lambda evaluation of the scaled bound (estim1): requires the spec
/// normalized to diameter 1 before scaling.
std::vector<ScanRow> lambda_scan(const DigitCantorSpec& unit_spec, const FuzzyMeasureCert& cert,
                                 const GapCantor& gc, const std::vector<Rational>& grid, int depth,
                                 const GapBudget& budget, unsigned precision = 64);

struct IntervalBoundCheck {
    Rational measured;  // measure(I - cover), >= the true measure(I - K)
    Rational bound;     // the applicable case bound, upper-rounded
    bool small_case;    // diam I <= diam K
};

/// Both sides of the interval-minus-Cantor inequality, for test harnesses:
/// small intervals get 2 C_K (Leb I)^{1-d}, large ones Leb I + diam K.
IntervalBoundCheck interval_minus_cantor_bound_check(const Interval& I,
                                                     const DigitCantorSpec& spec,
                                                     const FuzzyMeasureCert& cert, int depth,
                                                     unsigned precision = 64);

/// Certified upper bound for measure of (union over q in [0, Q) of q*h + c)
/// intersected with `window`, via reduction of c modulo h. Makes grid-periodic
/// gap families (10^i translates) tractable without enumerating translates.
Rational periodic_translates_measure_upper(const IntervalUnion& c, const Rational& h,
                                           const mpz_class& Q, const Interval& window);

}  // namespace cantor
