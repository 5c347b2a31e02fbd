#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantor/interval.hpp"
#include "cantor/rounding.hpp"

namespace cantor {

/// Certified enclosure of a dimension value; `exact` is set when the
/// log-ratio is rational (digit count a power of the base).
struct DimensionEnclosure {
    Rational lo;
    Rational hi;
    std::optional<Rational> exact;
    bool degenerate = false;  // single-digit spec, dimension 0

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

/// Generative description of a self-similar digit Cantor set: the set
/// { sum_i d_i b^{-i} : d_i in J }, then scaled and translated. The canonical
/// expansion anchors at the first fractional position; paper variants with a
/// forced leading digit are reproduced by an affine transform.
class DigitCantorSpec {
public:
    DigitCantorSpec(unsigned base, std::vector<unsigned> digits, Rational scale = Rational(1),
                    Rational translate = Rational(0));

    unsigned base() const { return base_; }
    const std::vector<unsigned>& digits() const { return digits_; }
    const Rational& scale() const { return scale_; }
    const Rational& translate() const { return translate_; }
    bool degenerate() const { return digits_.size() == 1; }

    /// (max J - min J)/(base - 1), before scaling.
    Rational digit_span() const;
    Rational diameter() const { return scale_ * digit_span(); }
    Interval hull() const;

    DigitCantorSpec scaled(const Rational& lambda) const;
    DigitCantorSpec translated_by(const Rational& t) const;

    static constexpr std::size_t default_part_budget = std::size_t(1) << 22;

private:
    unsigned base_;
    std::vector<unsigned> digits_;
    Rational scale_;
    Rational translate_;
};

/// Depth-n outer cover of a regular Cantor set; nested decreasing in depth,
/// and the represented set is contained in every cover.
struct CoverApprox {
    int depth = 0;
    IntervalUnion cover;
};

/// Convention: the depth-n cover consists of the convex hulls of the digit
/// cylinders, i.e. per prefix the interval
///   translate + scale*(prefix + [minJ, maxJ]/(b-1)) * b^{-n},
/// so depth 0 is the convex hull and parts have length b^{-n} * diameter.
CoverApprox cover_at_depth(const DigitCantorSpec& spec, int n,
                           std::size_t part_budget = DigitCantorSpec::default_part_budget);

/// The cover-part endpoints at a given depth, as a union of points. These are
/// genuine elements of the set (digit strings with constant tails), which is
/// what makes them usable for certified outer approximations of translation
/// sets.
IntervalUnion cover_endpoints(const DigitCantorSpec& spec, int n,
                              std::size_t part_budget = DigitCantorSpec::default_part_budget);

/// Enclosure of log|J| / log b; exact rational when |J| and b are powers of a
/// common integer. Single-digit specs give dimension 0 flagged degenerate.
DimensionEnclosure dimension(const DigitCantorSpec& spec, unsigned precision = 64);

/// Certified two-sided certificate for the d-box fuzzy measure
/// C_K = sup_eps inf { N eps^d }. ck_upper bounds the supremum; ck_lower is
/// the smallest value actually observed at the examined construction scales.
struct FuzzyMeasureCert {
    DimensionEnclosure dim;
    Rational ck_lower;
    Rational ck_upper;
    std::vector<Rational> scales_examined;
};

/// Upper certificate from one self-similarity period: for eps in a sub-block
/// [g, g'] of [diam/b, diam], N(eps) <= N(g) and eps^d <= g'^d, and
/// N(eps/b) = |J| N(eps) with b^d = |J| carries the block bound to all
/// smaller scales. ck_lower evaluates N(eps) eps^d at construction scales.
FuzzyMeasureCert ck_upper_bound(const DigitCantorSpec& spec, int depth = 6, int substeps = 32,
                                unsigned precision = 64);

/// C_{lambda K} = lambda^d C_K, applied to a certificate with enclosure
/// arithmetic (the rescaled certificate is still certified).
FuzzyMeasureCert scale_cert(const FuzzyMeasureCert& cert, const Rational& lambda,
                            unsigned precision = 64);

/// Empirical box-dimension slope: least squares of log N(eps) against
/// -log eps over a geometric ladder eps0 * ratio^t. Diagnostics only, never
/// feeds a certified bound.
double box_dimension_regression(const IntervalUnion& cover, const Rational& eps0,
                                const Rational& ratio, int steps);

/// Truncation policy for enumerable gap sequences.
struct GapBudget {
    std::optional<int> max_level;
    std::optional<Rational> min_length;
    std::optional<std::size_t> max_count;

    static GapBudget all() { return {}; }
    static GapBudget levels(int l) {
        GapBudget b;
        b.max_level = l;
        return b;
    }
    static GapBudget count(std::size_t m) {
        GapBudget b;
        b.max_count = m;
        return b;
    }
    static GapBudget min_len(Rational l) {
        GapBudget b;
        b.min_length = std::move(l);
        return b;
    }
};

/// K̃-side representation: an ambient interval and an enumerable sequence of
/// open gaps, ordered by construction level and left-to-right within a level.
/// Gap lists may be lazily generated; repeated enumeration with larger
/// budgets extends the emitted prefix deterministically.
class GapCantor {
public:
    /// Return false from the visitor to stop enumeration early.
    using GapVisitor = std::function<bool(int level, const Interval& gap)>;
    /// Emits levels 1..max_level in order, left-to-right within each level.
    using Enumerator = std::function<void(int max_level, const GapVisitor&)>;

    struct LevelSummary {
        mpz_class count;
        Rational uniform_length;
    };
    using LevelSummaryFn = std::function<std::optional<LevelSummary>(int level)>;

    struct EnumerationInfo {
        std::size_t emitted = 0;
        bool complete = false;  // nothing beyond the emitted prefix exists
    };

    GapCantor(Interval ambient, int max_level, bool truncated, std::string meta, Enumerator e);

    static GapCantor from_gap_list(Interval ambient, std::vector<Interval> gaps, std::string meta,
                                   bool truncated = false);

    const Interval& ambient() const { return ambient_; }
    Rational diameter() const { return ambient_.length(); }
    int max_level() const { return max_level_; }
    /// True when the underlying set has gaps beyond the enumerable prefix
    /// (every infinite construction is truncated at build parameters).
    bool truncated() const { return truncated_; }
    const std::string& meta() const { return meta_; }

    EnumerationInfo for_each_gap(const GapBudget& budget, const GapVisitor& visit) const;
    std::vector<Interval> gaps_up_to(const GapBudget& budget) const;
    IntervalUnion normalized_gaps(const GapBudget& budget) const;
    /// ambient minus the budgeted gaps; a superset of the represented set.
    IntervalUnion set_approximation(const GapBudget& budget) const;
    /// Sum of raw gap lengths over the enumerated prefix (duplicates counted
    /// as enumerated). Uses per-level closed forms when the construction
    /// registered them.
    Rational raw_gap_length_sum(const GapBudget& budget) const;
    std::size_t gap_count(const GapBudget& budget) const;

    void set_level_summary(LevelSummaryFn fn) { level_summary_ = std::move(fn); }
    std::optional<LevelSummary> level_summary(int level) const;

    GapCantor translated(const Rational& t) const;

private:
    Interval ambient_;
    int max_level_;
    bool truncated_;
    std::string meta_;
    Enumerator enumerate_;
    LevelSummaryFn level_summary_;
};

}  // namespace cantor
