#pragma once

#include <optional>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

/// Rational interval with explicit endpoint-openness tags. Valid states:
/// lo < hi with any tags, or lo == hi with both endpoints closed (a point).
/// Measure ignores the tags; set algebra respects them.
struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = true;

    Interval() = default;
    Interval(Rational lo_, Rational hi_, bool lo_closed_, bool hi_closed_);

    static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
    static Interval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
    static Interval point(Rational v) { return {v, v, true, true}; }

    Rational length() const { return hi - lo; }
    bool is_point() const { return lo == hi; }

    bool contains(const Rational& x) const;
    bool contains(const Interval& other) const;
    std::optional<Interval> intersect(const Interval& other) const;

    Interval translated(const Rational& t) const { return {lo + t, hi + t, lo_closed, hi_closed}; }
    Interval scaled(const Rational& lambda) const;  // lambda > 0
    Interval negated() const { return {-hi, -lo, hi_closed, lo_closed}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Minkowski difference a - b = {x - y : x in a, y in b} of two intervals.
/// The infimum is attained iff both defining endpoints are attained.
Interval interval_difference(const Interval& a, const Interval& b);

/// Normalized finite union of pairwise disjoint, non-mergeable intervals,
/// sorted by left endpoint. Two parts touching at a point stay separate only
/// when both are open there (the point is genuinely missing).
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(const Interval& single) : parts_{single} {}

    /// The normalize operation: sorts, merges overlaps and touching-closed
    /// adjacencies. Idempotent; preserves the represented set and its measure.
    static IntervalUnion normalized(std::vector<Interval> parts);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }
    std::optional<Interval> hull() const;

    Rational measure() const;

    bool contains(const Rational& x) const;
    /// Subset test (tag-exact): every point of other lies in *this.
    bool contains_set(const IntervalUnion& other) const;

    IntervalUnion translated(const Rational& t) const;
    IntervalUnion scaled(const Rational& lambda) const;  // lambda > 0
    IntervalUnion negated() const;

    /// Minimal number of closed length-eps intervals covering the union,
    /// by a leftmost-point greedy sweep (optimal on the line).
    mpz_class min_cover_count(const Rational& eps) const;

    /// Closure of the set reduced modulo h into [0, h]; used by the
    /// grid-periodic measure bounds. Outward (closure) by construction.
    IntervalUnion mod_reduce(const Rational& h) const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    std::vector<Interval> parts_;
};

/// ambient minus u; requires u to be a subset of ambient (domain error otherwise).
/// measure(ambient) == measure(u) + measure(result).
IntervalUnion complement_in(const Interval& ambient, const IntervalUnion& u);

/// Exact u - v as a normalized union of all pairwise interval differences.
IntervalUnion minkowski_diff(const IntervalUnion& u, const IntervalUnion& v);

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);

}  // namespace cantor
