#include "cantor/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

namespace {

// Orders lower boundaries: at equal position a closed bound reaches further left.
bool lo_boundary_less(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
}

// Compares upper boundaries as reach: (v, open) ends before (v, closed).
int cmp_hi_boundary(const Interval& a, const Interval& b) {
    if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
    if (a.hi_closed == b.hi_closed) return 0;
    return a.hi_closed ? 1 : -1;
}

}  // namespace

Interval::Interval(Rational lo_, Rational hi_, bool lo_closed_, bool hi_closed_)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_closed(lo_closed_), hi_closed(hi_closed_) {
    if (hi < lo || (lo == hi && !(lo_closed && hi_closed)))
        throw std::invalid_argument("Interval: empty or inverted");
}

bool Interval::contains(const Rational& x) const {
    if (x < lo || hi < x) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
}

bool Interval::contains(const Interval& other) const {
    bool lo_ok = lo < other.lo || (lo == other.lo && (lo_closed || !other.lo_closed));
    bool hi_ok = other.hi < hi || (other.hi == hi && (hi_closed || !other.hi_closed));
    return lo_ok && hi_ok;
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
    Rational l;
    bool lc;
    if (lo != other.lo) {
        const bool mine = lo > other.lo;
        l = mine ? lo : other.lo;
        lc = mine ? lo_closed : other.lo_closed;
    } else {
        l = lo;
        lc = lo_closed && other.lo_closed;
    }
    Rational h;
    bool hc;
    if (hi != other.hi) {
        const bool mine = hi < other.hi;
        h = mine ? hi : other.hi;
        hc = mine ? hi_closed : other.hi_closed;
    } else {
        h = hi;
        hc = hi_closed && other.hi_closed;
    }
    if (h < l || (l == h && !(lc && hc))) return std::nullopt;
    return Interval(l, h, lc, hc);
}

Interval Interval::scaled(const Rational& lambda) const {
    if (!lambda.is_positive()) throw std::domain_error("Interval::scaled: lambda must be positive");
    return {lo * lambda, hi * lambda, lo_closed, hi_closed};
}

Interval interval_difference(const Interval& a, const Interval& b) {
    return {a.lo - b.hi, a.hi - b.lo, a.lo_closed && b.hi_closed, a.hi_closed && b.lo_closed};
}

IntervalUnion IntervalUnion::normalized(std::vector<Interval> parts) {
    if (parts.empty()) return {};
    std::sort(parts.begin(), parts.end(), lo_boundary_less);

    IntervalUnion out;
    out.parts_.reserve(parts.size());
    Interval cur = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const Interval& p = parts[i];
        bool merges = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
        if (merges) {
            if (cur.hi < p.hi) {
                cur.hi = p.hi;
                cur.hi_closed = p.hi_closed;
            } else if (cur.hi == p.hi) {
                cur.hi_closed = cur.hi_closed || p.hi_closed;
            }
        } else {
            out.parts_.push_back(std::move(cur));
            cur = p;
        }
    }
    out.parts_.push_back(std::move(cur));
    return out;
}

std::optional<Interval> IntervalUnion::hull() const {
    if (parts_.empty()) return std::nullopt;
    return Interval(parts_.front().lo, parts_.back().hi, parts_.front().lo_closed,
                    parts_.back().hi_closed);
}

Rational IntervalUnion::measure() const {
    Rational m(0);
    for (const Interval& p : parts_) m += p.length();
    return m;
}

bool IntervalUnion::contains(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const Interval& p) { return v < p.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(x);
}

bool IntervalUnion::contains_set(const IntervalUnion& other) const {
    // Both unions are normalized, so parts of `other` cannot straddle a gap of
    // *this: each must fit inside the single part reaching its left endpoint.
    std::size_t i = 0;
    for (const Interval& q : other.parts_) {
        while (i < parts_.size() &&
               (parts_[i].hi < q.lo || (parts_[i].hi == q.lo && !parts_[i].hi_closed)))
            ++i;
        if (i == parts_.size() || !parts_[i].contains(q)) return false;
    }
    return true;
}

IntervalUnion IntervalUnion::translated(const Rational& t) const {
    IntervalUnion out;
    out.parts_.reserve(parts_.size());
    for (const Interval& p : parts_) out.parts_.push_back(p.translated(t));
    return out;
}

IntervalUnion IntervalUnion::scaled(const Rational& lambda) const {
    IntervalUnion out;
    out.parts_.reserve(parts_.size());
    for (const Interval& p : parts_) out.parts_.push_back(p.scaled(lambda));
    return out;
}

IntervalUnion IntervalUnion::negated() const {
    IntervalUnion out;
    out.parts_.reserve(parts_.size());
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) out.parts_.push_back(it->negated());
    return out;
}

mpz_class IntervalUnion::min_cover_count(const Rational& eps) const {
    if (!eps.is_positive()) throw std::domain_error("min_cover_count: eps must be positive");
    mpz_class count = 0;
    bool have_cov = false;
    Rational cov_end;  // points <= cov_end are covered
    for (const Interval& p : parts_) {
        if (have_cov && p.hi <= cov_end) continue;
        Rational start = (have_cov && p.lo <= cov_end) ? cov_end : p.lo;
        Rational span = p.hi - start;
        mpz_class k = span.is_zero() ? mpz_class(1) : (span / eps).ceil();
        if (k == 0) k = 1;
        count += k;
        cov_end = start + eps * Rational(k);
        have_cov = true;
    }
    return count;
}

IntervalUnion IntervalUnion::mod_reduce(const Rational& h) const {
    if (!h.is_positive()) throw std::domain_error("mod_reduce: h must be positive");
    std::vector<Interval> out;
    for (const Interval& p : parts_) {
        if (p.length() >= h) {
            out.push_back(Interval::closed(Rational(0), h));
            continue;
        }
        Rational r = p.lo - h * Rational(Rational(p.lo / h).floor());
        Rational end = r + p.length();
        if (end <= h) {
            out.push_back(Interval::closed(r, end));
        } else {
            out.push_back(Interval::closed(r, h));
            out.push_back(Interval::closed(Rational(0), end - h));
        }
    }
    return normalized(std::move(out));
}

IntervalUnion complement_in(const Interval& ambient, const IntervalUnion& u) {
    for (const Interval& p : u.parts())
        if (!ambient.contains(p))
            throw std::domain_error("complement_in: union not contained in ambient");

    std::vector<Interval> out;
    Rational pos = ambient.lo;
    bool pos_closed = ambient.lo_closed;
    auto emit = [&out](Rational lo, Rational hi, bool lc, bool hc) {
        if (lo < hi || (lo == hi && lc && hc)) out.emplace_back(std::move(lo), std::move(hi), lc, hc);
    };
    for (const Interval& p : u.parts()) {
        emit(pos, p.lo, pos_closed, !p.lo_closed);
        pos = p.hi;
        pos_closed = !p.hi_closed;
    }
    emit(pos, ambient.hi, pos_closed, ambient.hi_closed);
    return IntervalUnion::normalized(std::move(out));
}

IntervalUnion minkowski_diff(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<Interval> out;
    out.reserve(u.size() * v.size());
    for (const Interval& a : u.parts())
        for (const Interval& b : v.parts()) out.push_back(interval_difference(a, b));
    return IntervalUnion::normalized(std::move(out));
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> parts = a.parts();
    parts.insert(parts.end(), b.parts().begin(), b.parts().end());
    return IntervalUnion::normalized(std::move(parts));
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Interval& x = a.parts()[i];
        const Interval& y = b.parts()[j];
        if (auto common = x.intersect(y)) out.push_back(*common);
        int c = cmp_hi_boundary(x, y);
        if (c <= 0) ++i;
        if (c >= 0) ++j;
    }
    return IntervalUnion::normalized(std::move(out));
}

}  // namespace cantor
