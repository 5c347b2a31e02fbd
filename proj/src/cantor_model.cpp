#include "cantor/cantor_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace cantor {

DigitCantorSpec::DigitCantorSpec(unsigned base, std::vector<unsigned> digits, Rational scale,
                                 Rational translate)
    : base_(base), digits_(std::move(digits)), scale_(std::move(scale)),
      translate_(std::move(translate)) {
    if (base_ < 2) throw std::invalid_argument("DigitCantorSpec: base must be >= 2");
    if (digits_.empty()) throw std::invalid_argument("DigitCantorSpec: empty digit set");
    std::sort(digits_.begin(), digits_.end());
    digits_.erase(std::unique(digits_.begin(), digits_.end()), digits_.end());
    if (digits_.back() >= base_)
        throw std::invalid_argument("DigitCantorSpec: digit out of range");
    if (digits_.size() >= base_)
        throw std::invalid_argument("DigitCantorSpec: digit set must be a strict subset");
    if (!scale_.is_positive()) throw std::domain_error("DigitCantorSpec: scale must be positive");
}

Rational DigitCantorSpec::digit_span() const {
    return Rational(long(digits_.back()) - long(digits_.front()), long(base_) - 1);
}

Interval DigitCantorSpec::hull() const {
    Rational denom(long(base_) - 1);
    Rational lo = translate_ + scale_ * Rational(long(digits_.front())) / denom;
    Rational hi = translate_ + scale_ * Rational(long(digits_.back())) / denom;
    return Interval::closed(lo, hi);
}

DigitCantorSpec DigitCantorSpec::scaled(const Rational& lambda) const {
    if (!lambda.is_positive()) throw std::domain_error("DigitCantorSpec::scaled: lambda <= 0");
    return DigitCantorSpec(base_, digits_, scale_ * lambda, translate_ * lambda);
}

DigitCantorSpec DigitCantorSpec::translated_by(const Rational& t) const {
    return DigitCantorSpec(base_, digits_, scale_, translate_ + t);
}

namespace {

void check_part_budget(const DigitCantorSpec& spec, int n, std::size_t part_budget) {
    if (n < 0) throw std::invalid_argument("cover depth must be >= 0");
    mpz_class parts;
    mpz_ui_pow_ui(parts.get_mpz_t(), spec.digits().size(), static_cast<unsigned long>(n));
    if (parts > static_cast<unsigned long>(part_budget))
        throw std::length_error("cover_at_depth: part budget exceeded");
}

// Enumerates prefix integers P = sum d_i b^{n-i} in increasing order and
// calls f(P) for each of the |J|^n digit prefixes.
void for_each_prefix(const DigitCantorSpec& spec, int n,
                     const std::function<void(const mpz_class&)>& f) {
    std::vector<mpz_class> pow_b(static_cast<std::size_t>(n) + 1);
    pow_b[0] = 1;
    for (int i = 1; i <= n; ++i) pow_b[static_cast<std::size_t>(i)] = pow_b[i - 1] * spec.base();

    std::function<void(int, const mpz_class&)> rec = [&](int level, const mpz_class& acc) {
        if (level == n) {
            f(acc);
            return;
        }
        for (unsigned d : spec.digits())
            rec(level + 1, acc + mpz_class(d) * pow_b[static_cast<std::size_t>(n - 1 - level)]);
    };
    rec(0, mpz_class(0));
}

}  // namespace

CoverApprox cover_at_depth(const DigitCantorSpec& spec, int n, std::size_t part_budget) {
    check_part_budget(spec, n, part_budget);

    mpz_class bn;
    mpz_ui_pow_ui(bn.get_mpz_t(), spec.base(), static_cast<unsigned long>(n));
    const Rational cell(mpz_class(1), bn);  // b^{-n}
    Rational denom(long(spec.base()) - 1);
    Rational tail_lo = Rational(long(spec.digits().front())) / denom;
    Rational tail_hi = Rational(long(spec.digits().back())) / denom;

    std::vector<Interval> parts;
    for_each_prefix(spec, n, [&](const mpz_class& prefix) {
        Rational p(prefix);
        Rational lo = spec.translate() + spec.scale() * (p + tail_lo) * cell;
        Rational hi = spec.translate() + spec.scale() * (p + tail_hi) * cell;
        parts.push_back(Interval::closed(lo, hi));
    });
    return CoverApprox{n, IntervalUnion::normalized(std::move(parts))};
}

IntervalUnion cover_endpoints(const DigitCantorSpec& spec, int n, std::size_t part_budget) {
    CoverApprox c = cover_at_depth(spec, n, part_budget);
    std::vector<Interval> pts;
    pts.reserve(2 * c.cover.size());
    for (const Interval& p : c.cover.parts()) {
        pts.push_back(Interval::point(p.lo));
        pts.push_back(Interval::point(p.hi));
    }
    return IntervalUnion::normalized(std::move(pts));
}

DimensionEnclosure dimension(const DigitCantorSpec& spec, unsigned precision) {
    DimensionEnclosure out;
    if (spec.degenerate()) {
        out.lo = out.hi = Rational(0);
        out.exact = Rational(0);
        out.degenerate = true;
        return out;
    }
    RatBounds b = log_ratio_bounds(mpz_class(static_cast<unsigned long>(spec.digits().size())),
                                   mpz_class(spec.base()), precision);
    out.lo = b.lo;
    out.hi = b.hi;
    if (b.exact) out.exact = b.lo;
    return out;
}

FuzzyMeasureCert ck_upper_bound(const DigitCantorSpec& spec, int depth, int substeps,
                                unsigned precision) {
    if (spec.degenerate())
        throw std::domain_error("ck_upper_bound: degenerate single-digit spec has no certificate");
    if (depth < 1 || substeps < 1) throw std::invalid_argument("ck_upper_bound: bad parameters");

    FuzzyMeasureCert cert;
    cert.dim = dimension(spec, precision);
    const Rational diam = spec.diameter();
    const IntervalUnion cover = cover_at_depth(spec, depth).cover;

    auto pow_d = [&](const Rational& x) {
        return pow_bounds_exponent_range(x, cert.dim.lo, cert.dim.hi, precision);
    };

    // Construction scales eps_k = diam * b^{-k}.
    bool first = true;
    Rational b_inv(1, long(spec.base()));
    Rational eps = diam;
    for (int k = 0; k <= depth; ++k) {
        cert.scales_examined.push_back(eps);
        Rational n_eps(cover.min_cover_count(eps));
        RatBounds f = bounds_scale(pow_d(eps), n_eps);
        if (first || f.lo < cert.ck_lower) cert.ck_lower = f.lo;
        if (first || cert.ck_upper < f.hi) cert.ck_upper = f.hi;
        first = false;
        eps *= b_inv;
    }

    // One-period sweep over [diam/b, diam]: for eps in [g_t, g_{t+1}],
    // N(eps) <= N(g_t) and eps^d <= max over the enclosure at g_{t+1}.
    Rational lo_end = diam * b_inv;
    Rational step = (diam - lo_end) / Rational(substeps);
    for (int t = 0; t < substeps; ++t) {
        Rational g = lo_end + step * Rational(t);
        Rational g_next = (t + 1 == substeps) ? diam : lo_end + step * Rational(t + 1);
        Rational block = Rational(cover.min_cover_count(g)) * pow_d(g_next).hi;
        if (cert.ck_upper < block) cert.ck_upper = block;
    }
    return cert;
}

FuzzyMeasureCert scale_cert(const FuzzyMeasureCert& cert, const Rational& lambda,
                            unsigned precision) {
    if (!lambda.is_positive()) throw std::domain_error("scale_cert: lambda must be positive");
    RatBounds lp = pow_bounds_exponent_range(lambda, cert.dim.lo, cert.dim.hi, precision);
    FuzzyMeasureCert out;
    out.dim = cert.dim;
    out.ck_lower = cert.ck_lower * lp.lo;
    out.ck_upper = cert.ck_upper * lp.hi;
    out.scales_examined.reserve(cert.scales_examined.size());
    for (const Rational& s : cert.scales_examined) out.scales_examined.push_back(s * lambda);
    return out;
}

double box_dimension_regression(const IntervalUnion& cover, const Rational& eps0,
                                const Rational& ratio, int steps) {
    if (steps < 2) throw std::invalid_argument("box_dimension_regression: need >= 2 scales");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    Rational eps = eps0;
    for (int t = 0; t < steps; ++t) {
        double x = -std::log(eps.to_double());
        double y = std::log(cover.min_cover_count(eps).get_d());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        eps *= ratio;
    }
    double n = steps;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GapCantor::GapCantor(Interval ambient, int max_level, bool truncated, std::string meta,
                     Enumerator e)
    : ambient_(std::move(ambient)), max_level_(max_level), truncated_(truncated),
      meta_(std::move(meta)), enumerate_(std::move(e)) {}

GapCantor GapCantor::from_gap_list(Interval ambient, std::vector<Interval> gaps, std::string meta,
                                   bool truncated) {
    for (const Interval& g : gaps) {
        if (g.lo_closed || g.hi_closed)
            throw std::invalid_argument("GapCantor: gaps must be open intervals");
        if (g.lo < ambient.lo || ambient.hi < g.hi)
            throw std::domain_error("GapCantor: gap outside ambient interval");
    }
    auto shared = std::make_shared<std::vector<Interval>>(std::move(gaps));
    Enumerator e = [shared](int max_level, const GapVisitor& visit) {
        if (max_level < 1) return;
        for (const Interval& g : *shared)
            if (!visit(1, g)) return;
    };
    return GapCantor(std::move(ambient), 1, truncated, std::move(meta), std::move(e));
}

GapCantor::EnumerationInfo GapCantor::for_each_gap(const GapBudget& budget,
                                                   const GapVisitor& visit) const {
    EnumerationInfo info;
    int level_cap = max_level_;
    bool level_limited = false;
    if (budget.max_level) {
        if (*budget.max_level < level_cap) {
            level_cap = *budget.max_level;
            level_limited = true;
        }
    }
    std::size_t count_cap = budget.max_count.value_or(SIZE_MAX);
    bool stopped = false;
    bool filtered = false;
    enumerate_(level_cap, [&](int level, const Interval& gap) {
        if (budget.min_length && gap.length() < *budget.min_length) {
            filtered = true;
            return true;
        }
        if (info.emitted >= count_cap) {
            stopped = true;
            return false;
        }
        if (!visit(level, gap)) {
            stopped = true;
            return false;
        }
        ++info.emitted;
        return true;
    });
    info.complete = !truncated_ && !level_limited && !stopped && !filtered;
    return info;
}

std::vector<Interval> GapCantor::gaps_up_to(const GapBudget& budget) const {
    std::vector<Interval> out;
    for_each_gap(budget, [&](int, const Interval& g) {
        out.push_back(g);
        return true;
    });
    return out;
}

IntervalUnion GapCantor::normalized_gaps(const GapBudget& budget) const {
    return IntervalUnion::normalized(gaps_up_to(budget));
}

IntervalUnion GapCantor::set_approximation(const GapBudget& budget) const {
    return complement_in(ambient_, normalized_gaps(budget));
}

Rational GapCantor::raw_gap_length_sum(const GapBudget& budget) const {
    // Closed-form fast path: level summaries, no per-gap filtering in play.
    if (level_summary_ && !budget.min_length && !budget.max_count) {
        int cap = std::min(max_level_, budget.max_level.value_or(max_level_));
        Rational total(0);
        bool ok = true;
        for (int l = 1; l <= cap && ok; ++l) {
            if (auto s = level_summary_(l))
                total += Rational(s->count) * s->uniform_length;
            else
                ok = false;
        }
        if (ok) return total;
    }
    Rational total(0);
    for_each_gap(budget, [&](int, const Interval& g) {
        total += g.length();
        return true;
    });
    return total;
}

std::size_t GapCantor::gap_count(const GapBudget& budget) const {
    std::size_t n = 0;
    for_each_gap(budget, [&](int, const Interval&) {
        ++n;
        return true;
    });
    return n;
}

std::optional<GapCantor::LevelSummary> GapCantor::level_summary(int level) const {
    if (!level_summary_) return std::nullopt;
    return level_summary_(level);
}

GapCantor GapCantor::translated(const Rational& t) const {
    Enumerator inner = enumerate_;
    Enumerator e = [inner, t](int max_level, const GapVisitor& visit) {
        inner(max_level, [&](int level, const Interval& g) { return visit(level, g.translated(t)); });
    };
    GapCantor out(ambient_.translated(t), max_level_, truncated_, meta_, std::move(e));
    if (level_summary_) out.set_level_summary(level_summary_);
    return out;
}

}  // namespace cantor
