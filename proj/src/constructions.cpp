#include "cantor/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace cantor {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fold_path(const RandomSeed& rs) {
    std::uint64_t h = splitmix(rs.seed);
    for (std::uint64_t c : rs.path) h = splitmix(h ^ splitmix(c));
    return h;
}

}  // namespace

RandomSeed RandomSeed::child(std::uint64_t component) const {
    RandomSeed out = *this;
    out.path.push_back(component);
    return out;
}

std::uint64_t RandomSeed::draw(std::uint64_t index) const {
    return splitmix(fold_path(*this) ^ splitmix(index));
}

Rational RandomSeed::dyadic_draw(std::uint64_t index, unsigned resolution) const {
    if (resolution < 1 || resolution > 64)
        throw std::invalid_argument("RandomSeed: resolution must be in [1, 64]");
    std::uint64_t bits = draw(index) >> (64 - resolution);
    return Rational::dyadic(mpz_class(bits), -static_cast<long>(resolution));
}

long SymbolicWord::abs_sum() const {
    long s = 0;
    for (long d : digits) s += std::labs(d);
    return s;
}

Interval chebyshev_cylinder(const SymbolicWord& word) {
    Rational lo(-1), hi(1);
    for (auto it = word.digits.rbegin(); it != word.digits.rend(); ++it) {
        long a = std::labs(*it);
        if (a < 2) throw std::invalid_argument("chebyshev_cylinder: digit magnitude must be >= 2");
        // Inverse branch phi(y) = 2^(1-a) + (y+1) 2^(-a), mirrored for m < 0.
        Rational base = pow2(1 - a);
        Rational scale = pow2(-a);
        Rational f_lo = base + (lo + Rational(1)) * scale;
        Rational f_hi = base + (hi + Rational(1)) * scale;
        if (*it > 0) {
            lo = f_lo;
            hi = f_hi;
        } else {
            lo = -f_hi;
            hi = -f_lo;
        }
    }
    return Interval::closed(lo, hi);
}

// ---------------------------------------------------------------------------
// middle_gap

Rational middle_gap_level_length(const Rational& s, int level) {
    Rational inv = Rational(1) / s;
    if (!inv.is_integer() || inv < Rational(2))
        throw std::domain_error("middle_gap: 1/s must be an integer >= 2");
    long sigma = inv.numerator().get_si();
    // 2^(-sigma n) / (1 - 2^(1-sigma)) = 2^(sigma-1-sigma n) / (2^(sigma-1) - 1)
    mpz_class den = mpz_class(1) << static_cast<unsigned long>(sigma - 1);
    den -= 1;
    return pow2(sigma - 1 - sigma * level) / Rational(den);
}

GapCantor middle_gap(const Rational& s, int levels) {
    if (levels < 0) throw std::invalid_argument("middle_gap: levels must be >= 0");
    auto lengths = std::make_shared<std::vector<Rational>>();  // [n-1] = gap length at level n
    auto comp_len = std::make_shared<std::vector<Rational>>(); // [n] = component length after level n
    comp_len->push_back(Rational(2));
    for (int n = 1; n <= levels; ++n) {
        Rational len = middle_gap_level_length(s, n);
        if (comp_len->back() <= len)
            throw std::domain_error("middle_gap: gap longer than its parent component");
        lengths->push_back(len);
        comp_len->push_back((comp_len->back() - len) / Rational(2));
    }

    GapCantor::Enumerator enumerate = [lengths, comp_len](int max_level,
                                                          const GapCantor::GapVisitor& visit) {
        int cap = std::min<int>(max_level, static_cast<int>(lengths->size()));
        for (int n = 1; n <= cap; ++n) {
            const Rational& parent = (*comp_len)[static_cast<std::size_t>(n - 1)];
            const Rational& len = (*lengths)[static_cast<std::size_t>(n - 1)];
            Rational lo_off = (parent - len) / Rational(2);
            Rational hi_off = (parent + len) / Rational(2);
            // Walk the 2^(n-1) level-(n-1) components left to right.
            std::function<bool(int, const Rational&)> rec = [&](int k, const Rational& left) {
                if (k == n - 1)
                    return visit(n, Interval::open(left + lo_off, left + hi_off));
                const Rational& c = (*comp_len)[static_cast<std::size_t>(k)];
                const Rational& g = (*lengths)[static_cast<std::size_t>(k)];
                if (!rec(k + 1, left)) return false;
                return rec(k + 1, left + (c + g) / Rational(2));
            };
            if (!rec(0, Rational(-1))) return;
        }
    };

    std::ostringstream meta;
    meta << "{\"name\":\"middle_gap\",\"s\":\"" << s << "\",\"levels\":" << levels << "}";
    GapCantor gc(Interval::closed(Rational(-1), Rational(1)), levels, true, meta.str(),
                 std::move(enumerate));
    gc.set_level_summary([lengths](int level) -> std::optional<GapCantor::LevelSummary> {
        if (level < 1 || level > static_cast<int>(lengths->size())) return std::nullopt;
        mpz_class count = mpz_class(1) << static_cast<unsigned long>(level - 1);
        return GapCantor::LevelSummary{count, (*lengths)[static_cast<std::size_t>(level - 1)]};
    });
    return gc;
}

// ---------------------------------------------------------------------------
// counterexample_kp

namespace {

void check_p_open_unit(const Rational& p, const char* who) {
    if (!p.is_positive() || Rational(1) <= p)
        throw std::domain_error(std::string(who) + ": need 0 < p < 1");
}

mpz_class pow10_z(long e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return z;
}

}  // namespace

long counterexample_j(const Rational& p, long i) {
    check_p_open_unit(p, "counterexample_j");
    mpz_class j = (Rational(i) / p).floor();
    if (!j.fits_slong_p()) throw std::overflow_error("counterexample_j: floor(i/p) overflow");
    return j.get_si();
}

Rational counterexample_removed_bound(const Rational& p, int n_start) {
    check_p_open_unit(p, "counterexample_removed_bound");
    if (n_start < 1) throw std::invalid_argument("counterexample_removed_bound: n_start >= 1");
    // e(i) = i - floor(i/p) satisfies e(i + a) = e(i) + a - b for p = a/b in
    // lowest terms, so the tail sum is one period times a geometric factor.
    long a = p.numerator().get_si();
    long b = p.denominator().get_si();
    Rational period_sum(0);
    for (long r = 0; r < a; ++r) {
        long i = n_start + r;
        period_sum += pow10(i - counterexample_j(p, i));
    }
    return period_sum / (Rational(1) - pow10(a - b));
}

int counterexample_n_start(const Rational& p, const Rational& threshold) {
    if (!threshold.is_positive())
        throw std::domain_error("counterexample_n_start: threshold must be positive");
    for (int n = 1; n <= 100000; ++n)
        if (counterexample_removed_bound(p, n) < threshold) return n;
    throw std::runtime_error("counterexample_n_start: no admissible n_start below 10^5");
}

GapCantor counterexample_kp(const Rational& p, int n_start, int i_max, std::size_t gap_cap) {
    check_p_open_unit(p, "counterexample_kp");
    if (n_start < 1) throw std::invalid_argument("counterexample_kp: n_start >= 1");
    int levels = i_max - n_start + 1;
    if (levels < 0) levels = 0;

    mpz_class total = 0;
    for (int i = n_start; i <= i_max; ++i) {
        if (i > 18) throw std::length_error("counterexample_kp: level exceeds enumerable range");
        total += pow10_z(i);
    }
    if (total > static_cast<unsigned long>(gap_cap))
        throw std::length_error("counterexample_kp: gap budget overflow");

    const Rational pc = p;
    const int n0 = n_start;
    GapCantor::Enumerator enumerate = [pc, n0](int max_level, const GapCantor::GapVisitor& visit) {
        for (int level = 1; level <= max_level; ++level) {
            long i = n0 + level - 1;
            Rational len = pow10(-counterexample_j(pc, i));
            Rational step = pow10(-i);
            unsigned long q_count = pow10_z(i).get_ui();
            Rational lo(0);
            for (unsigned long q = 0; q < q_count; ++q) {
                if (!visit(level, Interval::open(lo, lo + len))) return;
                lo += step;
            }
        }
    };

    std::ostringstream meta;
    meta << "{\"name\":\"counterexample_kp\",\"p\":\"" << p << "\",\"n_start\":" << n_start
         << ",\"i_max\":" << i_max << "}";
    GapCantor gc(Interval::closed(Rational(0), Rational(1)), levels, true, meta.str(),
                 std::move(enumerate));
    gc.set_level_summary([pc, n0](int level) -> std::optional<GapCantor::LevelSummary> {
        long i = n0 + level - 1;
        if (level < 1 || i > 18) return std::nullopt;
        return GapCantor::LevelSummary{pow10_z(i), pow10(-counterexample_j(pc, i))};
    });
    return gc;
}

// ---------------------------------------------------------------------------
// random_kp

GapCantor random_kp(const Rational& p, int i_lo, int i_hi, const RandomSeed& seed,
                    unsigned resolution, std::size_t gap_cap) {
    check_p_open_unit(p, "random_kp");
    if (i_lo < 1) throw std::invalid_argument("random_kp: i_lo >= 1");
    int levels = i_hi - i_lo + 1;
    if (levels < 0) levels = 0;

    mpz_class total = 0;
    for (int i = i_lo; i <= i_hi; ++i) {
        if (i > 18) throw std::length_error("random_kp: level exceeds enumerable range");
        total += pow10_z(i);
    }
    if (total > static_cast<unsigned long>(gap_cap))
        throw std::length_error("random_kp: gap budget overflow");

    const Rational pc = p;
    const RandomSeed sc = seed;
    GapCantor::Enumerator enumerate = [pc, sc, i_lo, resolution](int max_level,
                                                                 const GapCantor::GapVisitor& visit) {
        for (int level = 1; level <= max_level; ++level) {
            long i = i_lo + level - 1;
            Rational len = pow10(-counterexample_j(pc, i));
            Rational limit = Rational(1) - len;
            unsigned long q_count = pow10_z(i).get_ui();
            RandomSeed level_seed = sc.child(static_cast<std::uint64_t>(i));
            std::vector<Rational> positions;
            positions.reserve(q_count);
            for (unsigned long k = 0; k < q_count; ++k) {
                RandomSeed cell = level_seed.child(k);
                bool accepted = false;
                for (std::uint64_t attempt = 0; attempt < 64 && !accepted; ++attempt) {
                    Rational u = cell.dyadic_draw(attempt, resolution);
                    if (u <= limit) {
                        positions.push_back(u);
                        accepted = true;
                    }
                }
                if (!accepted) throw std::runtime_error("random_kp: rejection sampling stalled");
            }
            std::sort(positions.begin(), positions.end());
            for (const Rational& u : positions)
                if (!visit(level, Interval::open(u, u + len))) return;
        }
    };

    std::ostringstream meta;
    meta << "{\"name\":\"random_kp\",\"p\":\"" << p << "\",\"i_lo\":" << i_lo << ",\"i_hi\":" << i_hi
         << ",\"seed\":" << seed.seed << ",\"resolution\":" << resolution << "}";
    GapCantor gc(Interval::closed(Rational(0), Rational(1)), levels, true, meta.str(),
                 std::move(enumerate));
    gc.set_level_summary([pc, i_lo](int level) -> std::optional<GapCantor::LevelSummary> {
        long i = i_lo + level - 1;
        if (level < 1 || i > 18) return std::nullopt;
        return GapCantor::LevelSummary{pow10_z(i), pow10(-counterexample_j(pc, i))};
    });
    return gc;
}

// ---------------------------------------------------------------------------
// Pesin-type sets: shared BFS over admissible words

namespace {

struct PesinNode {
    std::int64_t center;  // cylinder center at scale 2^B
    std::int32_t sum;     // abs_sum of the word
    std::int32_t sum_big; // weight carried by digits above the k3 cap
};

struct PesinModel {
    int sum_budget;
    long big_cap;  // digits above this feed sum_big (k3); 0 disables tracking
    std::function<long(long sum, long sum_big)> threshold;
};

// Level-major walk (level = word length + 1), left-to-right within a level.
// gap_cb returns false to stop; unresolved_cb sees each out-of-budget child.
void pesin_walk(const PesinModel& model,
                const std::function<bool(int level, std::int64_t center, long sum, long thr)>& gap_cb,
                const std::function<void(long child_sum)>& unresolved_cb) {
    const int b_scale = model.sum_budget + 2;
    std::vector<PesinNode> cur{{0, 0, 0}};
    int level = 1;
    while (!cur.empty()) {
        std::sort(cur.begin(), cur.end(),
                  [](const PesinNode& a, const PesinNode& b) { return a.center < b.center; });
        for (const PesinNode& node : cur) {
            long thr = model.threshold(node.sum, node.sum_big);
            if (!gap_cb(level, node.center, node.sum, thr)) return;
        }
        std::vector<PesinNode> next;
        for (const PesinNode& node : cur) {
            long thr = model.threshold(node.sum, node.sum_big);
            for (long a = 2; a <= thr; ++a) {
                long child_sum = node.sum + a;
                if (child_sum > model.sum_budget) {
                    if (unresolved_cb) {
                        unresolved_cb(child_sum);
                        unresolved_cb(child_sum);
                    }
                    continue;
                }
                std::int64_t off = std::int64_t(3) << (b_scale - a - node.sum);
                std::int32_t sbig = node.sum_big;
                if (model.big_cap > 0 && a > model.big_cap)
                    sbig += static_cast<std::int32_t>(a);
                next.push_back({node.center + off, static_cast<std::int32_t>(child_sum), sbig});
                next.push_back({node.center - off, static_cast<std::int32_t>(child_sum), sbig});
            }
        }
        cur = std::move(next);
        ++level;
    }
}

GapCantor make_pesin_gapset(PesinModel model, std::string meta, int sum_budget) {
    auto shared = std::make_shared<PesinModel>(std::move(model));
    const int b_scale = sum_budget + 2;
    GapCantor::Enumerator enumerate = [shared, b_scale](int max_level,
                                                        const GapCantor::GapVisitor& visit) {
        pesin_walk(*shared,
                   [&](int level, std::int64_t center, long sum, long thr) {
                       if (level > max_level) return false;
                       Rational c = Rational::dyadic(mpz_class(center), -b_scale);
                       Rational radius = pow2(1 - thr - sum);
                       return visit(level, Interval::open(c - radius, c + radius));
                   },
                   nullptr);
    };
    int max_level = sum_budget / 2 + 1;  // digits weigh at least 2 each
    return GapCantor(Interval::closed(Rational(-1), Rational(1)), max_level, true, std::move(meta),
                     std::move(enumerate));
}

PesinEnumeration pesin_summary(const PesinModel& model) {
    PesinEnumeration out;
    std::map<long, std::size_t> by_sum;
    pesin_walk(model,
               [&](int, std::int64_t, long sum, long) {
                   ++out.gaps;
                   ++by_sum[sum];
                   return true;
               },
               [&](long child_sum) {
                   ++out.unresolved_cylinders;
                   out.unresolved_mass += pow2(1 - child_sum);
               });
    out.cylinders_by_sum.assign(by_sum.begin(), by_sum.end());
    return out;
}

void check_pesin_budget(int sum_budget, const char* who) {
    if (sum_budget > 26)
        throw std::length_error(std::string(who) + ": sum_budget above 26 is not enumerable");
}

PesinModel pesin_k2_model(const Rational& s, long n_cap, int sum_budget) {
    if (!s.is_positive()) throw std::domain_error("pesin_k2: s must be positive");
    if (n_cap < 2) throw std::invalid_argument("pesin_k2: N must be >= 2");
    check_pesin_budget(sum_budget, "pesin_k2");
    auto table = std::make_shared<std::vector<long>>();
    for (int S = 0; S <= std::max(sum_budget, 0); ++S) {
        mpz_class f = (s * Rational(S)).floor();
        long t = f.fits_slong_p() ? f.get_si() : n_cap;
        table->push_back(std::max(n_cap, t));
    }
    PesinModel m;
    m.sum_budget = sum_budget;
    m.big_cap = 0;
    m.threshold = [table](long sum, long) { return (*table)[static_cast<std::size_t>(sum)]; };
    return m;
}

PesinModel pesin_k3_model(long m_cap, const Rational& delta, int sum_budget) {
    if (m_cap < 3) throw std::invalid_argument("pesin_k3: M must be >= 3");
    if (!delta.is_positive() || Rational(1, 2) <= delta)
        throw std::domain_error("pesin_k3: delta must lie in (0, 1/2)");
    check_pesin_budget(sum_budget, "pesin_k3");
    long dn = delta.numerator().get_si();
    long dd = delta.denominator().get_si();
    PesinModel m;
    m.sum_budget = sum_budget;
    m.big_cap = m_cap;
    // Next digit a > M is admissible iff sum_big + a <= delta (sum + a),
    // i.e. a <= (delta sum - sum_big) / (1 - delta).
    m.threshold = [m_cap, dn, dd](long sum, long sum_big) {
        long num = dn * sum - sum_big * dd;
        long den = dd - dn;
        long t3 = num >= 0 ? num / den : -((-num + den - 1) / den);
        return std::max(m_cap, t3);
    };
    return m;
}

}  // namespace

GapCantor pesin_k2(const Rational& s, long n_cap, int sum_budget) {
    std::ostringstream meta;
    meta << "{\"name\":\"pesin_k2\",\"s\":\"" << s << "\",\"n\":" << n_cap
         << ",\"sum_budget\":" << sum_budget << (sum_budget < 0 ? ",\"empty\":true" : "") << "}";
    if (sum_budget < 0) {
        GapCantor::Enumerator none = [](int, const GapCantor::GapVisitor&) {};
        return GapCantor(Interval::closed(Rational(-1), Rational(1)), 0, true, meta.str(),
                         std::move(none));
    }
    return make_pesin_gapset(pesin_k2_model(s, n_cap, sum_budget), meta.str(), sum_budget);
}

PesinEnumeration pesin_k2_summary(const Rational& s, long n_cap, int sum_budget) {
    if (sum_budget < 0) return {};
    return pesin_summary(pesin_k2_model(s, n_cap, sum_budget));
}

GapCantor pesin_k3(long m_cap, const Rational& delta, int sum_budget) {
    std::ostringstream meta;
    meta << "{\"name\":\"pesin_k3\",\"m\":" << m_cap << ",\"delta\":\"" << delta
         << "\",\"sum_budget\":" << sum_budget << (sum_budget < 0 ? ",\"empty\":true" : "") << "}";
    if (sum_budget < 0) {
        GapCantor::Enumerator none = [](int, const GapCantor::GapVisitor&) {};
        return GapCantor(Interval::closed(Rational(-1), Rational(1)), 0, true, meta.str(),
                         std::move(none));
    }
    return make_pesin_gapset(pesin_k3_model(m_cap, delta, sum_budget), meta.str(), sum_budget);
}

PesinEnumeration pesin_k3_summary(long m_cap, const Rational& delta, int sum_budget) {
    if (sum_budget < 0) return {};
    return pesin_summary(pesin_k3_model(m_cap, delta, sum_budget));
}

// ---------------------------------------------------------------------------
// Diophantine gap set

GapCantor dio_gapset(int d, long q0, long q_max, const Interval& range, std::size_t gap_cap) {
    if (d < 3) throw std::invalid_argument("dio_gapset: d must be an integer >= 3");
    if (q0 < 2) throw std::invalid_argument("dio_gapset: q0 must be >= 2");
    int levels = static_cast<int>(q_max - q0 + 1);
    if (levels < 0) levels = 0;

    mpz_class total = 0;
    for (long q = q0; q <= q_max; ++q) {
        mpz_class hi = (range.hi * Rational(q)).floor();
        mpz_class lo = (range.lo * Rational(q)).ceil();
        if (hi >= lo) total += hi - lo + 1;
    }
    if (total > static_cast<unsigned long>(gap_cap))
        throw std::length_error("dio_gapset: gap budget overflow");

    const Interval rng = range;
    GapCantor::Enumerator enumerate = [rng, d, q0](int max_level, const GapCantor::GapVisitor& visit) {
        for (int level = 1; level <= max_level; ++level) {
            long q = q0 + level - 1;
            Rational radius = Rational(1) / Rational(q).pow_int(d);
            mpz_class p_lo = (rng.lo * Rational(q)).ceil();
            mpz_class p_hi = (rng.hi * Rational(q)).floor();
            for (mpz_class p = p_lo; p <= p_hi; ++p) {
                Rational center = Rational(p) / Rational(q);
                Rational lo = max(center - radius, rng.lo);
                Rational hi = min(center + radius, rng.hi);
                if (lo < hi && !visit(level, Interval::open(lo, hi))) return;
            }
        }
    };

    std::ostringstream meta;
    meta << "{\"name\":\"dio_gapset\",\"d\":" << d << ",\"q0\":" << q0 << ",\"q_max\":" << q_max
         << ",\"range\":[\"" << range.lo << "\",\"" << range.hi << "\"]}";
    return GapCantor(range, levels, true, meta.str(), std::move(enumerate));
}

Rational dio_lower_bound(const Rational& m_radius, const Rational& ck_upper, const RatBounds& s,
                         int d, long q0, unsigned precision) {
    if (d < 3) throw std::invalid_argument("dio_lower_bound: d must be >= 3");
    if (q0 < 2) throw std::invalid_argument("dio_lower_bound: q0 must be >= 2");
    if (!m_radius.is_positive()) throw std::domain_error("dio_lower_bound: M must be positive");
    if (ck_upper.is_negative()) throw std::domain_error("dio_lower_bound: C_K must be >= 0");
    // The bound is vacuous outside s < 1 - 2/d, where (1-s)d - 2 > 0.
    Rational exp_lo = (Rational(1) - s.hi) * Rational(d) - Rational(2);
    if (!exp_lo.is_positive())
        throw std::domain_error("dio_lower_bound: requires s < 1 - 2/d");
    Rational two_m = Rational(2) * m_radius;
    if (ck_upper.is_zero()) return two_m;
    Rational denom_lower = exp_lo * pow_lower(Rational(q0), exp_lo, precision);
    return two_m - Rational(16) * m_radius * ck_upper / denom_lower;
}

long dio_q0_for_threshold(const Rational& m_radius, const Rational& ck_upper, const RatBounds& s,
                          int d, const Rational& slack, long q_limit, unsigned precision) {
    Rational target = Rational(2) * m_radius - slack;
    for (long q0 = 2; q0 <= q_limit; ++q0)
        if (target < dio_lower_bound(m_radius, ck_upper, s, d, q0, precision)) return q0;
    return 0;
}

// ---------------------------------------------------------------------------
// Continued-fraction Cantor sets

std::vector<Interval> cf_cylinders(int k, int depth, std::size_t cap) {
    if (k < 1) throw std::invalid_argument("cf_cylinders: k must be >= 1");
    if (depth < 1) throw std::invalid_argument("cf_cylinders: depth must be >= 1");
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(k),
                  static_cast<unsigned long>(depth));
    if (total > static_cast<unsigned long>(cap))
        throw std::length_error("cf_cylinders: cylinder budget overflow");

    std::vector<Interval> out;
    // Convergent recursion p_n = a p_{n-1} + p_{n-2}; a word's cylinder is the
    // interval between [0; a_1..a_n] and [0; a_1..a_n + 1].
    std::function<void(int, const mpz_class&, const mpz_class&, const mpz_class&, const mpz_class&)>
        rec = [&](int level, const mpz_class& p_prev, const mpz_class& q_prev, const mpz_class& p_cur,
                  const mpz_class& q_cur) {
            if (level == depth) {
                Rational e0(p_cur, q_cur);
                Rational e1(p_cur + p_prev, q_cur + q_prev);
                out.push_back(Interval::closed(min(e0, e1), max(e0, e1)));
                return;
            }
            for (long a = 1; a <= k; ++a)
                rec(level + 1, p_cur, q_cur, mpz_class(a) * p_cur + p_prev,
                    mpz_class(a) * q_cur + q_prev);
        };
    rec(0, mpz_class(1), mpz_class(0), mpz_class(0), mpz_class(1));
    return out;
}

CoverApprox cf_cantor(int k, int depth, std::size_t cap) {
    return CoverApprox{depth, IntervalUnion::normalized(cf_cylinders(k, depth, cap))};
}

}  // namespace cantor
