#include "cantor/combinatorics.hpp"

#include <stdexcept>

namespace cantor {

SeqCountTable count_ck(int max_k) {
    if (max_k < 2) throw std::invalid_argument("count_ck: max_k must be >= 2");
    SeqCountTable t;
    t.max_k = max_k;
    t.counts.assign(static_cast<std::size_t>(max_k) + 1, mpz_class(0));
    t.counts[0] = 1;  // empty sequence
    for (int m = 2; m <= max_k; ++m) {
        mpz_class acc = 0;
        for (int i = 2; i <= m; ++i) acc += t.counts[static_cast<std::size_t>(m - i)];
        t.counts[static_cast<std::size_t>(m)] = 2 * acc;
    }
    return t;
}

void enumerate_signed_sequences(long target_sum,
                                const std::function<void(const std::vector<long>&)>& f) {
    if (target_sum < 0) throw std::invalid_argument("enumerate_signed_sequences: negative sum");
    std::vector<long> word;
    std::function<void(long)> rec = [&](long remaining) {
        if (remaining == 0) {
            f(word);
            return;
        }
        for (long a = 2; a <= remaining; ++a) {
            for (long sign : {+1L, -1L}) {
                word.push_back(sign * a);
                rec(remaining - a);
                word.pop_back();
            }
        }
    };
    rec(target_sum);
}

mpz_class count_ck_enumerated(long k) {
    mpz_class n = 0;
    enumerate_signed_sequences(k, [&](const std::vector<long>&) { ++n; });
    return n;
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

EnsembleCard card_E(long n_sum, long m_cap, const Rational& delta, unsigned precision) {
    if (n_sum < 0 || n_sum > 24)
        throw std::length_error("card_E: N outside the enumeration cap");
    if (m_cap < 1) throw std::invalid_argument("card_E: M must be >= 1");
    if (!delta.is_positive() || Rational(1) <= delta)
        throw std::domain_error("card_E: delta must lie in (0, 1)");

    EnsembleCard out;
    out.n_sum = n_sum;
    out.m_cap = m_cap;
    out.delta = delta;
    out.card = 0;

    const mpz_class r_min_z = (delta * Rational(n_sum)).floor() + 1;
    const long r_min = r_min_z.get_si();
    enumerate_signed_sequences(n_sum, [&](const std::vector<long>& word) {
        long r = 0, t = 0;
        for (long d : word) {
            long a = d < 0 ? -d : d;
            if (a > m_cap) {
                r += a;
                ++t;
            }
        }
        if (r >= r_min) {
            ++out.by_r_n_t[{r, static_cast<long>(word.size()), t}];
            ++out.card;
        }
    });

    // N^3 2^(N(1-delta)) (e^2 M^2 / delta)^((delta N + 1)/M), lower-rounded so
    // that card <= bound_lower certifies the lemma instance.
    Rational n3 = Rational(n_sum).pow_int(3);
    Rational pow2_lower = pow_lower(Rational(2), Rational(n_sum) * (Rational(1) - delta), precision);
    Rational e_lo = e_bounds(precision).lo;
    Rational base_lo = e_lo * e_lo * Rational(m_cap * m_cap) / delta;
    Rational expo = (delta * Rational(n_sum) + Rational(1)) / Rational(m_cap);
    out.bound_lower = n3 * pow2_lower * pow_lower(base_lo, expo, precision);
    out.bound_holds = Rational(out.card) <= out.bound_lower;
    return out;
}

bool binom_bound_check(long n, long t, long n_sum, long r_sum, long m_cap, unsigned precision) {
    if (t < 0 || n < t) throw std::invalid_argument("binom_bound_check: need 0 <= t <= n");
    if (m_cap < 1 || r_sum < 1) throw std::invalid_argument("binom_bound_check: need M, R >= 1");
    if (m_cap * t > r_sum || r_sum > n_sum || 2 * n > n_sum)
        throw std::invalid_argument("binom_bound_check: hypotheses t <= R/M, R <= N, 2n <= N");

    Rational lhs(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(t)));
    Rational base_lo =
        e_bounds(precision).lo * Rational(n_sum) * Rational(m_cap) / Rational(2 * r_sum);
    Rational rhs_lower = pow_lower(base_lo, Rational(r_sum, m_cap), precision);
    return lhs <= rhs_lower;
}

bool composition_count_check(long r_sum, long t, long m_cap, unsigned precision) {
    if (m_cap < 2 || r_sum < 1) throw std::invalid_argument("composition_count_check: M >= 2, R >= 1");
    if (t < 0 || m_cap * t > r_sum)
        throw std::invalid_argument("composition_count_check: need 0 <= t <= R/M");

    const unsigned long r = static_cast<unsigned long>(r_sum);
    mpz_class lhs = binomial(r, static_cast<unsigned long>(t));
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(t));
    mpz_class mid = binomial(r, static_cast<unsigned long>(r_sum / m_cap));
    mpz_mul_2exp(mid.get_mpz_t(), mid.get_mpz_t(), static_cast<unsigned long>(t));
    if (lhs > mid) return false;

    Rational base_lo = Rational(2) * e_bounds(precision).lo * Rational(m_cap);
    Rational rhs_lower = pow_lower(base_lo, Rational(r_sum, m_cap), precision);
    return Rational(mid) <= rhs_lower;
}

}  // namespace cantor
