#include "cantor/rounding.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace cantor {

namespace {

// Exact conversion: every finite MPFR value is mant * 2^exp, hence rational.
Rational mpfr_to_rational(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rational(0);
    if (!mpfr_number_p(x)) throw std::domain_error("rounding: non-finite MPFR value");
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    return Rational::dyadic(mant, static_cast<long>(e));
}

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_t& get() { return v_; }

private:
    mpfr_t v_;
};

// lo <= ln(x) <= hi with directed rounding at `prec` bits.
void log_dir(Mpfr& lo, Mpfr& hi, const Rational& x, mpfr_prec_t prec) {
    Mpfr t(prec);
    mpfr_set_q(t.get(), x.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo.get(), t.get(), MPFR_RNDD);
    mpfr_set_q(t.get(), x.raw().get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi.get(), t.get(), MPFR_RNDU);
}

// If x^(p/q) is rational (q >= 1, gcd(p,q)=1), return it.
std::optional<Rational> exact_pow(const Rational& x, const Rational& e) {
    if (e.is_zero()) return Rational(1);
    if (x == Rational(1)) return Rational(1);
    if (e.is_integer()) {
        if (!e.numerator().fits_slong_p()) return std::nullopt;
        return x.pow_int(e.numerator().get_si());
    }
    if (!e.numerator().fits_slong_p() || !e.denominator().fits_slong_p()) return std::nullopt;
    long p = e.numerator().get_si();
    unsigned long q = e.denominator().get_ui();
    Rational xp = x.pow_int(p);  // exact; num/den coprime
    mpz_class rn, rd;
    int num_exact = mpz_root(rn.get_mpz_t(), xp.numerator().get_mpz_t(), q);
    if (!num_exact) return std::nullopt;
    int den_exact = mpz_root(rd.get_mpz_t(), xp.denominator().get_mpz_t(), q);
    if (!den_exact) return std::nullopt;
    return Rational(rn, rd);
}

}  // namespace

RatBounds bounds_add(const RatBounds& a, const RatBounds& b) {
    return {a.lo + b.lo, a.hi + b.hi, a.exact && b.exact};
}

RatBounds bounds_mul_pos(const RatBounds& a, const RatBounds& b) {
    if (a.lo.is_negative() || b.lo.is_negative())
        throw std::domain_error("bounds_mul_pos: negative operand");
    return {a.lo * b.lo, a.hi * b.hi, a.exact && b.exact};
}

RatBounds bounds_div_pos(const RatBounds& a, const RatBounds& b) {
    if (a.lo.is_negative() || !b.lo.is_positive())
        throw std::domain_error("bounds_div_pos: operands out of range");
    return {a.lo / b.hi, a.hi / b.lo, a.exact && b.exact};
}

RatBounds bounds_scale(const RatBounds& a, const Rational& c) {
    if (c.is_negative()) return {a.hi * c, a.lo * c, a.exact};
    return {a.lo * c, a.hi * c, a.exact};
}

RatBounds pow_bounds(const Rational& x, const Rational& e, unsigned precision) {
    if (!x.is_positive()) throw std::domain_error("pow_bounds: base must be positive");
    if (auto v = exact_pow(x, e)) return RatBounds::point(*v);

    mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision) + 16;
    Mpfr llo(prec), lhi(prec);
    log_dir(llo, lhi, x, prec);

    // [m_lo, m_hi] encloses e * ln x.
    Mpfr mlo(prec), mhi(prec);
    if (!e.is_negative()) {
        mpfr_mul_q(mlo.get(), llo.get(), e.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(mhi.get(), lhi.get(), e.raw().get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(mlo.get(), lhi.get(), e.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(mhi.get(), llo.get(), e.raw().get_mpq_t(), MPFR_RNDU);
    }
    mpfr_exp(mlo.get(), mlo.get(), MPFR_RNDD);
    mpfr_exp(mhi.get(), mhi.get(), MPFR_RNDU);
    return {mpfr_to_rational(mlo.get()), mpfr_to_rational(mhi.get()), false};
}

Rational pow_lower(const Rational& x, const Rational& e, unsigned precision) {
    return pow_bounds(x, e, precision).lo;
}

Rational pow_upper(const Rational& x, const Rational& e, unsigned precision) {
    return pow_bounds(x, e, precision).hi;
}

RatBounds pow_bounds_exponent_range(const Rational& x, const Rational& e_lo, const Rational& e_hi,
                                    unsigned precision) {
    if (e_hi < e_lo) throw std::domain_error("pow_bounds_exponent_range: empty exponent range");
    // x^e is monotone in e with direction given by x vs 1.
    RatBounds at_lo = pow_bounds(x, e_lo, precision);
    if (e_lo == e_hi) return at_lo;
    RatBounds at_hi = pow_bounds(x, e_hi, precision);
    if (x >= Rational(1)) return {at_lo.lo, at_hi.hi, false};
    return {at_hi.lo, at_lo.hi, false};
}

RatBounds pow_directed(const Rational& x, const Rational& e, const DirectedRounding& dr) {
    if (dr.mode == RoundMode::exact) {
        if (!x.is_positive()) throw std::domain_error("pow_directed: base must be positive");
        auto v = exact_pow(x, e);
        if (!v) throw std::domain_error("pow_directed: irrational result in exact mode");
        return RatBounds::point(*v);
    }
    // outward and inward callers take the side matching their conservatism
    // direction; the enclosure itself is valid for both.
    return pow_bounds(x, e, dr.precision);
}

RatBounds log_ratio_bounds(const mpz_class& a, const mpz_class& b, unsigned precision) {
    if (a < 1 || b < 2) throw std::domain_error("log_ratio_bounds: need a >= 1, b >= 2");
    if (a == 1) return RatBounds::point(Rational(0));

    // Exact when a and b are powers of a common integer m: log a / log b = ka/kb.
    mpz_class m = b;
    unsigned long kb = 1;
    for (unsigned long k = mpz_sizeinbase(b.get_mpz_t(), 2); k >= 2; --k) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), b.get_mpz_t(), k)) {
            m = root;
            kb = k;
            break;
        }
    }
    mpz_class acc = m;
    unsigned long ka = 1;
    while (acc < a) {
        acc *= m;
        ++ka;
    }
    if (acc == a) return RatBounds::point(Rational(mpz_class(ka), mpz_class(kb)));

    mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision) + 16;
    Mpfr la_lo(prec), la_hi(prec), lb_lo(prec), lb_hi(prec), t(prec);
    log_dir(la_lo, la_hi, Rational(a), prec);
    log_dir(lb_lo, lb_hi, Rational(b), prec);
    mpfr_div(t.get(), la_lo.get(), lb_hi.get(), MPFR_RNDD);
    Rational lo = mpfr_to_rational(t.get());
    mpfr_div(t.get(), la_hi.get(), lb_lo.get(), MPFR_RNDU);
    return {lo, mpfr_to_rational(t.get()), false};
}

RatBounds log_bounds(const Rational& x, unsigned precision) {
    if (!x.is_positive()) throw std::domain_error("log_bounds: argument must be positive");
    if (x == Rational(1)) return RatBounds::point(Rational(0));
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision) + 16;
    Mpfr lo(prec), hi(prec);
    log_dir(lo, hi, x, prec);
    return {mpfr_to_rational(lo.get()), mpfr_to_rational(hi.get()), false};
}

RatBounds e_bounds(unsigned precision) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision) + 16;
    Mpfr lo(prec), hi(prec), one(prec);
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    mpfr_exp(lo.get(), one.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), one.get(), MPFR_RNDU);
    return {mpfr_to_rational(lo.get()), mpfr_to_rational(hi.get()), false};
}

}  // namespace cantor
