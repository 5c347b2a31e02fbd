#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace cantor {

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. All arithmetic is exact; there is no floating-point
/// fast path anywhere in the library.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
    Rational(long num, long den) : v_(num, den) { require_nonzero_den(); v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}
    explicit Rational(mpz_class num, mpz_class den) : v_(std::move(num), std::move(den)) {
        require_nonzero_den();
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { require_nonzero_den(); v_.canonicalize(); }

    /// mant * 2^exp2, exact for any sign of exp2.
    static Rational dyadic(const mpz_class& mant, long exp2);

    /// Parses "num/den" or "num"; throws std::invalid_argument on malformed input.
    static Rational from_string(const std::string& s);

    /// Canonical "num/den" form (den always printed, e.g. "3/4", "0/1", "-2/1").
    std::string to_string() const;

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_positive() const { return sgn(v_) > 0; }
    bool is_negative() const { return sgn(v_) < 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    mpz_class floor() const;
    mpz_class ceil() const;

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// x^e for integer e; e < 0 requires x != 0.
    Rational pow_int(long e) const;

    /// Approximation for diagnostics and plotting only; never used in certified paths.
    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    void require_nonzero_den() {
        if (sgn(v_.get_den()) == 0) throw std::domain_error("Rational: zero denominator");
    }

    mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// 10^e for integer e of either sign.
Rational pow10(long e);

/// 2^e for integer e of either sign.
Rational pow2(long e);

}  // namespace cantor
