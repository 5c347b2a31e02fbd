#pragma once

#include <optional>

#include "cantor/rational.hpp"

namespace cantor {

/// Certified enclosure of a real value: lo <= v <= hi, both exact rationals
/// (dyadic when they come out of the MPFR path). `exact` marks lo == hi == v.
struct RatBounds {
    Rational lo;
    Rational hi;
    bool exact = false;

    static RatBounds point(Rational v) { return {v, v, true}; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    Rational width() const { return hi - lo; }

    friend bool operator==(const RatBounds&, const RatBounds&) = default;
};

/// Exact interval arithmetic on enclosures (no rounding: rationals stay rationals).
RatBounds bounds_add(const RatBounds& a, const RatBounds& b);
RatBounds bounds_mul_pos(const RatBounds& a, const RatBounds& b);  // requires a.lo, b.lo >= 0
RatBounds bounds_div_pos(const RatBounds& a, const RatBounds& b);  // requires a.lo >= 0, b.lo > 0
RatBounds bounds_scale(const RatBounds& a, const Rational& c);     // c of any sign

/// Rounding policy for operations that would leave the rationals.
/// - exact: the result must be exactly rational or the operation throws.
/// - outward: bounds may only weaken (enclosures returned in full width).
/// - inward: computed sets may only shrink.
/// `precision` is the number of significand bits carried through MPFR.
enum class RoundMode { exact, outward, inward };

struct DirectedRounding {
    RoundMode mode = RoundMode::outward;
    unsigned precision = 64;
};

/// Certified enclosure of x^e for rational x > 0 and rational e.
/// Returns an exact point when x^e is rational (integer e, or perfect-root case).
RatBounds pow_bounds(const Rational& x, const Rational& e, unsigned precision = 64);

/// Single-sided helpers for the common "subtract an upper bound" pattern.
Rational pow_lower(const Rational& x, const Rational& e, unsigned precision = 64);
Rational pow_upper(const Rational& x, const Rational& e, unsigned precision = 64);

/// Enclosure of x^e over e ranging in [e_lo, e_hi]; x > 0.
RatBounds pow_bounds_exponent_range(const Rational& x, const Rational& e_lo, const Rational& e_hi,
                                    unsigned precision = 64);

/// Policy-checked power: exact mode throws std::domain_error when x^e is irrational.
RatBounds pow_directed(const Rational& x, const Rational& e, const DirectedRounding& dr);

/// Enclosure of log(a)/log(b) for integers a >= 1, b >= 2. Exact when a and b
/// are powers of a common integer (so the ratio is rational).
RatBounds log_ratio_bounds(const mpz_class& a, const mpz_class& b, unsigned precision = 64);

/// Enclosure of ln x for rational x > 0.
RatBounds log_bounds(const Rational& x, unsigned precision = 64);

/// Enclosure of Euler's number e.
RatBounds e_bounds(unsigned precision = 64);

}  // namespace cantor
