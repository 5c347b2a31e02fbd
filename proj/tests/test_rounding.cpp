#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/rounding.hpp"
#include "test_util.hpp"

using namespace cantor;
using cantor::testutil::R;

namespace {

// Exact check that base_a^expo_a <= base_b^expo_b for positive integers, by
// cross-powering with mpz. Independent of the MPFR path.
bool pow_le(unsigned long a, const mpz_class& ea, unsigned long b, const mpz_class& eb) {
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), a, ea.get_ui());
    mpz_ui_pow_ui(rhs.get_mpz_t(), b, eb.get_ui());
    return lhs <= rhs;
}

}  // namespace

TEST_CASE("pow_bounds exact cases") {
    CHECK(pow_bounds(R(4), R(1, 2)) == RatBounds::point(R(2)));
    CHECK(pow_bounds(R(8, 27), R(1, 3)) == RatBounds::point(R(2, 3)));
    CHECK(pow_bounds(R(2), R(-2)) == RatBounds::point(R(1, 4)));
    CHECK(pow_bounds(R(9, 4), R(-1, 2)) == RatBounds::point(R(2, 3)));
    CHECK(pow_bounds(R(7), R(0)) == RatBounds::point(R(1)));
    CHECK(pow_bounds(R(1), R(5, 7)) == RatBounds::point(R(1)));
    CHECK_THROWS_AS(pow_bounds(R(-2), R(1, 2)), std::domain_error);
    CHECK_THROWS_AS(pow_bounds(R(0), R(1, 2)), std::domain_error);
}

TEST_CASE("pow_bounds encloses sqrt(2) tightly") {
    RatBounds b = pow_bounds(R(2), R(1, 2), 64);
    CHECK_FALSE(b.exact);
    // lo^2 <= 2 <= hi^2 verifies the enclosure without any logs.
    CHECK(b.lo * b.lo <= R(2));
    CHECK(R(2) <= b.hi * b.hi);
    CHECK(b.width() <= R(1) / pow2(60));
}

TEST_CASE("pow_bounds respects direction for bases below one") {
    RatBounds b = pow_bounds(R(1, 2), R(3, 5), 64);
    CHECK(b.lo.is_positive());
    CHECK(b.hi < R(1));
    CHECK(b.lo.pow_int(5) <= R(1, 2).pow_int(3));
    CHECK(R(1, 2).pow_int(3) <= b.hi.pow_int(5));
}

TEST_CASE("pow_bounds_exponent_range brackets both endpoints") {
    // x < 1: x^e decreasing in e, so the range enclosure flips ends.
    RatBounds r = pow_bounds_exponent_range(R(1, 3), R(1, 4), R(3, 4), 64);
    RatBounds at_lo = pow_bounds(R(1, 3), R(1, 4), 64);
    RatBounds at_hi = pow_bounds(R(1, 3), R(3, 4), 64);
    CHECK(r.lo <= at_hi.lo);
    CHECK(at_lo.hi <= r.hi);

    RatBounds s = pow_bounds_exponent_range(R(3), R(1, 4), R(3, 4), 64);
    CHECK(s.lo <= pow_bounds(R(3), R(1, 4), 64).lo);
    CHECK(pow_bounds(R(3), R(3, 4), 64).hi <= s.hi);
}

TEST_CASE("log_ratio exact when arguments share a power base") {
    CHECK(log_ratio_bounds(2, 4) == RatBounds::point(R(1, 2)));
    CHECK(log_ratio_bounds(8, 4) == RatBounds::point(R(3, 2)));
    CHECK(log_ratio_bounds(4, 16) == RatBounds::point(R(1, 2)));
    CHECK(log_ratio_bounds(27, 9) == RatBounds::point(R(3, 2)));
    CHECK(log_ratio_bounds(1, 5) == RatBounds::point(R(0)));
    CHECK(log_ratio_bounds(2, 16) == RatBounds::point(R(1, 4)));
}

TEST_CASE("log2/log3 enclosure lands in the frozen window") {
    // Frozen window [6309/10000, 6310/10000] verified by exact cross-powers:
    // 3^6309 <= 2^10000 <= 3^6310.
    REQUIRE(pow_le(3, 6309, 2, 10000));
    REQUIRE(pow_le(2, 10000, 3, 6310));
    RatBounds d = log_ratio_bounds(2, 3, 64);
    CHECK(R(6309, 10000) <= d.lo);
    CHECK(d.hi <= R(6310, 10000));
}

TEST_CASE("log5/log10 enclosure lands in the frozen window") {
    // 10^6989 <= 5^10000 <= 10^6990 freezes [0.6989, 0.6990].
    REQUIRE(pow_le(10, 6989, 5, 10000));
    REQUIRE(pow_le(5, 10000, 10, 6990));
    RatBounds d = log_ratio_bounds(5, 10, 64);
    CHECK(R(6989, 10000) <= d.lo);
    CHECK(d.hi <= R(6990, 10000));
}

TEST_CASE("e enclosure") {
    RatBounds e = e_bounds(64);
    CHECK(R(271828, 100000) < e.lo);
    CHECK(e.hi < R(271829, 100000));
}

TEST_CASE("log_bounds signs") {
    CHECK(log_bounds(R(1)) == RatBounds::point(R(0)));
    CHECK(log_bounds(R(1, 2)).hi.is_negative());
    CHECK(log_bounds(R(3)).lo.is_positive());
}

TEST_CASE("pow_directed exact mode rejects irrational results") {
    DirectedRounding exact{RoundMode::exact, 64};
    CHECK(pow_directed(R(4), R(1, 2), exact) == RatBounds::point(R(2)));
    CHECK_THROWS_AS(pow_directed(R(2), R(1, 2), exact), std::domain_error);
    DirectedRounding outward{RoundMode::outward, 64};
    CHECK(pow_directed(R(2), R(1, 2), outward).contains(pow_bounds(R(2), R(1, 2)).lo));
}

TEST_CASE("grouping inequality: sum of p-powers dominates p-power of sum") {
    // For positive l_i and 0 < p < 1: sum l_i^p >= (sum l_i)^p. Certified via
    // lower-rounded terms against the upper-rounded right side.
    cantor::testutil::RatGen gen(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        int n = static_cast<int>(gen.integer(2, 6));
        Rational p(gen.integer(1, 9), 10);
        Rational total(0), lhs_lower(0);
        for (int i = 0; i < n; ++i) {
            Rational l(gen.integer(1, 400), 100);
            total += l;
            lhs_lower += pow_lower(l, p, 96);
        }
        CHECK(pow_upper(total, p, 96) <= lhs_lower);
    }
}

TEST_CASE("bounds arithmetic") {
    RatBounds a{R(1, 2), R(2, 3), false};
    RatBounds b{R(1, 3), R(1, 2), false};
    CHECK(bounds_add(a, b).lo == R(5, 6));
    CHECK(bounds_mul_pos(a, b).hi == R(1, 3));
    CHECK(bounds_div_pos(a, b).lo == R(1));
    CHECK(bounds_scale(a, R(-2)).lo == R(-4, 3));
}
