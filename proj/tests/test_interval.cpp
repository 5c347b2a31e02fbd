#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "cantor/interval.hpp"
#include "test_util.hpp"

using namespace cantor;
using cantor::testutil::R;
using cantor::testutil::U;

namespace {

// Membership of x in a raw (not necessarily normalized) part list.
bool raw_contains(const std::vector<Interval>& parts, const Rational& x) {
    for (const Interval& p : parts)
        if (p.contains(x)) return true;
    return false;
}

IntervalUnion middle_thirds_cover(int depth) {
    std::vector<Interval> parts{Interval::closed(R(0), R(1))};
    for (int n = 0; n < depth; ++n) {
        std::vector<Interval> next;
        for (const Interval& p : parts) {
            Rational third = p.length() / R(3);
            next.push_back(Interval::closed(p.lo, p.lo + third));
            next.push_back(Interval::closed(p.hi - third, p.hi));
        }
        parts = std::move(next);
    }
    return IntervalUnion::normalized(std::move(parts));
}

}  // namespace

TEST_CASE("interval validation") {
    CHECK_THROWS_AS(Interval(R(1), R(0), true, true), std::invalid_argument);
    CHECK_THROWS_AS(Interval(R(1), R(1), true, false), std::invalid_argument);
    CHECK(Interval::point(R(1)).is_point());
    CHECK(Interval::open(R(0), R(1)).length() == R(1));
}

TEST_CASE("normalize merges overlaps") {
    IntervalUnion u = U({Interval::closed(R(0), R(1, 2)), Interval::closed(R(1, 4), R(3, 4))});
    CHECK(u == U({Interval::closed(R(0), R(3, 4))}));
    CHECK(u.measure() == R(3, 4));
}

TEST_CASE("normalize of nothing") {
    IntervalUnion u = IntervalUnion::normalized({});
    CHECK(u.empty());
    CHECK(u.measure() == R(0));
}

TEST_CASE("normalize keeps an open-open touching point out") {
    std::vector<Interval> raw{Interval::open(R(1), R(2)), Interval::open(R(2), R(3))};
    IntervalUnion u = IntervalUnion::normalized(raw);
    REQUIRE(u.size() == 2);
    CHECK(u.measure() == R(2));
    CHECK_FALSE(u.contains(R(2)));

    // Point-sampling oracle on a 1/1000 grid over [1, 3].
    for (long k = 1000; k <= 3000; ++k) {
        Rational x(k, 1000);
        CHECK(u.contains(x) == raw_contains(raw, x));
    }

    // One closed side heals the puncture.
    IntervalUnion healed =
        U({Interval::open(R(1), R(2)), Interval(R(2), R(3), true, false)});
    CHECK(healed.size() == 1);
    CHECK(healed.contains(R(2)));

    // A lone point also heals it.
    IntervalUnion with_point =
        U({Interval::open(R(1), R(2)), Interval::point(R(2)), Interval::open(R(2), R(3))});
    CHECK(with_point.size() == 1);
}

TEST_CASE("normalize is idempotent on random collections") {
    cantor::testutil::RatGen gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        IntervalUnion u = gen.union_in(-3, 3, 12, 8);
        CHECK(IntervalUnion::normalized(u.parts()) == u);
    }
}

TEST_CASE("measure of simple unions") {
    CHECK(U({Interval::closed(R(0), R(3, 4))}).measure() == R(3, 4));
    IntervalUnion comp =
        complement_in(Interval::closed(R(0), R(7, 2)), U({Interval::open(R(1, 2), R(2))}));
    CHECK(comp.measure() == R(2));
}

TEST_CASE("complement in ambient") {
    IntervalUnion mid = complement_in(Interval::closed(R(0), R(1)),
                                      U({Interval::open(R(1, 3), R(2, 3))}));
    CHECK(mid == U({Interval::closed(R(0), R(1, 3)), Interval::closed(R(2, 3), R(1))}));

    CHECK(complement_in(Interval::closed(R(0), R(1)), IntervalUnion{}) ==
          U({Interval::closed(R(0), R(1))}));

    CHECK_THROWS_AS(complement_in(Interval::closed(R(0), R(1)),
                                  U({Interval::open(R(1, 2), R(2))})),
                    std::domain_error);

    // Measure additivity.
    cantor::testutil::RatGen gen(99);
    for (int trial = 0; trial < 50; ++trial) {
        IntervalUnion u = gen.union_in(0, 2, 10, 5);
        Interval ambient = Interval::closed(R(-1), R(3));
        IntervalUnion c = complement_in(ambient, u);
        CHECK(u.measure() + c.measure() == ambient.length());
        CHECK(intersect(u, c).empty());
    }
}

TEST_CASE("complement leaves removed interior points as point parts") {
    IntervalUnion u = U({Interval::open(R(0), R(1)), Interval::open(R(1), R(2))});
    IntervalUnion c = complement_in(Interval::closed(R(0), R(2)), u);
    REQUIRE(c.size() == 3);
    CHECK(c.parts()[1] == Interval::point(R(1)));
    CHECK(c.measure() == R(0));
}

TEST_CASE("minkowski difference: identity and single intervals") {
    IntervalUnion u = U({Interval::closed(R(0), R(1)), Interval::open(R(2), R(3))});
    CHECK(minkowski_diff(u, U({Interval::point(R(0))})) == u);

    IntervalUnion d = minkowski_diff(U({Interval::open(R(1), R(2))}),
                                     U({Interval::closed(R(0), R(1, 2))}));
    CHECK(d == U({Interval::open(R(1, 2), R(2))}));
    CHECK(d.measure() == R(3, 2));
}

TEST_CASE("minkowski difference against a depth-2 middle-thirds cover") {
    IntervalUnion cover = middle_thirds_cover(2);
    REQUIRE(cover.size() == 4);
    IntervalUnion d = minkowski_diff(U({Interval::closed(R(0), R(1, 9))}), cover);
    CHECK(d == U({Interval::closed(R(-1), R(-5, 9)), Interval::closed(R(-1, 3), R(1, 9))}));
    CHECK(d.measure() == R(8, 9));

    // Independent pairwise oracle.
    std::vector<Interval> pairwise;
    for (const Interval& c : cover.parts())
        pairwise.push_back(interval_difference(Interval::closed(R(0), R(1, 9)), c));
    CHECK(IntervalUnion::normalized(pairwise) == d);
}

TEST_CASE("minkowski anti-symmetry") {
    cantor::testutil::RatGen gen(4242);
    for (int trial = 0; trial < 60; ++trial) {
        IntervalUnion a = gen.union_in(-2, 2, 8, 4);
        IntervalUnion b = gen.union_in(-2, 2, 8, 4);
        CHECK(minkowski_diff(a, b) == minkowski_diff(b, a).negated());
    }
}

TEST_CASE("inclusion-exclusion for measures") {
    cantor::testutil::RatGen gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        IntervalUnion a = gen.union_in(-2, 2, 10, 5);
        IntervalUnion b = gen.union_in(-2, 2, 10, 5);
        CHECK(unite(a, b).measure() + intersect(a, b).measure() == a.measure() + b.measure());
    }
}

TEST_CASE("intersect respects endpoint tags") {
    IntervalUnion a = U({Interval(R(0), R(1), true, false)});
    IntervalUnion b = U({Interval::closed(R(1), R(2))});
    CHECK(intersect(a, b).empty());

    IntervalUnion c = U({Interval::closed(R(0), R(1))});
    CHECK(intersect(c, b) == U({Interval::point(R(1))}));
}

TEST_CASE("containment of sets") {
    IntervalUnion punctured = U({Interval(R(0), R(1), true, false), Interval::open(R(1), R(2))});
    CHECK_FALSE(punctured.contains_set(U({Interval::point(R(1))})));
    CHECK(U({Interval::closed(R(0), R(2))}).contains_set(punctured));
    CHECK(punctured.contains_set(U({Interval::open(R(0), R(1)), Interval::open(R(3, 2), R(2))})));
    CHECK_FALSE(punctured.contains_set(U({Interval::open(R(1, 2), R(3, 2))})));
}

TEST_CASE("translation and dilation invariance of measure") {
    cantor::testutil::RatGen gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        IntervalUnion u = gen.union_in(-2, 2, 10, 5);
        CHECK(u.translated(R(7, 3)).measure() == u.measure());
        CHECK(u.scaled(R(3, 7)).measure() == u.measure() * R(3, 7));
    }
    CHECK_THROWS_AS(U({Interval::closed(R(0), R(1))}).scaled(R(0)), std::domain_error);
}

TEST_CASE("min cover count on basic shapes") {
    CHECK(U({Interval::closed(R(0), R(1))}).min_cover_count(R(1, 4)) == 4);
    CHECK(U({Interval::closed(R(0), R(1, 9)), Interval::closed(R(2, 9), R(1, 3))})
              .min_cover_count(R(1, 3)) == 1);
    CHECK(middle_thirds_cover(3).min_cover_count(R(1, 27)) == 8);
    CHECK(IntervalUnion{}.min_cover_count(R(1, 4)) == 0);
    CHECK(U({Interval::point(R(2))}).min_cover_count(R(1, 4)) == 1);
}

TEST_CASE("greedy min cover matches exhaustive search on small grid instances") {
    cantor::testutil::RatGen gen(31337);
    const Rational grid(1, 8);
    for (int trial = 0; trial < 40; ++trial) {
        IntervalUnion u = gen.union_in(0, 2, 8, 4);
        Rational eps(gen.integer(1, 6), 8);
        mpz_class greedy = u.min_cover_count(eps);

        // Exhaustive: try all k-subsets of grid-aligned start positions.
        auto covers_with = [&](const std::vector<Rational>& starts) {
            std::vector<Interval> cov;
            for (const Rational& s : starts) cov.push_back(Interval::closed(s, s + eps));
            return IntervalUnion::normalized(cov).contains_set(u);
        };
        std::vector<Rational> positions;
        for (long k = 0; k <= 16; ++k) positions.push_back(Rational(k, 8));
        mpz_class best = 0;
        bool found = false;
        for (std::size_t k = 1; !found && k < 4; ++k) {
            std::vector<std::size_t> idx(k);
            std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                                    std::size_t from) {
                if (pos == k) {
                    std::vector<Rational> starts;
                    for (std::size_t K : idx) starts.push_back(positions[K]);
                    return covers_with(starts);
                }
                for (std::size_t K = from; K < positions.size(); ++K) {
                    idx[pos] = K;
                    if (rec(pos + 1, K + 1)) return true;
                }
                return false;
            };
            if (rec(0, 0)) {
                best = k;
                found = true;
            }
        }
        if (found) {
            CHECK(greedy == best);
        } else {
            CHECK(greedy >= 4);
        }
    }
}

TEST_CASE("mod_reduce wraps parts into [0, h]") {
    IntervalUnion u = U({Interval::closed(R(7, 20), R(9, 20))});
    IntervalUnion r = u.mod_reduce(R(1, 5));
    CHECK(r == U({Interval::closed(R(0), R(1, 20)), Interval::closed(R(3, 20), R(1, 5))}));

    CHECK(U({Interval::closed(R(-3), R(5))}).mod_reduce(R(1, 2)) ==
          U({Interval::closed(R(0), R(1, 2))}));

    // Negative positions reduce into [0, h) as well.
    IntervalUnion n = U({Interval::closed(R(-3, 20), R(-1, 20))}).mod_reduce(R(1, 5));
    CHECK(n == U({Interval::closed(R(1, 20), R(3, 20))}));
}

TEST_CASE("hull") {
    IntervalUnion u = U({Interval::open(R(0), R(1)), Interval::closed(R(2), R(3))});
    REQUIRE(u.hull().has_value());
    CHECK(*u.hull() == Interval(R(0), R(3), false, true));
    CHECK_FALSE(IntervalUnion{}.hull().has_value());
}
