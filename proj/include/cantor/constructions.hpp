#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cantor/cantor_model.hpp"
#include "cantor/rounding.hpp"

namespace cantor {

/// Deterministic, platform-independent randomness: a (seed, path) pair names
/// a stream and draws are pure functions of (seed, path, index), so every
/// randomized construction replays bit-exactly from its RandomSeed.
struct RandomSeed {
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> path;

    RandomSeed child(std::uint64_t component) const;
    std::uint64_t draw(std::uint64_t index) const;
    /// Dyadic draw in [0, 1) with the given resolution (<= 64 bits).
    Rational dyadic_draw(std::uint64_t index, unsigned resolution) const;
};

/// Word of the Chebyshev-type coding: integer digits with |digit| >= 2;
/// the cylinder of a word has length exactly 2^(1 - sum |digits|).
struct SymbolicWord {
    std::vector<long> digits;

    long abs_sum() const;
};

/// Closure of the cylinder {x in [-1,1] : coding starts with word}, computed
/// by composing the inverse branches x = sign(m) (2^(1-|m|) + (y+1) 2^(-|m|)).
Interval chebyshev_cylinder(const SymbolicWord& word);

/// Middle-gap set K̃(s) on [-1, 1]: level n removes from each component a
/// centered open interval of length 2^(-n/s)/(1 - 2^(1-1/s)). Requires 1/s to
/// be an integer >= 2 so all endpoints stay rational.
GapCantor middle_gap(const Rational& s, int levels);
Rational middle_gap_level_length(const Rational& s, int level);

/// Gap set of the optimality counterexample: levels i = n_start..i_max remove
/// q/10^i + (0, 10^(-floor(i/p))) for every q in [0, 10^i). The raw list keeps
/// nested duplicates; the normalized view is available through GapCantor.
GapCantor counterexample_kp(const Rational& p, int n_start, int i_max,
                            std::size_t gap_cap = std::size_t(1) << 22);
long counterexample_j(const Rational& p, long i);
/// Exact tail sum over i >= n_start of 10^(i - floor(i/p)), the union bound
/// on the measure removed by the remaining levels.
Rational counterexample_removed_bound(const Rational& p, int n_start);
/// Smallest n_start whose removed-measure bound drops below the threshold.
int counterexample_n_start(const Rational& p, const Rational& threshold);

/// Random gap set: per level i, 10^i gaps of length 10^(-floor(i/p)) at
/// positions drawn as dyadic rationals from the seed. Reproducible bit-exactly.
GapCantor random_kp(const Rational& p, int i_lo, int i_hi, const RandomSeed& seed,
                    unsigned resolution = 53, std::size_t gap_cap = std::size_t(1) << 22);

/// BFS summary for the Pesin-type sets: what was emitted and what the sum
/// budget left unresolved (so estimates can widen accordingly).
struct PesinEnumeration {
    std::size_t gaps = 0;
    std::size_t unresolved_cylinders = 0;
    Rational unresolved_mass{0};                          // total unexplored cylinder length
    std::vector<std::pair<long, std::size_t>> cylinders_by_sum;  // (S, admissible word count)
};

/// K̃₂(s, N): admissible digits |x_i| <= max(N, s * sum of previous |x_j|).
/// Each admissible cylinder contributes the central gap of its forbidden
/// digits; cylinders past the sum budget are left unresolved.
GapCantor pesin_k2(const Rational& s, long n_cap, int sum_budget);
PesinEnumeration pesin_k2_summary(const Rational& s, long n_cap, int sum_budget);

/// K̃₃(M, δ) with the strong-regularity predicate: the digits exceeding M may
/// carry at most a δ-fraction of the total symbolic weight.
GapCantor pesin_k3(long m_cap, const Rational& delta, int sum_budget);
PesinEnumeration pesin_k3_summary(long m_cap, const Rational& delta, int sum_budget);

/// Diophantine gap set: gaps (p/q - q^-d, p/q + q^-d) for q0 <= q <= q_max and
/// all integers p with p/q in range, clipped to the range.
GapCantor dio_gapset(int d, long q0, long q_max, const Interval& range,
                     std::size_t gap_cap = std::size_t(1) << 22);

/// Lower-rounded evaluation of 2M - 16 M C_K / (((1-s)d - 2) q0^((1-s)d - 2)).
/// Requires s.hi < 1 - 2/d; tends to 2M as q0 grows.
Rational dio_lower_bound(const Rational& m_radius, const Rational& ck_upper, const RatBounds& s,
                         int d, long q0, unsigned precision = 64);
/// Smallest q0 <= q_limit with dio_lower_bound > 2M - slack (0 if none).
long dio_q0_for_threshold(const Rational& m_radius, const Rational& ck_upper, const RatBounds& s,
                          int d, const Rational& slack, long q_limit, unsigned precision = 64);

/// Rank-depth continued-fraction cylinders of F_k (partial quotients in 1..k):
/// exact convergent endpoints, one interval per word.
std::vector<Interval> cf_cylinders(int k, int depth, std::size_t cap = std::size_t(1) << 22);
CoverApprox cf_cantor(int k, int depth, std::size_t cap = std::size_t(1) << 22);

}  // namespace cantor
