#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "cantor/rational.hpp"
#include "cantor/rounding.hpp"

namespace cantor {

/// Counts C_k of finite sequences of integers in Z \ {-1, 0, 1} whose
/// absolute-value sum is exactly k, with the empty sequence counting for
/// k = 0. Defined by first-digit decomposition C_k = sum_{i=2..k} 2 C_{k-i}.
struct SeqCountTable {
    int max_k = 0;
    std::vector<mpz_class> counts;  // index 0..max_k

    const mpz_class& at(int k) const { return counts.at(static_cast<std::size_t>(k)); }
};

SeqCountTable count_ck(int max_k);

/// Exhaustive enumeration of every signed sequence with abs-sum target_sum,
/// in deterministic order (magnitude then sign at each position). The oracle
/// counterpart of the DP and the engine behind card_E.
void enumerate_signed_sequences(long target_sum,
                                const std::function<void(const std::vector<long>&)>& f);
mpz_class count_ck_enumerated(long k);

mpz_class binomial(unsigned long n, unsigned long k);

/// Exact cardinality of E(N) = union over R > floor(delta N) of E(N, R, n, t),
/// together with the lower-rounded Lemma-6.3-style bound
/// N^3 2^(N(1-delta)) (e^2 M^2 / delta)^((delta N + 1)/M); bound_holds
/// certifies card <= bound.
struct EnsembleCard {
    long n_sum = 0;
    long m_cap = 0;
    Rational delta;
    mpz_class card;
    std::map<std::tuple<long, long, long>, mpz_class> by_r_n_t;  // (R, n, t) -> count
    Rational bound_lower;
    bool bound_holds = false;
};

EnsembleCard card_E(long n_sum, long m_cap, const Rational& delta, unsigned precision = 64);

/// Verifies C(n, t) <= (e N M / 2R)^(R/M) with a lower-rounded right side
/// (a pass certifies the inequality). Requires the hypotheses under which it
/// is stated: t <= n, M t <= R <= N, 2n <= N.
bool binom_bound_check(long n, long t, long n_sum, long r_sum, long m_cap,
                       unsigned precision = 64);

/// Verifies the chain 2^t C(R, t) <= 2^t C(R, floor(R/M)) <= (2 e M)^(R/M),
/// exact on the left, lower-rounded on the right. Requires M t <= R, M >= 2.
bool composition_count_check(long r_sum, long t, long m_cap, unsigned precision = 64);

}  // namespace cantor
