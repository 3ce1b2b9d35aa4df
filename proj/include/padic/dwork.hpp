#pragma once

#include "padic/skew.hpp"

#include <vector>

namespace padic {

/// H = sum_k c_k x^k d^[k], the projector onto functions of x^q, truncated at d-degree K.
struct DworkOperator {
    long q = 2;
    long K = 0;
    /// c_k = sum_{q | j <= k} binom(k, j) (-1)^{k-j}.
    std::vector<Z> c;
    /// As a skew series on [0, K] with an unknown upper tail.
    SkewLaurentSeries op() const;
};

DworkOperator dwork_build(long q, long K);

/**
 * H' = H o x^{-(q-1)}: sum_{n >= q-1} h'_n x^{n-q+1} d^[n],
 * h'_n = sum_{j <= n} (-1)^{n-j} binom(n, j) [j = -1 mod q]. Polynomial coefficients.
 */
SkewLaurentSeries dwork_prime(long q, long K);

/// x^i H x^{-i}, computed as x^i * H' * x^{q-1-i}.
SkewLaurentSeries dwork_conjugate(long q, long K, long i);

/// Largest n such that every degree in [lo, n] is exact (lo - 1 if the lowest is not).
long exact_through(const SkewLaurentSeries& s);

struct DworkReport {
    long q = 0, K = 0;
    /// Degrees through which every identity was checked.
    long checked_through = 0;
    bool idempotent = false;   // H*H - H
    bool partition = false;    // sum_i x^i H x^{-i} - 1
    bool prime_consistent = false;  // H' * x^{q-1} - H
    bool projector = false;    // H(x^j) = [q | j] x^j, j <= K
    long zero_coefficients = 0;
};

/// Requires K >= 3q; checks each identity on every exact degree, asserting at least K - q of them.
DworkReport dwork_identities(long q, long K);

struct FrobeniusReport {
    long checked_through = 0;
    /// x^i ((1/q) x d H - ((lambda - i)/q) H) H x^{-i} = (1/q)(x d - lambda) x^i H x^{-i}.
    bool holds = false;
    /// sum over i of the right side equals (1/q)(x d - lambda).
    bool sums_to_euler = false;
};

FrobeniusReport frobenius_relation(long q, const Q& lambda, long i, long K);

/// binom(x d - m, n)(f) d^m for a Laurent polynomial f = sum a_t x^t (given as pairs t, a_t).
SkewLaurentSeries euler_apply(long n, const std::vector<std::pair<long, Q>>& f, long m);

/// n! E_n(f d^m) against ad(x d)(ad(x d) - 1)...(ad(x d) - n + 1)(f d^m) by star products; f polynomial.
bool euler_iterate_consistent(long n, const Poly& f, long m);

}  // namespace padic
