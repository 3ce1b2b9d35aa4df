#pragma once

#include "padic/padic_core.hpp"

#include <string>
#include <vector>

namespace padic {

/// Carries produced when adding n to lam in base p.
struct CarryProfile {
    Q lam;
    long n = 0;
    long p = 2;
    std::vector<int> gamma;       ///< gamma_0 .. gamma_{m-1}
    bool L_infinite = false;
    long L = 0;                   ///< index just past the last carry
    std::vector<long> noncarries; ///< N_j = #{i < j : gamma_i = 0}, j = 0..m
    long carries() const;         ///< total carry count; only when L finite
};

CarryProfile carry_profile(const Q& lam, long n, long m, long p);

/// v_p of <lam|n> = binom(lam+n, n), via carry counting.
Valuation vp_binom_kummer(const Q& lam, long n, long p);
/// v_p of binom(lam, r) = v_p <lam-r | r>.
Valuation vp_binom(const Q& lam, long r, long p);

/**
 * Digits of a fixed rational p-adic integer, cached to a given depth, for
 * fast carry and borrow counting against many integers.
 */
class FixedDigits {
public:
    FixedDigits(const Q& lam, long p, long depth);
    /// Carries when adding n >= 0; -1 means infinitely many.
    long add_carries(long n) const;
    /// Borrows when subtracting n >= 0, equal to v_p binom(lam, n); -1 means infinitely many.
    long sub_borrows(long n) const;

private:
    long tail_carry_run(bool add) const;
    Q lam_;
    long p_;
    std::vector<long> d_;
    Q tail_;
};

/// The special index n_N with M and s (unramified: q = p^f, d = q+1).
struct SpecialIndex {
    long p = 0, f = 0, q = 0, k = 0, d = 0, N = 0;
    long n = 0, M = 0, s = 0;
    Q lam;  ///< k/(q+1)
};

/// Empty string when N has the right parity for (q,k); otherwise the violated rule.
std::string parity_violation(long q, long k, long N);
/// M predicted by the case table.
long expected_M(long q, long k, long N);

SpecialIndex special_index(long p, long f, long k, long N);

/// Throws std::invalid_argument with a cost estimate when the sum is too large for a desk run.
void require_desk_scale(const SpecialIndex& idx);

struct QExpReport {
    char which = '?';
    std::vector<long> s_digits, s_expected;
    std::vector<long> rest_digits, rest_expected;
    long L = 0;
    bool L_infinite = false;
    bool s_ok = false, rest_ok = false, no_carry_last = false;
    bool pass() const { return s_ok && rest_ok && no_carry_last; }
};

QExpReport qexp_check(const SpecialIndex& idx);

/// v_p((n-r)(q-1)+1).
long denom_valuation(long n, long r, long q, long p);

/// Valuation of the r-th summand binom(lam,r) binom(q lam-(q-1)r,(n-r)(q-1)) / ((n-r)(q-1)+1).
Valuation term_valuation(const SpecialIndex& idx, long r);

/// Precomputed digit data making term valuations cheap across all r.
class TermValuator {
public:
    explicit TermValuator(const SpecialIndex& idx);
    Q operator()(long r) const;

private:
    SpecialIndex idx_;
    FixedDigits lam_, alpha_;
};

struct ArgminReport {
    long argmin = -1;
    Q min_val;
    Q second_val;
    bool unique = false;
};

/// Scans all 0 <= r <= n for the minimal term valuation.
ArgminReport term_argmin(const SpecialIndex& idx);

enum class SumSigns {
    Displayed,  ///< all summands with + sign
    Series      ///< signs of the s^n coefficient of (1/p)(1-s)^{k/d} Phi(zeta)
};

struct SumEstimate {
    PadicNumber sum;
    Valuation v_sum;
    Valuation v_dominant;
    long prec = 0;
};

/// Serial reference summation.
SumEstimate sum_estimate_serial(const SpecialIndex& idx, long prec, SumSigns signs = SumSigns::Displayed);
/// OpenMP chunked summation; agrees with the serial one.
SumEstimate sum_estimate(const SpecialIndex& idx, long prec, SumSigns signs = SumSigns::Displayed);

}  // namespace padic
