#pragma once

#include "padic/skew.hpp"

#include <map>

namespace padic {

/// q_k = floor(k / p^m).
long level_q(long k, long p, long m);

/// {k over k'} = q_k! / (q_{k'}! q_{k-k'}!), an integer.
Z brace_binom(long k, long kp, long p, long m);
/// <k over k'> = binom(k, k') / {k over k'}.
Q angle_binom(long k, long kp, long p, long m);

/// v_p(eps_n^{(m)}) = v(n!) - v(q_n!) - n v(varpi_m), where (d/varpi_m)^n = eps_n d^<n>.
Q eps_valuation(long n, long p, long m);

/// The unit u with d^<k> = u prod_j (d^<p^j>)^{c_j} (d^<p^m>)^c, c_j the base-p digits of k mod p^m.
Q level_unit(long k, long p, long m);

/// sum_k b_k d^<k> at level m, with d^<k> = q_k! d^[k].
class DividedPowerOperator {
public:
    DividedPowerOperator(long p, long m);

    static DividedPowerOperator basis(long p, long m, long k);
    /// Throws unless u is finite, exact and has nonnegative degrees.
    static DividedPowerOperator from_skew(const SkewLaurentSeries& u, long p, long m);
    SkewLaurentSeries to_skew() const;

    long p() const { return p_; }
    long level() const { return m_; }
    const std::map<long, RationalFunction>& coeffs() const { return c_; }
    RationalFunction coeff(long k) const;
    void set(long k, const RationalFunction& a);

    DividedPowerOperator operator*(const DividedPowerOperator& o) const;
    bool operator==(const DividedPowerOperator& o) const { return p_ == o.p_ && m_ == o.m_ && c_ == o.c_; }

private:
    long p_, m_;
    std::map<long, RationalFunction> c_;
};

/// q_k!/k!: coefficient of d^k in d^<k>.
Q level_factor(long k, long p, long m);

}  // namespace padic
