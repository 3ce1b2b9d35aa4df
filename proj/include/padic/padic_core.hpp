#pragma once

#include "padic/padic_number.hpp"
#include "padic/valuation.hpp"

#include <vector>

namespace padic {

/// Throws std::invalid_argument unless p is prime.
void require_prime(long p);
bool is_prime(long p);

/// v_p of a rational; +inf for 0.
Valuation vp_rational(const Q& a, long p);
/// Integer-valued v_p of a nonzero rational.
long vp_q(const Q& a, long p);

/// Base-p digit sum s_p(n).
long digit_sum(long n, long p);
/// v_p(n!) = (n - s_p(n))/(p-1).
long vp_factorial(long n, long p);

/// v(varpi) = 1/(p-1).
Q varpi_val(long p);
/// v(varpi_m) = (p^m - 1)/(p^m (p-1)).
Q varpi_m_val(long p, long m);

/// Exact binom(lam, n) for rational lam.
Q binom_q(const Q& lam, long n);
/// Exact integer binom(a, b) with a possibly negative; 0 when b < 0.
Z binom_z(long a, long b);

/// binom(lam, n) evaluated in capped precision by the incremental product.
PadicNumber padic_binom(const Q& lam, long n, long p, long prec = PadicNumber::kDefaultPrec);

/// Lazily produces base-p digits of a rational p-adic integer.
class DigitStream {
public:
    DigitStream(const Q& lam, long p);
    long next();
    /// The value still to be expanded: lam = (digits so far) + p^i * rest().
    const Q& rest() const { return rest_; }

private:
    long p_;
    Q rest_;
};

/// First `count` base-p digits of a rational p-adic integer.
std::vector<long> padic_digits(const Q& lam, long count, long p);

/// Residue of a rational p-adic integer modulo p^e, in [0, p^e).
Z residue_mod(const Q& lam, long p, long e);

}  // namespace padic
