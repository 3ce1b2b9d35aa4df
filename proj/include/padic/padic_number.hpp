#pragma once

#include "padic/valuation.hpp"

#include <climits>
#include <stdexcept>
#include <string>
#include <vector>

namespace padic {

/// Raised when a computation cannot be carried out at the working precision.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted(const std::string& what, long suggested)
        : std::runtime_error(what), suggested_prec(suggested) {}
    long suggested_prec;
};

/**
 * Element of Q_p with capped relative precision.
 *
 * A nonzero value is p^val * unit where the unit is known modulo p^relprec
 * (relprec <= cap). A zero is either exact or a tracked zero known only
 * modulo p^absprec.
 */
class PadicNumber {
public:
    static constexpr long kExact = LONG_MAX;
    static constexpr long kDefaultPrec = 64;

    PadicNumber() : p_(2), cap_(kDefaultPrec), zero_(true), val_(0), relprec_(0), absprec_(kExact) {}

    static PadicNumber from_rational(const Q& a, long p, long cap = kDefaultPrec);
    static PadicNumber from_int(long a, long p, long cap = kDefaultPrec) { return from_rational(Q(a), p, cap); }
    static PadicNumber zero(long p, long cap = kDefaultPrec, long absprec = kExact);

    long prime() const { return p_; }
    long cap() const { return cap_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && absprec_ == kExact; }
    /// Valuation; for a tracked zero, +inf.
    Valuation valuation() const;
    /// Integer valuation of a nonzero element.
    long val() const;
    long relprec() const { return zero_ ? 0 : relprec_; }
    /// Value is known modulo p^absprec (kExact for exact zero).
    long absprec() const { return zero_ ? absprec_ : val_ + relprec_; }
    const Z& unit() const { return unit_; }

    /// Base-p digits of the unit part, least significant first (relprec of them).
    std::vector<long> unit_digits() const;
    /// Digits of the value from p^0 up to p^{count-1}; requires val >= 0.
    std::vector<long> digits(long count) const;

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const { return *this + (-o); }
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber operator/(const PadicNumber& o) const;
    PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
    PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

    /// True when the two values agree modulo p^min(absprec) and that
    /// modulus is at least p^digits beyond min(val).
    bool agrees_with(const PadicNumber& o, long digits) const;

    /// Largest t with this == r mod p^t, bounded by absprec.
    long agreement(const PadicNumber& o) const;

    /// Residue representative in [0, p^absprec) scaled by p^-val; for debugging.
    std::string str() const;

private:
    void check_same(const PadicNumber& o) const;
    static PadicNumber make(long p, long cap, long val, long relprec, Z unit);

    long p_;
    long cap_;
    bool zero_;
    long val_;
    long relprec_;
    long absprec_;
    Z unit_;
};

/// p^e with a small per-thread cache.
const Z& ppow(long p, long e);

}  // namespace padic
