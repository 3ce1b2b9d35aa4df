#pragma once

#include <gmpxx.h>

#include <string>

namespace padic {

using Q = mpq_class;
using Z = mpz_class;

/// Exponent of p in a nonzero integer.
long vp_int(const Z& a, long p);

/**
 * A p-adic valuation: an exact rational, +inf (the zero element), or -inf.
 *
 * -inf is never the valuation of an element. It stands for "no bound known"
 * when a Valuation is used as a lower bound on something omitted.
 */
class Valuation {
public:
    enum class Kind { Finite, PosInf, NegInf };

    Valuation() : kind_(Kind::Finite), v_(0) {}
    Valuation(long v) : kind_(Kind::Finite), v_(v) {}
    Valuation(const Q& v) : kind_(Kind::Finite), v_(v) { v_.canonicalize(); }

    static Valuation inf() { return Valuation(Kind::PosInf); }
    static Valuation neg_inf() { return Valuation(Kind::NegInf); }

    bool finite() const { return kind_ == Kind::Finite; }
    bool is_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    Kind kind() const { return kind_; }

    /// Throws std::logic_error unless finite.
    const Q& value() const;

    /// "inf", "-inf", or the rational as "a/b".
    std::string str() const;

    Valuation operator+(const Valuation& o) const;
    Valuation operator-(const Valuation& o) const;
    Valuation operator*(const Q& c) const;

    bool operator==(const Valuation& o) const;
    bool operator!=(const Valuation& o) const { return !(*this == o); }
    bool operator<(const Valuation& o) const;
    bool operator<=(const Valuation& o) const { return !(o < *this); }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return !(*this < o); }

private:
    explicit Valuation(Kind k) : kind_(k), v_(0) {}
    Kind kind_;
    Q v_;
};

inline Valuation vmin(const Valuation& a, const Valuation& b) { return b < a ? b : a; }
inline Valuation vmax(const Valuation& a, const Valuation& b) { return a < b ? b : a; }

/// Rational as "a/b" or "a".
std::string qstr(const Q& q);

}  // namespace padic
