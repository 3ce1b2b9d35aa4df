#pragma once

#include "padic/valuation.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace padic {

/// Dense univariate polynomial over Q, coefficients low degree first.
class Poly {
public:
    Poly() = default;
    Poly(const Q& c);
    explicit Poly(std::vector<Q> coeffs);

    static Poly x() { return Poly(std::vector<Q>{0, 1}); }
    /// x - a
    static Poly linear(const Q& a) { return Poly(std::vector<Q>{-a, 1}); }
    static Poly monomial(const Q& c, long n);

    long deg() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Q>& coeffs() const { return c_; }
    Q coeff(long i) const { return (i >= 0 && i <= deg()) ? c_[i] : Q(0); }
    Q lead() const { return c_.empty() ? Q(0) : c_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Q& s) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Euclidean division; throws on a zero divisor.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly pow(long n) const;
    Poly derivative() const;
    Q eval(const Q& t) const;
    /// Coefficients of P(b + t) as a polynomial in t.
    Poly shift(const Q& b) const;
    Poly monic() const;

    /// Rational roots with multiplicity, and the cofactor without rational roots.
    /// Throws std::domain_error when the coefficients are too large for a root search.
    std::pair<std::map<Q, long>, Poly> rational_roots() const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Q> c_;
};

}  // namespace padic
