#pragma once

#include "padic/poly.hpp"
#include "padic/valuation.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace padic {

class MobiusMap;

using Divisor = std::map<Q, long>;

/**
 * Rational function lam * P(x) * prod (x - a)^{e_a} over Q.
 *
 * P is monic and does not vanish at any recorded point a; every e_a is
 * nonzero. All poles are therefore rational points in the factor map.
 * The zero function has lam = 0.
 */
class RationalFunction {
public:
    RationalFunction() : lam_(0) {}
    RationalFunction(const Q& c) : lam_(c) { lam_.canonicalize(); }
    RationalFunction(const Poly& p);
    RationalFunction(const Q& lam, const Poly& p, const Divisor& factors);

    static RationalFunction x() { return RationalFunction(Poly::x()); }
    /// (x - a)^e
    static RationalFunction power(const Q& a, long e);
    /// lam * prod (x - a)^{e_a}
    static RationalFunction factored(const Q& lam, const Divisor& factors);

    bool is_zero() const { return lam_ == 0; }
    bool is_polynomial() const;
    bool is_constant() const;
    const Q& scalar() const { return lam_; }
    const Poly& poly_part() const { return P_; }
    const Divisor& factors() const { return fac_; }

    Poly numerator() const;
    Poly denominator() const;
    /// Throws unless is_polynomial().
    Poly to_poly() const;
    /// Degree as a polynomial; -1 for zero. Throws unless is_polynomial().
    long poly_degree() const;

    /// Zeros and poles with multiplicity; throws std::domain_error for irrational zeros.
    Divisor divisor() const;
    /// Poles with their orders.
    std::map<Q, long> poles() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator*(const Q& s) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    /// Multiplicative inverse; needs a numerator that splits over Q.
    RationalFunction inverse() const;
    RationalFunction pow(long n) const;
    RationalFunction derivative() const;
    /// m-th derivative.
    RationalFunction derivative(long m) const;
    Q eval(const Q& t) const;

    /// f(phi(x)) with phi(x) = (dx - b)/(-cx + a), the action g.f.
    RationalFunction compose_mobius(const Q& a, const Q& b, const Q& c, const Q& d) const;

    /// Laurent expansion at b: returns the order o and coefficients of t^o..t^{o+count-1}, x = b + t.
    std::pair<long, std::vector<Q>> laurent_at(const Q& b, long count) const;

    std::string str() const;

private:
    void normalize();
    Q lam_;
    Poly P_ = Poly(Q(1));
    Divisor fac_;
};

/// u'/u.
RationalFunction dlog(const RationalFunction& u);

/**
 * Invertible 2x2 rational matrix (a b; c d).
 *
 * On points it acts by z -> (az+b)/(cz+d); on functions by
 * (g.f)(x) = f((dx-b)/(-cx+a)), so that g.x = (dx-b)/(-cx+a).
 */
class MobiusMap {
public:
    MobiusMap(const Q& a, const Q& b, const Q& c, const Q& d);
    static MobiusMap identity() { return MobiusMap(1, 0, 0, 1); }
    static MobiusMap translation(const Q& w) { return MobiusMap(1, -w, 0, 1); }

    const Q& a() const { return a_; }
    const Q& b() const { return b_; }
    const Q& c() const { return c_; }
    const Q& d() const { return d_; }
    Q det() const { return a_ * d_ - b_ * c_; }

    bool upper_triangular() const { return c_ == 0; }
    /// Integral entries, unit determinant, v(c) > 0.
    bool generalized_iwahori(long p) const;
    /// Membership in G_r with r = p^{r_exp}: v(b), v(c), v(a-d) > 1/(p-1) + r_exp.
    bool in_G_r(long p, const Q& r_exp) const;

    /// a/d; throws std::domain_error unless upper triangular.
    Q rho() const;

    /// Moebius image of a point; throws std::domain_error for the point at infinity.
    Q act_point(const Q& z) const;
    RationalFunction act_x() const;
    RationalFunction act(const RationalFunction& f) const;
    /// Coefficient of g.d/dx as a multiple of d/dx: (-cx+a)^2/det.
    RationalFunction act_derivation() const;

    MobiusMap operator*(const MobiusMap& o) const;
    MobiusMap inverse() const;
    bool operator==(const MobiusMap& o) const;

    std::string str() const;

private:
    Q a_, b_, c_, d_;
};

/// coeff_d * d/dx + coeff_0
struct FirstOrderOperator {
    RationalFunction coeff_d;
    RationalFunction coeff_0;
    bool operator==(const FirstOrderOperator& o) const { return coeff_d == o.coeff_d && coeff_0 == o.coeff_0; }
    /// Action of an upper-triangular g.
    FirstOrderOperator act(const MobiusMap& g) const;
    FirstOrderOperator operator*(const Q& s) const { return {coeff_d * s, coeff_0 * s}; }
    RationalFunction apply(const RationalFunction& f) const { return coeff_d * f.derivative() + coeff_0 * f; }
};

/// prod_{a in S} (x - a)
RationalFunction delta_of(const std::set<Q>& S);

/// R_S(u,d) = Delta_S d/dx - (1/d) sum_a v_a(u) prod_{b != a}(x - b).
FirstOrderOperator relator(const std::set<Q>& S, const RationalFunction& u, long d);

}  // namespace padic
