#pragma once

#include "padic/cheese.hpp"
#include "padic/ratfun.hpp"
#include "padic/valuation.hpp"

#include <map>
#include <optional>

namespace padic {

/**
 * Truncated operator series sum_k a_k d^k with rational-function coefficients.
 *
 * Coefficients live in the window [lo, hi]. Each window coefficient is either
 * exact or carries a lower bound on the valuation (sup norm on a cheese) of
 * contributions that were not computed. tail_lo / tail_hi bound the norms of
 * every omitted coefficient below lo / above hi; +inf means nothing was omitted.
 */
class SkewLaurentSeries {
public:
    static constexpr long kDefaultWindow = 40;

    SkewLaurentSeries() : SkewLaurentSeries(0, 0) {}
    SkewLaurentSeries(long lo, long hi);

    /// a * d^k as an exact finite series.
    static SkewLaurentSeries monomial(const RationalFunction& a, long k);
    static SkewLaurentSeries scalar(const RationalFunction& a) { return monomial(a, 0); }
    /// d^k
    static SkewLaurentSeries d(long k = 1) { return monomial(RationalFunction(Q(1)), k); }
    /// d^[n] = d^n / n!
    static SkewLaurentSeries divided_power(long n);

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    RationalFunction coeff(long k) const;
    const std::map<long, RationalFunction>& coeffs() const { return c_; }
    /// Throws std::out_of_range outside the window.
    void set(long k, const RationalFunction& a);
    void add_to(long k, const RationalFunction& a);

    bool exact(long k) const { return !bound_.count(k); }
    /// +inf for exact coefficients.
    Valuation bound(long k) const;
    void set_bound(long k, const Valuation& b);
    const std::map<long, Valuation>& bounds() const { return bound_; }
    const Valuation& tail_lo() const { return tail_lo_; }
    const Valuation& tail_hi() const { return tail_hi_; }
    void set_tail_lo(const Valuation& v) { tail_lo_ = v; }
    void set_tail_hi(const Valuation& v) { tail_hi_ = v; }
    /// No omitted terms and no bounded coefficients.
    bool finite_exact() const { return bound_.empty() && tail_lo_.is_inf() && tail_hi_.is_inf(); }

    /// Smallest and largest degree with a nonzero coefficient; lo()/hi() when empty.
    long min_degree() const;
    long max_degree() const;
    bool nonnegative() const { return c_.empty() || c_.begin()->first >= 0; }

    SkewLaurentSeries operator+(const SkewLaurentSeries& o) const;
    SkewLaurentSeries operator-(const SkewLaurentSeries& o) const;
    SkewLaurentSeries operator*(const Q& s) const;
    /// Coefficientwise left multiplication by a function.
    SkewLaurentSeries left_mul(const RationalFunction& f) const;

    /// Equal coefficients on the degrees that are exact in both series.
    bool agrees_exactly(const SkewLaurentSeries& o) const;
    /// Same window, coefficients and exactness.
    bool operator==(const SkewLaurentSeries& o) const;

    /// Restrict to [lo, hi] (window only; omitted parts get unknown bounds unless zero).
    SkewLaurentSeries restrict_window(long lo, long hi) const;

    std::string str() const;

private:
    long lo_, hi_;
    std::map<long, RationalFunction> c_;
    std::map<long, Valuation> bound_;
    Valuation tail_lo_ = Valuation::inf();
    Valuation tail_hi_ = Valuation::inf();
};

struct StarOptions {
    std::optional<long> lo;
    std::optional<long> hi;
    /// Norm context for tail propagation; without it propagated bounds are -inf.
    const Cheese* X = nullptr;
};

/// min_m v(m!) + m*e_rho: factor by which binom(i,m) d^m can shrink valuations on X.
Valuation derivative_shift(const Cheese& X);

/// (u*v)_k = sum_i u_i sum_m binom(i,m) d^m(v_{k-i+m}); OpenMP over output degrees.
SkewLaurentSeries star_product(const SkewLaurentSeries& u, const SkewLaurentSeries& v, const StarOptions& opt = {});
/// Single-threaded reference.
SkewLaurentSeries star_product_serial(const SkewLaurentSeries& u, const SkewLaurentSeries& v,
                                      const StarOptions& opt = {});

/// Naive product of skew polynomials (nonnegative degrees) via d a = a d + a'.
SkewLaurentSeries ore_product_naive(const SkewLaurentSeries& u, const SkewLaurentSeries& v);

/// d^{-1} a = sum_n (-1)^n a^{(n)} d^{-n-1} for a polynomial a.
SkewLaurentSeries ore_inverse_expansion(const Poly& a, long N);

struct SeriesNorm {
    Valuation value;
    /// True when omitted parts could be as large as the computed value.
    bool tail_may_dominate = false;
};

/// max(sup_{j>=0} |a_j| r^j, sup_{j<0} |a_j| s^j) as a valuation.
SeriesNorm series_norm(const SkewLaurentSeries& u, const Q& s_exp, const Q& r_exp, const Cheese& X);

/// d^T = -d, a^T = a, (uv)^T = v^T u^T; needs a nonnegative finite series.
SkewLaurentSeries transpose(const SkewLaurentSeries& u);

/// sum_{j>=0} a_j f^{(j)}; throws if a negative-degree coefficient is nonzero.
RationalFunction apply_to_function(const SkewLaurentSeries& u, const RationalFunction& f);

/// g.d^[n] from the closed form sum_i binom(n-1,i-1)(-cx+a)^{n+i}(-c)^{n-i}/det^n d^[i].
SkewLaurentSeries gdot_divided_power(const MobiusMap& g, long n);

/// Coefficientwise g-action together with g.d = ((-cx+a)^2/det) d; nonnegative finite series only.
SkewLaurentSeries group_transform(const MobiusMap& g, const SkewLaurentSeries& u);

}  // namespace padic
