#pragma once

#include "padic/cheese.hpp"
#include "padic/skew.hpp"

#include <map>
#include <vector>

namespace padic {

/// h_{u,d}^{[n]} for n <= depth, with h^{[0]} = 1 and h^{[1]} = -(1/d) u'/u.
struct TwistData {
    RationalFunction u;
    long d = 1;
    long p = 2;
    std::vector<RationalFunction> h;
    long depth() const { return static_cast<long>(h.size()) - 1; }
};

/// (l+1) h^{[l+1]} = h^{[l]}' + h^{[1]} h^{[l]}. Throws if p | d or u = 0.
TwistData h_sequence(const RationalFunction& u, long d, long p, long N);

/// binom(-k/d, n) (x - alpha)^{-n}, the values for u = (x - alpha)^k.
RationalFunction h_monomial(const Q& alpha, long k, long d, long n);

/// Checks (l+1) h^{[l+1]} = sum_{n<=l} h^{[n]} d^{[l-n]}(h^{[1]}) for l < L.
bool rhz_sum_identity(const TwistData& t, long L);

/// theta_{u,d}(a d^n) = a n! sum_alpha h^{[n-alpha]} d^{[alpha]}; Q finite, exact, nonnegative.
SkewLaurentSeries theta_apply(const TwistData& t, const SkewLaurentSeries& Q);
/// theta_{u,d}(d) = d + h^{[1]}.
SkewLaurentSeries theta_d(const TwistData& t);

/**
 * xi_{u,d} = sum_{n=1}^{K} (-1)^{n-1} (n-1)! h^{[n-1]} d^{-n}.
 *
 * With X the omitted tail is bounded by inf_{n>=K} v(n!) + n log_p rho(X), using
 * |h^{[n]}|_X <= rho(X)^{-n} for u without zeros or poles on X; -inf otherwise.
 */
SkewLaurentSeries xi_build(const TwistData& t, long K, const Cheese* X = nullptr);

struct MicroInverseReport {
    long K = 0;
    /// vp_factorial(K - 1).
    long threshold = 0;
    /// Sup norms on X of the coefficients of xi*theta(d) - 1 and theta(d)*xi - 1 over the report window.
    std::map<long, Valuation> left, right;
    bool ok = false;
};

/// Exact products of the truncation xi_K with theta(d), reported on degrees [report_lo, 1].
MicroInverseReport micro_inverse_residual(const RationalFunction& u, long d, long p, long K, const Cheese& X,
                                          long report_lo);

/// Lower bound inf_{n>N} n*w - v(n!) for the coefficients (g.x - x)^n / n! beyond N, w = |g.x - x|_X.
Valuation beta_tail(const MobiusMap& g, long N, const Cheese& X);

/// sum_{n<=N} (g.x - x)^n d^[n]; with X, checks g in G_r for r = r(X) and records the tail bound.
SkewLaurentSeries beta_build(const MobiusMap& g, long N, const Cheese* X = nullptr);

struct SigmaRhoReport {
    long m_max = 0;
    /// beta(g)(x^m) == (g.x)^m for every m <= m_max.
    bool action_exact = false;
    /// beta_N(gh) agrees with beta_N(g)*beta_N(h): exact degrees equal, bounded degrees within bound.
    bool homomorphism = false;
    long exact_degrees = 0, bounded_degrees = 0;
};

SigmaRhoReport sigma_rho_check(const MobiusMap& g, const MobiusMap& h, long m_max, long N, const Cheese& X);

/// c_{u,d}(g) truncated: sum_{m<=N} (g.x - x)^m h^{[m]}; needs t.depth() >= N.
RationalFunction cocycle(const TwistData& t, const MobiusMap& g, long N);

struct CocycleReport {
    /// theta(beta_N(g)) == sum_alpha (g.x - x)^alpha c_{N-alpha} d^[alpha] exactly.
    bool theta_beta_exact = false;
    /// c_{uv,N} - c_{u,N} c_{v,N} equals its predicted cross terms exactly.
    bool multiplicative_exact = false;
    /// v(|c_N^d - u/(g.u)|_X) and the bound (N+1)(|g.x - x|_X + log_p rho).
    Valuation power_residual, power_threshold;
    bool power_ok = false;
    /// v(|c_N - 1|_X) > 0.
    Valuation unit_part;
    bool small_unit = false;
};

CocycleReport cocycle_check(const RationalFunction& u, const RationalFunction& v, long d, const MobiusMap& g,
                            long N, const Cheese& X);

/// |h^{[m]}|_X >= m log_p rho(X) (as valuations) for m <= depth.
bool hun_estimate_holds(const TwistData& t, const Cheese& X);

/// coeff_d d + coeff_0 as a skew series.
SkewLaurentSeries to_skew(const FirstOrderOperator& op);

}  // namespace padic
