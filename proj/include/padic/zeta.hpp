#pragma once

#include "padic/carry.hpp"
#include "padic/series.hpp"

#include <vector>

namespace padic {

/**
 * Parameters of the y-coordinate equation with pi = p (unramified): q = p^f,
 * d | q+1, p does not divide d, 1 <= k <= d.
 */
struct ZetaParams {
    long p = 0, f = 0, q = 0, k = 0, d = 0;
    Q kd() const { return Q(k) / Q(d); }
    Q qkd() const { return Q(q * k) / Q(d); }
};

/// Validates and fills p, f from q. Throws std::invalid_argument naming the violated rule.
ZetaParams zeta_params(long q, long k, long d);
/// As zeta_params, and additionally rejects k = d (trivial twist, qk/d integral).
ZetaParams zeta_params_nontrivial(long q, long k, long d);

struct CocycleC {
    /// (y(1-y)^q - y^q(1-y)) / (y - y^q); left zero for q > 3, where the denominator does not split.
    RationalFunction ratio;
    /// ratio = 1 + p y f(y) / (1 - y^{q-1}).
    Poly f;
    bool f_integral = false;
    /// ratio^{k/d} with constant term 1, mod y^order.
    QSeries c;
    /// c^d - ratio^k == 0 mod y^order.
    bool power_exact = false;
};

CocycleC build_cocycle_c(long q, long k, long d, long order);

struct AlphaJ {
    std::vector<Q> alpha;  ///< alpha_m for (q-1)m < order
    QSeries eps;           ///< (1 - y^{q-1})^{k/d}
    /// (y d/dy - qk/d - 1) sum alpha_m y^{(q-1)m} == eps mod y^order.
    bool identity = false;
};

AlphaJ alpha_and_J(long q, long k, long d, long order);

/// zeta = p (1-y^{q-1})^{-k/d} sum_m (-1)^m binom(k/d,m) y^{(q-1)m} ((1-y)^{mu_m} - 1)/(mu_m y), exact.
QSeries zeta_series(long q, long k, long d, long order);
/// -p eps^{-1} sum_m alpha_m y^{m(q-1)} ((1-y)^{mu_m} - 1)/y, exact.
QSeries zeta_divj(long q, long k, long d, long order);

/// h^{[1]} of (1-y^{q-1})^{-k} as a y-series; from the twist recursion when the poles are rational.
QSeries twist_h1(long q, long k, long d, long order);
/// h^{[1]} from the series log-derivative -(1/d) u'/u.
QSeries twist_h1_series(long q, long k, long d, long order);

/// nabla(f) = -(1/p)(y^2 f' + y^2 h1 f - (qk/d) y f); result known to f.order() + 1.
QSeries nabla(const ZetaParams& z, const QSeries& h1, const QSeries& f);

/// Solves nabla(zeta) = c - 1 by the recurrence (n - qk/d) G_n = RHS_{n+1}, G = eps zeta.
QSeries unique_solution(long q, long k, long d, long order);

struct OdeReport {
    long order = 0, prec = 0;
    QSeries residual;          ///< exact, coefficients y^0 .. y^order
    bool exact_zero = false;
    PadicSeries padic_residual;
    long precision_floor = 0;  ///< smallest absprec among residual coefficients
    bool padic_zero = false;   ///< every retained coefficient is a tracked zero
    bool unique_match = false; ///< the recurrence solution equals zeta_series
    bool pass() const { return exact_zero && padic_zero && unique_match; }
};

/// nabla(zeta) - (c - 1) through y^order, exactly and at p-adic precision prec.
OdeReport ode_residual(long q, long k, long d, long order, long prec);

/// eta(y^2 f') == y^2 (eta f)' with eta(f)(y) = f(y/(1-y)).
bool eta_commutes(const QSeries& f);

struct PhiRow {
    long N = 0, n = 0, M = 0, s = 0;
    Valuation v_carry, v_dominant;
    Q bound;                        ///< (3 - N)/2
    bool series_done = false;       ///< the series path ran (n within the series limit)
    Valuation v_series;
    long agree_digits = 0;          ///< agreement of the two paths beyond the valuation
    bool agree = false;             ///< agree_digits >= prec/2, or series path skipped
};

/// Default cap on n_N for the series path.
inline constexpr long kPhiSeriesLimit = 2000;

/// Coefficient of s^{n_N} in (1/p)(1-s)^{k/d} Phi(zeta), carry path and series path. Parallel over N.
std::vector<PhiRow> phi_valuation_profile(long q, long k, long d, const std::vector<long>& Ns, long prec,
                                          long series_limit = kPhiSeriesLimit);
std::vector<PhiRow> phi_valuation_profile_serial(long q, long k, long d, const std::vector<long>& Ns, long prec,
                                                 long series_limit = kPhiSeriesLimit);

/// The s^n coefficient via y-series assembly at precision prec.
PadicNumber phi_series_coefficient(const ZetaParams& z, long n, long prec);

struct XVzeroReport {
    long order = 0;
    QSeries F;            ///< (xi beta(h))_0 = -sum_{n>=1} (1/n)(-p)^n h^{[n-1]} in y = p/x
    QSeries cocycle;      ///< c_{w,d}(h^{-1}) = sum_m (-p)^m h^{[m]} in y
    QSeries nabla_F;
    bool residual_zero = false;  ///< nabla(F) == 1 - cocycle mod y^order
    bool matches_c = false;      ///< cocycle == build_cocycle_c(...).c
    bool matches_zeta = false;   ///< -F == zeta_series
    bool padic_ok = false;       ///< the residual reduced at prec is a tracked zero
    bool pass() const { return residual_zero && matches_c && matches_zeta && padic_ok; }
};

/// Needs rational poles of w = (x^q - p^{q-1} x)^{-k}, i.e. q in {2, 3}.
XVzeroReport xvzero_series(long q, long k, long d, long order, long prec);

/// min_n v(a_n) + n: the |a_n| |p|^n boundedness diagnostic on |y| <= |p|.
Valuation radius_diagnostic(const PadicSeries& f);

}  // namespace padic
