#include "padic/twist.hpp"

#include "padic/padic_core.hpp"

#include <stdexcept>

namespace padic {

namespace {

Z factorial(long n) {
    Z f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

long digits(long n, long p) {
    long c = 0;
    for (; n > 0; n /= p) ++c;
    return c;
}

/// inf_{n >= n0} v(n!) + n e.
Valuation factorial_line_up(long p, long n0, const Q& e) {
    const Q gamma = e + varpi_val(p);
    if (gamma <= 0) return Valuation::neg_inf();
    Q best = Q(vp_factorial(n0, p)) + Q(n0) * e;
    for (long n = n0 + 1; n < (1L << 24); ++n) {
        if (Q(n) * gamma - Q(digits(n, p)) > best) return Valuation(best);
        best = std::min(best, Q(Q(vp_factorial(n, p)) + Q(n) * e));
    }
    throw std::runtime_error("factorial_line_up: scan did not terminate");
}

/// inf_{n >= n0} n w - v(n!), n0 >= 1.
Valuation factorial_line_down(long p, long n0, const Q& w) {
    const Q gamma = w - varpi_val(p);
    if (gamma < 0) return Valuation::neg_inf();
    if (gamma == 0) return Valuation(varpi_val(p));  // s_p(n)/(p-1), smallest at powers of p
    Q best = Q(n0) * w - Q(vp_factorial(n0, p));
    for (long n = n0 + 1; n < (1L << 24); ++n) {
        if (Q(n) * gamma > best) return Valuation(best);
        best = std::min(best, Q(Q(n) * w - Q(vp_factorial(n, p))));
    }
    throw std::runtime_error("factorial_line_down: scan did not terminate");
}

RationalFunction gx_minus_x(const MobiusMap& g) { return g.act_x() - RationalFunction::x(); }

}  // namespace

TwistData h_sequence(const RationalFunction& u, long d, long p, long N) {
    require_prime(p);
    if (d == 0 || d % p == 0) throw std::invalid_argument("h_sequence: d must be nonzero and prime to p");
    if (u.is_zero()) throw std::invalid_argument("h_sequence: u must be nonzero");
    if (N < 0) throw std::invalid_argument("h_sequence: N must be >= 0");
    TwistData t{u, d, p, {}};
    t.h.reserve(N + 1);
    t.h.push_back(RationalFunction(Q(1)));
    if (N == 0) return t;
    RationalFunction h1 = dlog(u) * Q(Q(-1) / Q(d));
    t.h.push_back(h1);
    for (long l = 1; l < N; ++l) t.h.push_back((t.h[l].derivative() + h1 * t.h[l]) * Q(Q(1) / Q(l + 1)));
    return t;
}

RationalFunction h_monomial(const Q& alpha, long k, long d, long n) {
    return RationalFunction::power(alpha, -n) * binom_q(Q(Q(-k) / Q(d)), n);
}

bool rhz_sum_identity(const TwistData& t, long L) {
    if (L > t.depth()) throw std::invalid_argument("rhz_sum_identity: not enough h terms");
    if (L == 0) return true;
    const auto& h1 = t.h[1];
    std::vector<RationalFunction> dp{h1};  // d^[j](h1)
    for (long j = 1; j < L; ++j) dp.push_back(dp.back().derivative() * Q(Q(1) / Q(j)));
    for (long l = 0; l < L; ++l) {
        RationalFunction rhs;
        for (long n = 0; n <= l; ++n) rhs += t.h[n] * dp[l - n];
        if (t.h[l + 1] * Q(l + 1) != rhs) return false;
    }
    return true;
}

SkewLaurentSeries theta_apply(const TwistData& t, const SkewLaurentSeries& Q_) {
    if (!Q_.finite_exact() || !Q_.nonnegative())
        throw std::invalid_argument("theta_apply: needs a finite exact series with nonnegative degrees");
    long top = std::max(0L, Q_.max_degree());
    if (top > t.depth()) throw std::invalid_argument("theta_apply: h sequence too short");
    SkewLaurentSeries r(0, top);
    for (auto& [n, a] : Q_.coeffs()) {
        Z nf = factorial(n);
        for (long al = 0; al <= n; ++al) {
            if (t.h[n - al].is_zero()) continue;
            r.add_to(al, a * t.h[n - al] * Q(Q(nf) / Q(factorial(al))));
        }
    }
    return r;
}

SkewLaurentSeries theta_d(const TwistData& t) {
    if (t.depth() < 1) throw std::invalid_argument("theta_d: h sequence too short");
    SkewLaurentSeries r(0, 1);
    r.set(1, RationalFunction(Q(1)));
    r.set(0, t.h[1]);
    return r;
}

SkewLaurentSeries xi_build(const TwistData& t, long K, const Cheese* X) {
    if (K < 1) throw std::invalid_argument("xi_build: K must be >= 1");
    if (K - 1 > t.depth()) throw std::invalid_argument("xi_build: h sequence too short");
    SkewLaurentSeries r(-K, -1);
    Z f = 1;  // (n-1)!
    for (long n = 1; n <= K; ++n) {
        if (n > 1) f *= n - 1;
        Q s = Q(f) * (n % 2 ? Q(1) : Q(-1));
        r.set(-n, t.h[n - 1] * s);
    }
    r.set_tail_lo(X ? factorial_line_up(t.p, K, X->rho_exp()) : Valuation::neg_inf());
    return r;
}

MicroInverseReport micro_inverse_residual(const RationalFunction& u, long d, long p, long K, const Cheese& X,
                                          long report_lo) {
    if (report_lo > -K) throw std::invalid_argument("micro_inverse_residual: report window must reach -K");
    auto t = h_sequence(u, d, p, K);
    auto xi = xi_build(t, K);
    xi.set_tail_lo(Valuation::inf());  // exact products of the truncation
    auto th = theta_d(t);
    StarOptions o;
    o.lo = report_lo;
    o.hi = 1;
    auto one = SkewLaurentSeries::scalar(RationalFunction(Q(1)));
    auto l = star_product(xi, th, o) - one;
    auto r = star_product(th, xi, o) - one;
    MicroInverseReport rep;
    rep.K = K;
    rep.threshold = vp_factorial(K - 1, p);
    rep.ok = true;
    for (long k = report_lo; k <= 1; ++k) {
        rep.left[k] = sup_norm(l.coeff(k), X);
        rep.right[k] = sup_norm(r.coeff(k), X);
        Valuation th_v(rep.threshold);
        if (rep.left[k] < th_v || rep.right[k] < th_v) rep.ok = false;
    }
    return rep;
}

Valuation beta_tail(const MobiusMap& g, long N, const Cheese& X) {
    Valuation w = sup_norm(gx_minus_x(g), X);
    if (w.is_inf()) return Valuation::inf();
    return factorial_line_down(X.p(), N + 1, w.value());
}

SkewLaurentSeries beta_build(const MobiusMap& g, long N, const Cheese* X) {
    if (N < 0) throw std::invalid_argument("beta_build: N must be >= 0");
    if (X && !g.in_G_r(X->p(), X->r_exp())) throw std::invalid_argument("beta_build: g is not in G_r");
    SkewLaurentSeries r(0, N);
    RationalFunction t = gx_minus_x(g), tn(Q(1));
    Z nf = 1;
    for (long n = 0; n <= N; ++n) {
        if (n > 0) {
            nf *= n;
            tn *= t;
        }
        r.set(n, tn * Q(Q(1) / Q(nf)));
    }
    r.set_tail_hi(X ? beta_tail(g, N, *X) : Valuation::inf());
    if (!X && !t.is_zero()) r.set_tail_hi(Valuation::neg_inf());
    return r;
}

SigmaRhoReport sigma_rho_check(const MobiusMap& g, const MobiusMap& h, long m_max, long N, const Cheese& X) {
    SigmaRhoReport rep;
    rep.m_max = m_max;
    auto bg = beta_build(g, std::max(N, m_max), &X);
    rep.action_exact = true;
    RationalFunction gx = g.act_x();
    for (long m = 0; m <= m_max; ++m)
        if (apply_to_function(bg, RationalFunction::x().pow(m)) != gx.pow(m)) rep.action_exact = false;

    StarOptions o;
    o.lo = 0;
    o.hi = N;
    o.X = &X;
    auto prod = star_product(beta_build(g, N, &X), beta_build(h, N, &X), o);
    auto ref = beta_build(g * h, N, &X);
    rep.homomorphism = true;
    for (long k = 0; k <= N; ++k) {
        RationalFunction diff = ref.coeff(k) - prod.coeff(k);
        if (prod.exact(k)) {
            ++rep.exact_degrees;
            if (!diff.is_zero()) rep.homomorphism = false;
        } else {
            ++rep.bounded_degrees;
            if (sup_norm(diff, X) < prod.bound(k)) rep.homomorphism = false;
        }
    }
    return rep;
}

RationalFunction cocycle(const TwistData& t, const MobiusMap& g, long N) {
    if (N > t.depth()) throw std::invalid_argument("cocycle: h sequence too short");
    RationalFunction s = gx_minus_x(g), sm(Q(1)), c;
    for (long m = 0; m <= N; ++m) {
        if (m > 0) sm *= s;
        c += sm * t.h[m];
    }
    return c;
}

CocycleReport cocycle_check(const RationalFunction& u, const RationalFunction& v, long d, const MobiusMap& g,
                            long N, const Cheese& X) {
    const long p = X.p();
    CocycleReport rep;
    auto tu = h_sequence(u, d, p, N), tv = h_sequence(v, d, p, N), tuv = h_sequence(u * v, d, p, N);
    RationalFunction s = gx_minus_x(g);
    std::vector<RationalFunction> sp{RationalFunction(Q(1))};
    for (long i = 1; i <= 2 * N; ++i) sp.push_back(sp.back() * s);

    // theta(beta_N) has d^[alpha] coefficient s^alpha c_{N-alpha}
    auto bN = beta_build(g, N);
    bN.set_tail_hi(Valuation::inf());  // the truncation itself
    auto tb = theta_apply(tu, bN);
    rep.theta_beta_exact = true;
    for (long al = 0; al <= N; ++al) {
        RationalFunction want = sp[al] * cocycle(tu, g, N - al) * Q(Q(1) / Q(factorial(al)));
        if (tb.coeff(al) != want) rep.theta_beta_exact = false;
    }

    RationalFunction cu = cocycle(tu, g, N), cv = cocycle(tv, g, N), cuv = cocycle(tuv, g, N);
    RationalFunction cross;
    for (long i = 0; i <= N; ++i)
        for (long j = N + 1 - i; j <= N; ++j) cross += sp[i + j] * tu.h[i] * tv.h[j];
    rep.multiplicative_exact = (cu * cv - cuv == cross);

    Valuation w = sup_norm(s, X);
    rep.power_residual = sup_norm(cu.pow(d) - u / g.act(u), X);
    rep.power_threshold = w.is_inf() ? Valuation::inf() : Valuation(Q(Q(N + 1) * (w.value() + X.rho_exp())));
    rep.power_ok = rep.power_residual >= rep.power_threshold;
    rep.unit_part = sup_norm(cu - RationalFunction(Q(1)), X);
    rep.small_unit = rep.unit_part > Valuation(0);
    return rep;
}

bool hun_estimate_holds(const TwistData& t, const Cheese& X) {
    for (long m = 0; m <= t.depth(); ++m)
        if (sup_norm(t.h[m], X) < Valuation(Q(Q(m) * X.rho_exp()))) return false;
    return true;
}

SkewLaurentSeries to_skew(const FirstOrderOperator& op) {
    SkewLaurentSeries r(0, 1);
    r.set(1, op.coeff_d);
    r.set(0, op.coeff_0);
    return r;
}

}  // namespace padic
