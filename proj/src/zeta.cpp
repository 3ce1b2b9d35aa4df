#include "padic/zeta.hpp"

#include "padic/padic_core.hpp"
#include "padic/twist.hpp"

#include <stdexcept>
#include <string>

namespace padic {

namespace {

Q binom_step(const Q& b, const Q& a, long m) { return b * (a - (m - 1)) / Q(m); }

/// Polynomial 1 - y^e.
Poly one_minus_pow(long e) {
    std::vector<Q> c(e + 1, Q(0));
    c[0] = 1;
    c[e] -= 1;
    return Poly(c);
}

void require_order(long order, long min, const char* who) {
    if (order < min) throw std::invalid_argument(std::string(who) + ": order must be >= " + std::to_string(min));
}

}  // namespace

ZetaParams zeta_params(long q, long k, long d) {
    if (q < 2) throw std::invalid_argument("zeta_params: q must be a prime power >= 2");
    long p = 2;
    while (q % p) ++p;
    long f = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++f;
    }
    if (r != 1) throw std::invalid_argument("zeta_params: q must be a prime power");
    if (d < 1 || (q + 1) % d) throw std::invalid_argument("zeta_params: d must divide q+1");
    if (d % p == 0) throw std::invalid_argument("zeta_params: p must not divide d");
    if (k < 1 || k > d) throw std::invalid_argument("zeta_params: need 1 <= k <= d");
    return ZetaParams{p, f, q, k, d};
}

ZetaParams zeta_params_nontrivial(long q, long k, long d) {
    auto z = zeta_params(q, k, d);
    if (k == d) throw std::invalid_argument("zeta: k = d is the trivial twist (qk/d is an integer); excluded");
    return z;
}

CocycleC build_cocycle_c(long q, long k, long d, long order) {
    auto z = zeta_params(q, k, d);
    require_order(order, 1, "build_cocycle_c");
    const Poly y = Poly::x(), one(Q(1));
    Poly num = y * (one - y).pow(q) - y.pow(q) * (one - y);
    Poly den = y - y.pow(q);
    CocycleC r;
    // ratio as a series: (num/y) / (1 - y^{q-1})
    auto [num_y, rem] = num.divmod(y);
    if (!rem.is_zero()) throw std::logic_error("build_cocycle_c: numerator not divisible by y");
    QSeries R = QSeries::from_poly(num_y, order) * QSeries::binomial(Q(-1), q - 1, order);
    // f = (num - den) / (p y^2)
    auto [fq, frem] = (num - den).divmod(y.pow(2));
    r.f = fq * Q(Q(1) / Q(z.p));
    r.f_integral = frem.is_zero();
    for (auto& a : r.f.coeffs()) r.f_integral = r.f_integral && a.get_den() == 1;
    if (q <= 3) r.ratio = RationalFunction(num) / RationalFunction(den);
    r.c = R.pow(z.kd());
    QSeries cd = QSeries::one(order), Rk = QSeries::one(order);
    for (long i = 0; i < d; ++i) cd = cd * r.c;
    for (long i = 0; i < k; ++i) Rk = Rk * R;
    r.power_exact = (cd == Rk);
    return r;
}

AlphaJ alpha_and_J(long q, long k, long d, long order) {
    auto z = zeta_params_nontrivial(q, k, d);
    require_order(order, 1, "alpha_and_J");
    AlphaJ r;
    r.eps = QSeries::binomial(z.kd(), q - 1, order);
    QSeries lhs(order);
    Q b = 1;
    for (long m = 0; (q - 1) * m < order; ++m) {
        if (m > 0) b = binom_step(b, z.kd(), m);
        Q den = Q((q - 1) * m) - z.qkd() - 1;
        if (den == 0) throw std::logic_error("alpha_and_J: vanishing denominator");
        Q a = (m % 2 ? Q(-1) : Q(1)) * b / den;
        r.alpha.push_back(a);
        lhs.at((q - 1) * m) = (Q((q - 1) * m) - z.qkd() - 1) * a;
    }
    r.identity = (lhs == r.eps);
    return r;
}

QSeries zeta_series(long q, long k, long d, long order) {
    auto z = zeta_params_nontrivial(q, k, d);
    require_order(order, q, "zeta_series");
    QSeries S(order);
    Q b = 1;  // binom(k/d, m)
    for (long m = 0; (q - 1) * m < order; ++m) {
        if (m > 0) b = binom_step(b, z.kd(), m);
        const long off = (q - 1) * m;
        const Q mu = 1 + z.qkd() - Q(off);
        const Q cm = (m % 2 ? Q(-1) : Q(1)) * b;
        Q bb = 1;  // binom(mu - 1, j)
        for (long j = 0; off + j < order; ++j) {
            if (j > 0) bb = binom_step(bb, mu - 1, j);
            Q t = -bb / Q(j + 1);
            if (j % 2) t = -t;
            S.at(off + j) += cm * t;
        }
    }
    return QSeries::binomial(-z.kd(), q - 1, order) * S * Q(z.p);
}

QSeries zeta_divj(long q, long k, long d, long order) {
    auto z = zeta_params_nontrivial(q, k, d);
    require_order(order, q, "zeta_divj");
    auto aj = alpha_and_J(q, k, d, order);
    QSeries T(order);
    for (long m = 0; m < static_cast<long>(aj.alpha.size()); ++m) {
        const long off = (q - 1) * m;
        const Q mu = 1 + z.qkd() - Q(off);
        Q bb = 1;  // binom(mu, j+1), built from binom(mu, 0)
        for (long j = 0; off + j < order; ++j) {
            bb = binom_step(bb, mu, j + 1);
            Q t = (j % 2 ? bb : -bb);  // (-1)^{j+1}
            T.at(off + j) += aj.alpha[m] * t;
        }
    }
    return aj.eps.inverse() * T * Q(-z.p);
}

QSeries twist_h1_series(long q, long k, long d, long order) {
    auto z = zeta_params(q, k, d);
    QSeries u = QSeries::binomial(Q(-k), q - 1, order + 1);
    return u.derivative() * u.inverse().truncate(order) * Q(Q(-1) / Q(z.d));
}

QSeries twist_h1(long q, long k, long d, long order) {
    auto z = zeta_params(q, k, d);
    if (q > 3) return twist_h1_series(q, k, d, order);
    RationalFunction u = RationalFunction(one_minus_pow(q - 1)).pow(-k);
    auto t = h_sequence(u, z.d, z.p, 1);
    return QSeries::from_ratfun(t.h[1], order);
}

QSeries nabla(const ZetaParams& z, const QSeries& h1, const QSeries& f) {
    const long n = f.order();
    if (h1.order() < n) throw std::invalid_argument("nabla: h1 series too short");
    QSeries a = f.derivative().shift_up(2);
    QSeries b = (h1.truncate(n) * f).shift_up(2);
    QSeries c = f.shift_up(1) * z.qkd();
    QSeries r = (a + b - c).truncate(n + 1);
    return r * Q(Q(-1) / Q(z.p));
}

QSeries unique_solution(long q, long k, long d, long order) {
    auto z = zeta_params_nontrivial(q, k, d);
    require_order(order, 1, "unique_solution");
    auto cc = build_cocycle_c(q, k, d, order + 1);
    QSeries eps = QSeries::binomial(z.kd(), q - 1, order + 1);
    QSeries rhs = eps * (cc.c - QSeries::one(order + 1)) * Q(-z.p);
    if (rhs[0] != 0) throw std::logic_error("unique_solution: c - 1 has a constant term");
    QSeries G(order);
    for (long n = 0; n < order; ++n) {
        Q den = Q(n) - z.qkd();
        if (den == 0) throw std::logic_error("unique_solution: qk/d is an integer");
        G.at(n) = rhs[n + 1] / den;
    }
    return QSeries::binomial(-z.kd(), q - 1, order) * G;
}

OdeReport ode_residual(long q, long k, long d, long order, long prec) {
    auto z = zeta_params_nontrivial(q, k, d);
    require_order(order, q, "ode_residual");
    OdeReport rep;
    rep.order = order;
    rep.prec = prec;
    QSeries zeta = zeta_series(q, k, d, order);
    QSeries h1 = twist_h1(q, k, d, order);
    auto cc = build_cocycle_c(q, k, d, order + 1);
    QSeries cm1 = cc.c - QSeries::one(order + 1);
    rep.residual = nabla(z, h1, zeta) - cm1;
    rep.exact_zero = rep.residual.is_zero();

    // the same computation on p-adic reductions
    const long p = z.p;
    auto zp = PadicSeries::from_q(zeta, p, prec);
    auto hp = PadicSeries::from_q(h1, p, prec);
    auto cp = PadicSeries::from_q(cm1, p, prec);
    const PadicNumber inv_p = PadicNumber::from_rational(Q(Q(-1) / Q(p)), p, prec);
    const PadicNumber qkd = PadicNumber::from_rational(z.qkd(), p, prec);
    PadicSeries res(order + 1, p, prec);
    for (long j = 0; j <= order; ++j) {
        PadicNumber acc = PadicNumber::zero(p, prec);
        if (j >= 1) {
            acc += zp[j - 1] * PadicNumber::from_int(j - 1, p, prec);
            acc = acc - zp[j - 1] * qkd;
        }
        for (long i = 0; i + 2 <= j; ++i) acc += hp[i] * zp[j - 2 - i];
        res.at(j) = acc * inv_p - cp[j];
    }
    rep.padic_residual = res;
    rep.precision_floor = res.precision_floor();
    rep.padic_zero = res.all_zero();
    rep.unique_match = (unique_solution(q, k, d, order) == zeta);
    return rep;
}

bool eta_commutes(const QSeries& f) {
    QSeries lhs = f.derivative().shift_up(2).compose_eta();
    QSeries rhs = f.compose_eta().derivative().shift_up(2);
    return lhs == rhs;
}

PadicNumber phi_series_coefficient(const ZetaParams& z, long n, long prec) {
    const long q = z.q, p = z.p, L = (q - 1) * n + 1;
    const long W = prec + 20;
    auto P = [&](const Q& a) { return PadicNumber::from_rational(a, p, W); };
    std::vector<PadicNumber> inv(L + 1);
    for (long j = 0; j <= L; ++j) inv[j] = P(Q(1, j + 1));
    // S(y) = sum_m (-1)^m binom(k/d,m) y^{(q-1)m} ((1-y)^{mu_m} - 1)/(mu_m y)
    PadicSeries S(L, p, W);
    PadicNumber b = P(Q(1));
    for (long m = 0; m <= n; ++m) {
        if (m > 0) b = b * P(-(z.kd() - (m - 1)) / Q(m));  // (-1)^m binom(k/d, m)
        const long off = (q - 1) * m;
        const Q mu = 1 + z.qkd() - Q(off);
        PadicNumber bb = P(Q(1));
        for (long j = 0; off + j < L; ++j) {
            if (j > 0) bb = bb * P((mu - j) / Q(j));
            PadicNumber t = bb * inv[j];
            S.at(off + j) += (j % 2 ? t : -t) * b;
        }
    }
    // Phi, then the s-series (1-s)^{k/d} (1-s)^{-k/d}; times (1/p) p
    PadicSeries phiS = S.project(q - 1);
    auto eps_inv = PadicSeries::from_q(QSeries::binomial(-z.kd(), 1, n + 1, 's'), p, W);
    auto eps = PadicSeries::from_q(QSeries::binomial(z.kd(), 1, n + 1, 's'), p, W);
    PadicSeries zeta_s = eps_inv * phiS.truncate(n + 1) * P(Q(p));
    PadicSeries out = eps * zeta_s * P(Q(1, p));
    return out[n];
}

namespace {

PhiRow phi_row(const ZetaParams& z, long N, long prec, long series_limit, bool parallel) {
    const long kk = z.k * (z.q + 1) / z.d;
    auto idx = special_index(z.p, z.f, kk, N);
    PhiRow row;
    row.N = N;
    row.n = idx.n;
    row.M = idx.M;
    row.s = idx.s;
    row.bound = Q(3 - N, 2);
    row.bound.canonicalize();
    auto est = parallel ? sum_estimate(idx, prec, SumSigns::Series) : sum_estimate_serial(idx, prec, SumSigns::Series);
    row.v_carry = est.v_sum;
    row.v_dominant = est.v_dominant;
    if (idx.n <= series_limit) {
        PadicNumber c = phi_series_coefficient(z, idx.n, prec);
        row.series_done = true;
        row.v_series = c.valuation();
        long base = c.is_zero() ? c.absprec() : c.val();
        row.agree_digits = c.agreement(est.sum) - base;
        row.agree = row.v_series == row.v_carry && 2 * row.agree_digits >= prec;
    } else {
        row.agree = true;
    }
    return row;
}

}  // namespace

std::vector<PhiRow> phi_valuation_profile(long q, long k, long d, const std::vector<long>& Ns, long prec,
                                          long series_limit) {
    auto z = zeta_params_nontrivial(q, k, d);
    std::vector<PhiRow> rows(Ns.size());
    std::vector<std::string> err(Ns.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(Ns.size()); ++i) {
        try {
            rows[i] = phi_row(z, Ns[i], prec, series_limit, Ns.size() == 1);
        } catch (const std::exception& e) {
            err[i] = e.what();
        }
    }
    for (auto& e : err)
        if (!e.empty()) throw std::runtime_error("phi_valuation_profile: " + e);
    return rows;
}

std::vector<PhiRow> phi_valuation_profile_serial(long q, long k, long d, const std::vector<long>& Ns, long prec,
                                                 long series_limit) {
    auto z = zeta_params_nontrivial(q, k, d);
    std::vector<PhiRow> rows;
    for (long N : Ns) rows.push_back(phi_row(z, N, prec, series_limit, false));
    return rows;
}

XVzeroReport xvzero_series(long q, long k, long d, long order, long prec) {
    auto z = zeta_params_nontrivial(q, k, d);
    if (q > 3) throw std::invalid_argument("xvzero_series: needs q in {2, 3} so that w has rational poles");
    require_order(order, q, "xvzero_series");
    const long p = z.p;
    XVzeroReport rep;
    rep.order = order;
    // w = (x^q - p^{q-1} x)^{-k}
    const Poly x = Poly::x();
    Poly base = x.pow(q) - x * Q(ppow(p, q - 1));
    RationalFunction w = RationalFunction(base).pow(-k);
    auto t = h_sequence(w, d, p, order);
    // transport to y = p/x: g.f = f(phi) with phi(y) = p/y for (a,b,c,d) = (0,-p,-1,0)
    std::vector<QSeries> hy;
    hy.reserve(order + 1);
    for (long n = 0; n <= order; ++n) hy.push_back(QSeries::from_ratfun(t.h[n].compose_mobius(0, -p, -1, 0), order));
    rep.F = QSeries(order);
    rep.cocycle = QSeries(order);
    Q mp = 1;  // (-p)^n
    for (long n = 0; n <= order; ++n) {
        if (n > 0) {
            mp *= -p;
            rep.F += hy[n - 1] * Q(-mp / Q(n));
        }
        rep.cocycle += hy[n] * mp;
    }
    QSeries h1 = twist_h1(q, k, d, order);
    rep.nabla_F = nabla(z, h1, rep.F).truncate(order);
    QSeries target = QSeries::one(order) - rep.cocycle;
    rep.residual_zero = (rep.nabla_F == target);
    rep.matches_c = (rep.cocycle == build_cocycle_c(q, k, d, order).c);
    rep.matches_zeta = (-rep.F == zeta_series(q, k, d, order));
    auto res = PadicSeries::from_q(rep.nabla_F, p, prec) - PadicSeries::from_q(target, p, prec);
    rep.padic_ok = res.all_zero();
    return rep;
}

Valuation radius_diagnostic(const PadicSeries& f) {
    Valuation v = Valuation::inf();
    for (long n = 0; n < f.order(); ++n) {
        Valuation a = f[n].valuation();
        if (!a.is_inf()) v = vmin(v, a + Valuation(n));
    }
    return v;
}

}  // namespace padic
