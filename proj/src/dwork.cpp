#include "padic/dwork.hpp"

#include "padic/padic_core.hpp"

#include <climits>
#include <stdexcept>

namespace padic {

namespace {

Z factorial(long n) {
    Z f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

/// x^t as a rational function; t may be negative.
RationalFunction xpow(long t) { return RationalFunction::power(Q(0), t); }

SkewLaurentSeries scalar(const RationalFunction& f) { return SkewLaurentSeries::scalar(f); }

/// x d
SkewLaurentSeries euler() { return SkewLaurentSeries::monomial(RationalFunction::x(), 1); }

/// Compare a and b on [lo, upto]; both must be exact there.
bool agree_through(const SkewLaurentSeries& a, const SkewLaurentSeries& b, long lo, long upto, long* zeros) {
    for (long k = lo; k <= upto; ++k) {
        if (!a.exact(k) || !b.exact(k)) throw std::logic_error("dwork: degree outside the exact range");
        if (a.coeff(k) != b.coeff(k)) return false;
        if (zeros) ++*zeros;
    }
    return true;
}

void require_q(long q) {
    if (q < 2) throw std::invalid_argument("dwork: q must be >= 2");
}

}  // namespace

SkewLaurentSeries DworkOperator::op() const {
    SkewLaurentSeries s(0, K);
    for (long k = 0; k <= K; ++k) s.set(k, xpow(k) * Q(Q(c[k]) / Q(factorial(k))));
    s.set_tail_hi(Valuation::neg_inf());
    return s;
}

DworkOperator dwork_build(long q, long K) {
    require_q(q);
    if (K < q) throw std::invalid_argument("dwork_build: K must be >= q");
    DworkOperator H{q, K, {}};
    for (long k = 0; k <= K; ++k) {
        Z s = 0;
        for (long j = 0; j <= k; j += q) s += binom_z(k, j) * ((k - j) % 2 ? -1 : 1);
        H.c.push_back(s);
    }
    return H;
}

SkewLaurentSeries dwork_prime(long q, long K) {
    require_q(q);
    const long s = q - 1;
    SkewLaurentSeries r(0, K);
    for (long n = s; n <= K; ++n) {
        Z h = 0;
        for (long j = s; j <= n; j += q) h += binom_z(n, j) * ((n - j) % 2 ? -1 : 1);
        r.set(n, xpow(n - s) * Q(Q(h) / Q(factorial(n))));
    }
    r.set_tail_hi(Valuation::neg_inf());
    return r;
}

SkewLaurentSeries dwork_conjugate(long q, long K, long i) {
    if (i < 0 || i >= q) throw std::invalid_argument("dwork_conjugate: need 0 <= i < q");
    auto b = star_product(dwork_prime(q, K), scalar(xpow(q - 1 - i)));
    return star_product(scalar(xpow(i)), b);
}

long exact_through(const SkewLaurentSeries& s) {
    long k = s.lo();
    while (k <= s.hi() && s.exact(k)) ++k;
    if (k > s.hi() && s.tail_hi().is_inf()) return LONG_MAX;
    return k - 1;
}

DworkReport dwork_identities(long q, long K) {
    require_q(q);
    if (K < 3 * q) throw std::invalid_argument("dwork_identities: K must be >= 3q");
    DworkReport rep;
    rep.q = q;
    rep.K = K;
    auto H = dwork_build(q, K).op();
    auto one = scalar(RationalFunction(Q(1)));

    auto HH = star_product(H, H);
    SkewLaurentSeries part(0, 0);
    for (long i = 0; i < q; ++i) part = part + dwork_conjugate(q, K, i);
    auto Hs = star_product(dwork_prime(q, K), scalar(xpow(q - 1)));

    long e = std::min({exact_through(HH), exact_through(part), exact_through(Hs), K});
    rep.checked_through = e;
    if (e < K - q) throw std::logic_error("dwork_identities: exact range shorter than K - q");
    rep.idempotent = agree_through(HH, H, 0, e, &rep.zero_coefficients);
    rep.partition = agree_through(part, one, 0, e, &rep.zero_coefficients);
    rep.prime_consistent = agree_through(Hs, H, 0, e, &rep.zero_coefficients);

    rep.projector = true;
    for (long j = 0; j <= K; ++j) {
        RationalFunction want = j % q == 0 ? xpow(j) : RationalFunction();
        if (apply_to_function(H, xpow(j)) != want) rep.projector = false;
    }
    return rep;
}

FrobeniusReport frobenius_relation(long q, const Q& lambda, long i, long K) {
    require_q(q);
    if (i < 0 || i >= q) throw std::invalid_argument("frobenius_relation: need 0 <= i < q");
    auto H = dwork_build(q, K).op();
    const Q iq = Q(1) / Q(q);
    auto xi = scalar(xpow(i));
    // B = H x^{-i} = H' x^{q-1-i}
    auto B = star_product(dwork_prime(q, K), scalar(xpow(q - 1 - i)));
    auto A = star_product(euler(), H) * iq - H * Q((lambda - Q(i)) * iq);
    auto lhs = star_product(xi, star_product(A, star_product(H, B)));
    auto theta = euler() * iq - scalar(RationalFunction(Q(lambda * iq)));
    auto rhs = star_product(theta, star_product(xi, B));

    FrobeniusReport rep;
    long e = std::min(exact_through(lhs), exact_through(rhs));
    rep.checked_through = e;
    rep.holds = agree_through(lhs, rhs, 0, std::min(e, K), nullptr);

    SkewLaurentSeries sum(0, 0);
    for (long j = 0; j < q; ++j) sum = sum + star_product(theta, dwork_conjugate(q, K, j));
    long es = std::min(exact_through(sum), K);
    rep.checked_through = std::min(rep.checked_through, es);
    rep.sums_to_euler = agree_through(sum, theta, 0, es, nullptr);
    return rep;
}

SkewLaurentSeries euler_apply(long n, const std::vector<std::pair<long, Q>>& f, long m) {
    if (n < 0) throw std::invalid_argument("euler_apply: n must be >= 0");
    RationalFunction g;
    for (auto& [t, a] : f) g += xpow(t) * Q(a * binom_q(Q(t - m), n));
    return SkewLaurentSeries::monomial(g, m);
}

bool euler_iterate_consistent(long n, const Poly& f, long m) {
    auto t = euler();
    auto D = SkewLaurentSeries::monomial(RationalFunction(f), m);
    auto cur = D;
    for (long j = 0; j < n; ++j) {
        auto ad = star_product(t, cur) - star_product(cur, t);
        cur = ad - cur * Q(j);
    }
    std::vector<std::pair<long, Q>> terms;
    for (long k = 0; k <= f.deg(); ++k)
        if (f.coeff(k) != 0) terms.push_back({k, f.coeff(k)});
    auto want = euler_apply(n, terms, m) * Q(factorial(n));
    if (cur.coeffs() != want.coeffs()) return false;
    // integrality: for integral f the composition is divisible by n!
    bool f_integral = true;
    for (auto& fc : f.coeffs()) f_integral = f_integral && fc.get_den() == 1;
    if (f_integral)
        for (auto& [k, a] : cur.coeffs()) {
            Poly q = (a * Q(Q(1) / Q(factorial(n)))).to_poly();
            for (auto& c : q.coeffs())
                if (c.get_den() != 1) return false;
        }
    return true;
}

}  // namespace padic
