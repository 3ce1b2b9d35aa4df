#include "padic/level.hpp"

#include "padic/padic_core.hpp"

#include <stdexcept>

namespace padic {

namespace {

Z factorial(long n) {
    Z f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

long ppow_long(long p, long m) {
    long r = 1;
    for (long i = 0; i < m; ++i) {
        if (r > (1L << 40)) throw std::overflow_error("level: p^m too large");
        r *= p;
    }
    return r;
}

void check(long p, long m) {
    require_prime(p);
    if (m < 0) throw std::invalid_argument("level: m must be >= 0");
}

}  // namespace

long level_q(long k, long p, long m) {
    check(p, m);
    if (k < 0) throw std::invalid_argument("level_q: k must be >= 0");
    return k / ppow_long(p, m);
}

Q level_factor(long k, long p, long m) { return Q(factorial(level_q(k, p, m))) / Q(factorial(k)); }

Z brace_binom(long k, long kp, long p, long m) {
    if (kp < 0 || kp > k) throw std::invalid_argument("brace_binom: need 0 <= k' <= k");
    Z num = factorial(level_q(k, p, m));
    Z den = factorial(level_q(kp, p, m)) * factorial(level_q(k - kp, p, m));
    return num / den;
}

Q angle_binom(long k, long kp, long p, long m) {
    return Q(binom_z(k, kp)) / Q(brace_binom(k, kp, p, m));
}

Q eps_valuation(long n, long p, long m) {
    if (n < 0) throw std::invalid_argument("eps_valuation: n must be >= 0");
    return Q(vp_factorial(n, p) - vp_factorial(level_q(n, p, m), p)) - Q(n) * varpi_m_val(p, m);
}

Q level_unit(long k, long p, long m) {
    long pm = ppow_long(p, m);
    if (k < 0) throw std::invalid_argument("level_unit: k must be >= 0");
    // d^<p^j> = d^[p^j] for j < m and d^<p^m> = d^[p^m], so the product is d^k / prod (p^j)!^{c_j} (p^m)!^c.
    Q u = Q(factorial(k / pm)) / Q(factorial(k));
    long r = k % pm, pj = 1;
    for (long j = 0; j < m; ++j, pj *= p) {
        long cj = (r / pj) % p;
        for (long t = 0; t < cj; ++t) u *= Q(factorial(pj));
    }
    for (long t = 0; t < k / pm; ++t) u *= Q(factorial(pm));
    return u;
}

DividedPowerOperator::DividedPowerOperator(long p, long m) : p_(p), m_(m) { check(p, m); }

DividedPowerOperator DividedPowerOperator::basis(long p, long m, long k) {
    DividedPowerOperator r(p, m);
    r.set(k, RationalFunction(Q(1)));
    return r;
}

RationalFunction DividedPowerOperator::coeff(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? RationalFunction() : it->second;
}

void DividedPowerOperator::set(long k, const RationalFunction& a) {
    if (k < 0) throw std::invalid_argument("DividedPowerOperator: negative degree");
    if (a.is_zero()) c_.erase(k);
    else c_[k] = a;
}

DividedPowerOperator DividedPowerOperator::from_skew(const SkewLaurentSeries& u, long p, long m) {
    if (!u.finite_exact() || !u.nonnegative())
        throw std::invalid_argument("DividedPowerOperator::from_skew: needs a finite exact skew polynomial");
    DividedPowerOperator r(p, m);
    for (auto& [k, a] : u.coeffs()) r.set(k, a * Q(Q(1) / level_factor(k, p, m)));
    return r;
}

SkewLaurentSeries DividedPowerOperator::to_skew() const {
    long hi = c_.empty() ? 0 : c_.rbegin()->first;
    SkewLaurentSeries s(0, hi);
    for (auto& [k, a] : c_) s.set(k, a * level_factor(k, p_, m_));
    return s;
}

DividedPowerOperator DividedPowerOperator::operator*(const DividedPowerOperator& o) const {
    if (p_ != o.p_ || m_ != o.m_) throw std::invalid_argument("DividedPowerOperator: mismatched level");
    return from_skew(star_product_serial(to_skew(), o.to_skew()), p_, m_);
}

}  // namespace padic
