#include "padic/padic_core.hpp"

#include <stdexcept>

namespace padic {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long i = 2; i * i <= p; ++i)
        if (p % i == 0) return false;
    return true;
}

void require_prime(long p) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
}

Valuation vp_rational(const Q& a, long p) {
    if (a == 0) return Valuation::inf();
    return Valuation(vp_q(a, p));
}

long vp_q(const Q& a, long p) {
    if (a == 0) throw std::invalid_argument("vp_q: zero");
    return vp_int(a.get_num(), p) - vp_int(a.get_den(), p);
}

long digit_sum(long n, long p) {
    long s = 0;
    while (n > 0) {
        s += n % p;
        n /= p;
    }
    return s;
}

long vp_factorial(long n, long p) {
    if (n < 0) throw std::invalid_argument("vp_factorial: negative argument");
    return (n - digit_sum(n, p)) / (p - 1);
}

Q varpi_val(long p) { return Q(1, p - 1); }

Q varpi_m_val(long p, long m) {
    Z pm = ppow(p, m);
    Q r(pm - 1, pm * (p - 1));
    r.canonicalize();
    return r;
}

Q binom_q(const Q& lam, long n) {
    if (n < 0) return 0;
    Q r = 1;
    for (long i = 1; i <= n; ++i) {
        r *= (lam - i + 1);
        r /= i;
    }
    return r;
}

Z binom_z(long a, long b) {
    if (b < 0) return 0;
    if (a >= 0) {
        if (b > a) return 0;
        Z r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
        return r;
    }
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(-a + b - 1), static_cast<unsigned long>(b));
    return (b % 2) ? Z(-r) : r;
}

PadicNumber padic_binom(const Q& lam, long n, long p, long prec) {
    if (n < 0) throw std::invalid_argument("padic_binom: negative n");
    if (lam != 0 && vp_q(lam, p) < 0) throw std::invalid_argument("padic_binom: lambda is not a p-adic integer");
    PadicNumber r = PadicNumber::from_int(1, p, prec);
    for (long i = 1; i <= n; ++i) {
        r = r * PadicNumber::from_rational(lam - i + 1, p, prec);
        r = r / PadicNumber::from_int(i, p, prec);
    }
    return r;
}

DigitStream::DigitStream(const Q& lam, long p) : p_(p), rest_(lam) {
    rest_.canonicalize();
    if (rest_ != 0 && vp_int(rest_.get_den(), p) > 0)
        throw std::invalid_argument("DigitStream: not a p-adic integer");
}

long DigitStream::next() {
    Z pz = p_;
    Z inv;
    Z den = rest_.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    Z num = rest_.get_num();
    Z d = (num * inv) % pz;
    if (d < 0) d += pz;
    rest_ = (rest_ - Q(d)) / Q(pz);
    rest_.canonicalize();
    return d.get_si();
}

std::vector<long> padic_digits(const Q& lam, long count, long p) {
    DigitStream ds(lam, p);
    std::vector<long> out;
    out.reserve(count);
    for (long i = 0; i < count; ++i) out.push_back(ds.next());
    return out;
}

Z residue_mod(const Q& lam, long p, long e) {
    Q l = lam;
    l.canonicalize();
    if (l != 0 && vp_int(l.get_den(), p) > 0) throw std::invalid_argument("residue_mod: not a p-adic integer");
    const Z& mod = ppow(p, e);
    Z inv;
    Z den = l.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    Z r = (l.get_num() * inv) % mod;
    if (r < 0) r += mod;
    return r;
}

}  // namespace padic
