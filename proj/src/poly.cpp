#include "padic/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace padic {

Poly::Poly(const Q& c) {
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Q> coeffs) : c_(std::move(coeffs)) {
    for (auto& q : c_) q.canonicalize();
    trim();
}

Poly Poly::monomial(const Q& c, long n) {
    if (n < 0) throw std::invalid_argument("Poly::monomial: negative degree");
    std::vector<Q> v(n + 1, Q(0));
    v[n] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Q> r(std::max(c_.size(), o.c_.size()), Q(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    Poly out;
    out.c_ = std::move(r);
    out.trim();
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& q : out.c_) q = -q;
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Q> r(c_.size() + o.c_.size() - 1, Q(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    Poly out;
    out.c_ = std::move(r);
    out.trim();
    return out;
}

Poly Poly::operator*(const Q& s) const {
    if (s == 0) return Poly();
    Poly out = *this;
    for (auto& q : out.c_) q *= s;
    return out;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
    if (deg() < d.deg()) return {Poly(), *this};
    std::vector<Q> rem = c_;
    std::vector<Q> quo(deg() - d.deg() + 1, Q(0));
    const Q lead_inv = 1 / d.lead();
    for (long i = deg(); i >= d.deg(); --i) {
        if (rem[i] == 0) continue;
        Q f = rem[i] * lead_inv;
        quo[i - d.deg()] = f;
        for (long j = 0; j <= d.deg(); ++j) rem[i - d.deg() + j] -= f * d.c_[j];
    }
    rem.resize(std::max<long>(d.deg(), 0));
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::pow(long n) const {
    if (n < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    Poly r(Q(1)), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Q> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Q(static_cast<long>(i));
    return Poly(std::move(r));
}

Q Poly::eval(const Q& t) const {
    Q r = 0;
    for (long i = deg(); i >= 0; --i) r = r * t + c_[i];
    return r;
}

Poly Poly::shift(const Q& b) const {
    // Horner in the shifted variable
    Poly r;
    Poly lin(std::vector<Q>{b, 1});
    for (long i = deg(); i >= 0; --i) r = r * lin + Poly(c_[i]);
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (1 / lead());
}

namespace {

std::vector<Z> divisors(Z a) {
    a = abs(a);
    if (a > Z("1000000000000"))
        throw std::domain_error("rational root search: coefficient too large to factor");
    std::vector<std::pair<Z, long>> fac;
    Z t = a;
    for (Z d = 2; d * d <= t; ++d) {
        long e = 0;
        while (t % d == 0) {
            t /= d;
            ++e;
        }
        if (e) fac.emplace_back(d, e);
    }
    if (t > 1) fac.emplace_back(t, 1);
    std::vector<Z> out{Z(1)};
    for (auto& [pr, e] : fac) {
        size_t sz = out.size();
        Z pw = 1;
        for (long i = 1; i <= e; ++i) {
            pw *= pr;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
        }
    }
    return out;
}

}  // namespace

std::pair<std::map<Q, long>, Poly> Poly::rational_roots() const {
    if (is_zero()) throw std::domain_error("Poly::rational_roots: zero polynomial");
    std::map<Q, long> roots;
    Poly rest = *this;
    while (rest.deg() >= 1 && rest.coeff(0) == 0) {
        rest = rest.divmod(Poly::x()).first;
        roots[Q(0)]++;
    }
    if (rest.deg() < 1) return {roots, rest};
    Z l = 1;
    for (auto& q : rest.c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Z> ints;
    for (auto& q : rest.c_) ints.push_back(Z(q * Q(l)));
    auto num_d = divisors(ints.front());
    auto den_d = divisors(ints.back());
    std::set<Q> cands;
    for (auto& u : num_d)
        for (auto& v : den_d) {
            Q r(u, v);
            r.canonicalize();
            cands.insert(r);
            cands.insert(-r);
        }
    for (const Q& r : cands) {
        while (rest.deg() >= 1 && rest.eval(r) == 0) {
            rest = rest.divmod(Poly::linear(r)).first;
            roots[r]++;
        }
        if (rest.deg() < 1) break;
    }
    return {roots, rest};
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = deg(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        Q c = c_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Q a = abs(c);
        if (i == 0 || a != 1) os << qstr(a) << (i ? "*" : "");
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace padic
