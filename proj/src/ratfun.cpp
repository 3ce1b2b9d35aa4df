#include "padic/ratfun.hpp"

#include "padic/padic_core.hpp"

#include <sstream>
#include <stdexcept>

namespace padic {

namespace {

Q qpow(const Q& b, long e) {
    if (e == 0) return 1;
    if (b == 0) throw std::domain_error("qpow: zero to a nonpositive power");
    Q base = e > 0 ? b : Q(1 / b);
    long n = e > 0 ? e : -e;
    Q r = 1;
    while (n) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

Poly linear_power(const Q& a, long e) { return Poly::linear(a).pow(e); }

}  // namespace

RationalFunction::RationalFunction(const Poly& p) : lam_(0) {
    if (p.is_zero()) return;
    lam_ = p.lead();
    P_ = p.monic();
}

RationalFunction::RationalFunction(const Q& lam, const Poly& p, const Divisor& factors)
    : lam_(lam), P_(p), fac_(factors) {
    lam_.canonicalize();
    if (P_.is_zero()) lam_ = 0;
    normalize();
}

RationalFunction RationalFunction::power(const Q& a, long e) {
    Divisor f;
    f[a] = e;
    return RationalFunction(Q(1), Poly(Q(1)), f);
}

RationalFunction RationalFunction::factored(const Q& lam, const Divisor& factors) {
    return RationalFunction(lam, Poly(Q(1)), factors);
}

void RationalFunction::normalize() {
    if (lam_ == 0) {
        P_ = Poly(Q(1));
        fac_.clear();
        return;
    }
    lam_ *= P_.lead();
    P_ = P_.monic();
    for (auto it = fac_.begin(); it != fac_.end();) {
        while (P_.deg() >= 1 && P_.eval(it->first) == 0) {
            P_ = P_.divmod(Poly::linear(it->first)).first;
            it->second += 1;
        }
        if (it->second == 0) it = fac_.erase(it);
        else ++it;
    }
}

bool RationalFunction::is_polynomial() const {
    for (auto& [a, e] : fac_)
        if (e < 0) return false;
    return true;
}

bool RationalFunction::is_constant() const { return is_zero() || (P_.deg() == 0 && fac_.empty()); }

Poly RationalFunction::numerator() const {
    if (is_zero()) return Poly();
    Poly r = P_ * lam_;
    for (auto& [a, e] : fac_)
        if (e > 0) r = r * linear_power(a, e);
    return r;
}

Poly RationalFunction::denominator() const {
    Poly r(Q(1));
    for (auto& [a, e] : fac_)
        if (e < 0) r = r * linear_power(a, -e);
    return r;
}

Poly RationalFunction::to_poly() const {
    if (!is_polynomial()) throw std::domain_error("RationalFunction::to_poly: has poles");
    return numerator();
}

long RationalFunction::poly_degree() const { return to_poly().deg(); }

Divisor RationalFunction::divisor() const {
    if (is_zero()) throw std::invalid_argument("divisor of the zero function");
    Divisor out = fac_;
    auto [roots, rest] = P_.rational_roots();
    if (rest.deg() >= 1) throw std::domain_error("divisor: numerator has zeros that are not rational points");
    for (auto& [r, m] : roots) out[r] += m;
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else ++it;
    }
    return out;
}

std::map<Q, long> RationalFunction::poles() const {
    std::map<Q, long> out;
    for (auto& [a, e] : fac_)
        if (e < 0) out[a] = -e;
    return out;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Divisor m;
    for (auto& [a, e] : fac_) m[a] = std::min(e, 0L);
    for (auto& [a, e] : o.fac_) {
        auto it = m.find(a);
        long cur = it == m.end() ? 0 : it->second;
        m[a] = std::min(cur, e);
    }
    auto side = [&](const RationalFunction& f) {
        Poly r = f.P_ * f.lam_;
        for (auto& [a, mm] : m) {
            auto it = f.fac_.find(a);
            long e = it == f.fac_.end() ? 0 : it->second;
            if (e - mm > 0) r = r * linear_power(a, e - mm);
        }
        for (auto& [a, e] : f.fac_)
            if (!m.count(a) && e > 0) r = r * linear_power(a, e);
        return r;
    };
    Poly s = side(*this) + side(o);
    if (s.is_zero()) return RationalFunction();
    Divisor keep;
    for (auto& [a, e] : m)
        if (e != 0) keep[a] = e;
    return RationalFunction(Q(1), s, keep);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.lam_ = -r.lam_;
    return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return RationalFunction();
    Divisor f = fac_;
    for (auto& [a, e] : o.fac_) f[a] += e;
    return RationalFunction(lam_ * o.lam_, P_ * o.P_, f);
}

RationalFunction RationalFunction::operator*(const Q& s) const {
    if (s == 0 || is_zero()) return RationalFunction();
    RationalFunction r = *this;
    r.lam_ *= s;
    return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const { return *this * o.inverse(); }

bool RationalFunction::operator==(const RationalFunction& o) const {
    if (lam_ == o.lam_ && P_ == o.P_ && fac_ == o.fac_) return true;
    return (*this - o).is_zero();
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("RationalFunction::inverse of zero");
    Divisor f;
    for (auto& [a, e] : fac_) f[a] = -e;
    if (P_.deg() >= 1) {
        auto [roots, rest] = P_.rational_roots();
        if (rest.deg() >= 1)
            throw std::domain_error("RationalFunction::inverse: numerator does not split over Q");
        for (auto& [r, m] : roots) f[r] -= m;
    }
    return RationalFunction(1 / lam_, Poly(Q(1)), f);
}

RationalFunction RationalFunction::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    if (n == 0) return RationalFunction(Q(1));
    if (is_zero()) return *this;
    Divisor f;
    for (auto& [a, e] : fac_) f[a] = e * n;
    return RationalFunction(qpow(lam_, n), P_.pow(n), f);
}

RationalFunction RationalFunction::derivative() const {
    if (is_zero()) return *this;
    if (fac_.empty()) return RationalFunction(P_.derivative() * lam_);
    Poly L(Q(1));
    for (auto& [a, e] : fac_) L = L * Poly::linear(a);
    Poly br = P_.derivative() * L;
    for (auto& [a, e] : fac_) {
        Poly La = L.divmod(Poly::linear(a)).first;
        br += P_ * La * Q(e);
    }
    if (br.is_zero()) return RationalFunction();
    Divisor f;
    for (auto& [a, e] : fac_) f[a] = e - 1;
    return RationalFunction(lam_, br, f);
}

RationalFunction RationalFunction::derivative(long m) const {
    RationalFunction r = *this;
    for (long i = 0; i < m && !r.is_zero(); ++i) r = r.derivative();
    return r;
}

Q RationalFunction::eval(const Q& t) const {
    if (is_zero()) return 0;
    Q r = lam_ * P_.eval(t);
    for (auto& [a, e] : fac_) {
        if (t == a) {
            if (e < 0) throw std::domain_error("RationalFunction::eval at a pole");
            return 0;
        }
        r *= qpow(t - a, e);
    }
    return r;
}

RationalFunction RationalFunction::compose_mobius(const Q& a, const Q& b, const Q& c, const Q& d) const {
    if (a * d - b * c == 0) throw std::invalid_argument("compose_mobius: singular matrix");
    if (is_zero()) return *this;
    Q K = lam_;
    Poly ell(std::vector<Q>{a, -c});
    Poly top(std::vector<Q>{-b, d});
    const long n = P_.deg();
    Poly N;
    for (long i = 0; i <= n; ++i) N += top.pow(i) * ell.pow(n - i) * P_.coeff(i);
    long E = -n;
    Divisor f;
    for (auto& [al, e] : fac_) {
        Q s = d + al * c;
        if (s != 0) {
            K *= qpow(s, e);
            Q beta = (b + al * a) / s;
            beta.canonicalize();
            f[beta] += e;
        } else {
            K *= qpow(-(b + al * a), e);
        }
        E -= e;
    }
    if (c != 0) {
        K *= qpow(-c, E);
        Q root = a / c;
        root.canonicalize();
        f[root] += E;
    } else {
        K *= qpow(a, E);
    }
    return RationalFunction(K, N, f);
}

std::pair<long, std::vector<Q>> RationalFunction::laurent_at(const Q& b, long count) const {
    if (is_zero()) throw std::domain_error("laurent_at: zero function");
    Poly ps = P_.shift(b);
    long z = 0;
    while (ps.coeff(z) == 0) ++z;
    long need = z + count;
    std::vector<Q> S(need, Q(0));
    for (long i = 0; i < need; ++i) S[i] = ps.coeff(i) * lam_;
    long order = z;
    for (auto& [al, e] : fac_) {
        if (al == b) {
            order += e;
            continue;
        }
        Q cst = b - al;
        std::vector<Q> ser(need, Q(0));
        Q ce = qpow(cst, e);
        Q bin = 1;
        Q cinv = 1 / cst;
        Q cp = 1;
        for (long i = 0; i < need; ++i) {
            ser[i] = bin * ce * cp;
            bin = bin * Q(e - i) / Q(i + 1);
            cp *= cinv;
        }
        std::vector<Q> prod(need, Q(0));
        for (long i = 0; i < need; ++i) {
            if (S[i] == 0) continue;
            for (long j = 0; i + j < need; ++j) prod[i + j] += S[i] * ser[j];
        }
        S = std::move(prod);
    }
    std::vector<Q> out(S.begin() + z, S.end());
    return {order, out};
}

std::string RationalFunction::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << qstr(lam_);
    if (P_.deg() >= 1) os << "*(" << P_.str() << ")";
    for (auto& [a, e] : fac_) {
        os << "*(x";
        if (a > 0) os << "-" << qstr(a);
        else if (a < 0) os << "+" << qstr(Q(-a));
        os << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

RationalFunction dlog(const RationalFunction& u) {
    if (u.is_zero()) throw std::invalid_argument("dlog of zero");
    RationalFunction r;
    for (auto& [a, e] : u.factors()) r += RationalFunction::power(a, -1) * Q(e);
    const Poly& P = u.poly_part();
    if (P.deg() >= 1) {
        auto [roots, rest] = P.rational_roots();
        if (rest.deg() >= 1) {
            // P'/P with P irreducible over Q is not representable with rational poles
            throw std::domain_error("dlog: zeros are not rational points");
        }
        for (auto& [rt, m] : roots) r += RationalFunction::power(rt, -1) * Q(m);
    }
    return r;
}

MobiusMap::MobiusMap(const Q& a, const Q& b, const Q& c, const Q& d) : a_(a), b_(b), c_(c), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    d_.canonicalize();
    if (det() == 0) throw std::invalid_argument("MobiusMap: determinant is zero");
}

bool MobiusMap::generalized_iwahori(long p) const {
    for (const Q* e : {&a_, &b_, &c_, &d_})
        if (*e != 0 && vp_q(*e, p) < 0) return false;
    if (vp_q(det(), p) != 0) return false;
    return c_ == 0 || vp_q(c_, p) > 0;
}

bool MobiusMap::in_G_r(long p, const Q& r_exp) const {
    if (!generalized_iwahori(p)) return false;
    Q bound = varpi_val(p) + r_exp;
    for (Q e : {b_, c_, Q(a_ - d_)})
        if (e != 0 && Q(vp_q(e, p)) <= bound) return false;
    return true;
}

Q MobiusMap::rho() const {
    if (c_ != 0) throw std::domain_error("MobiusMap::rho: defined only for upper triangular maps");
    Q r = a_ / d_;
    r.canonicalize();
    return r;
}

Q MobiusMap::act_point(const Q& z) const {
    Q den = c_ * z + d_;
    if (den == 0) throw std::domain_error("MobiusMap::act_point: image is the point at infinity");
    Q r = (a_ * z + b_) / den;
    r.canonicalize();
    return r;
}

RationalFunction MobiusMap::act_x() const { return RationalFunction::x().compose_mobius(a_, b_, c_, d_); }

RationalFunction MobiusMap::act(const RationalFunction& f) const { return f.compose_mobius(a_, b_, c_, d_); }

RationalFunction MobiusMap::act_derivation() const {
    Poly ell(std::vector<Q>{a_, -c_});
    return RationalFunction(ell.pow(2) * (1 / det()));
}

MobiusMap MobiusMap::operator*(const MobiusMap& o) const {
    return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

MobiusMap MobiusMap::inverse() const {
    Q D = det();
    return MobiusMap(d_ / D, -b_ / D, -c_ / D, a_ / D);
}

bool MobiusMap::operator==(const MobiusMap& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

std::string MobiusMap::str() const {
    return "(" + qstr(a_) + "," + qstr(b_) + ";" + qstr(c_) + "," + qstr(d_) + ")";
}

FirstOrderOperator FirstOrderOperator::act(const MobiusMap& g) const {
    return {g.act(coeff_d) * g.act_derivation(), g.act(coeff_0)};
}

RationalFunction delta_of(const std::set<Q>& S) {
    Poly r(Q(1));
    for (auto& a : S) r = r * Poly::linear(a);
    return RationalFunction(r);
}

FirstOrderOperator relator(const std::set<Q>& S, const RationalFunction& u, long d) {
    if (d == 0) throw std::invalid_argument("relator: d must be nonzero");
    Divisor div = u.divisor();
    for (auto& [a, e] : div)
        if (!S.count(a)) throw std::invalid_argument("relator: divisor support not contained in S");
    Poly zero_part;
    for (auto& [a, e] : div) {
        Poly prod(Q(1));
        for (auto& b : S)
            if (b != a) prod = prod * Poly::linear(b);
        zero_part += prod * Q(e);
    }
    return {delta_of(S), RationalFunction(zero_part * (Q(-1) / Q(d)))};
}

}  // namespace padic
