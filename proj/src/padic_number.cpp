#include "padic/padic_number.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace padic {

const Z& ppow(long p, long e) {
    thread_local std::map<std::pair<long, long>, Z> cache;
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Z r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return cache.emplace(key, r).first->second;
}

PadicNumber PadicNumber::zero(long p, long cap, long absprec) {
    PadicNumber z;
    z.p_ = p;
    z.cap_ = cap;
    z.zero_ = true;
    z.absprec_ = absprec;
    return z;
}

PadicNumber PadicNumber::make(long p, long cap, long val, long relprec, Z unit) {
    if (relprec <= 0) return zero(p, cap, val + relprec);
    const Z& mod = ppow(p, relprec);
    mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    if (unit == 0) return zero(p, cap, val + relprec);
    long w = vp_int(unit, p);
    if (w > 0) {
        mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), ppow(p, w).get_mpz_t());
        val += w;
        relprec -= w;
    }
    if (relprec > cap) {
        relprec = cap;
        mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), ppow(p, relprec).get_mpz_t());
    }
    PadicNumber r;
    r.p_ = p;
    r.cap_ = cap;
    r.zero_ = false;
    r.val_ = val;
    r.relprec_ = relprec;
    r.absprec_ = 0;
    r.unit_ = std::move(unit);
    return r;
}

PadicNumber PadicNumber::from_rational(const Q& a, long p, long cap) {
    if (p < 2) throw std::invalid_argument("PadicNumber: p must be >= 2");
    for (long i = 2; i * i <= p; ++i)
        if (p % i == 0) throw std::invalid_argument("PadicNumber: p must be prime");
    if (cap < 1) throw std::invalid_argument("PadicNumber: precision must be positive");
    if (a == 0) return zero(p, cap);
    Z num = a.get_num(), den = a.get_den();
    long vn = vp_int(num, p), vd = vp_int(den, p);
    if (vn) mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), ppow(p, vn).get_mpz_t());
    if (vd) mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), ppow(p, vd).get_mpz_t());
    const Z& mod = ppow(p, cap);
    Z inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    return make(p, cap, vn - vd, cap, num * inv);
}

Valuation PadicNumber::valuation() const {
    if (zero_) return Valuation::inf();
    return Valuation(val_);
}

long PadicNumber::val() const {
    if (zero_) throw std::logic_error("PadicNumber::val of zero");
    return val_;
}

std::vector<long> PadicNumber::unit_digits() const {
    std::vector<long> out;
    if (zero_) return out;
    Z t = unit_;
    for (long i = 0; i < relprec_; ++i) {
        out.push_back(mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(p_)));
        mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p_));
    }
    return out;
}

std::vector<long> PadicNumber::digits(long count) const {
    if (zero_) {
        if (absprec_ < count) throw PrecisionExhausted("PadicNumber::digits: zero known to too few digits", count);
        return std::vector<long>(count, 0);
    }
    if (val_ < 0) throw std::invalid_argument("PadicNumber::digits: not a p-adic integer");
    if (absprec() < count) throw PrecisionExhausted("PadicNumber::digits: not enough precision", count);
    std::vector<long> out(count, 0);
    auto u = unit_digits();
    for (long i = 0; i < count; ++i) {
        long j = i - val_;
        if (j >= 0 && j < static_cast<long>(u.size())) out[i] = u[j];
    }
    return out;
}

void PadicNumber::check_same(const PadicNumber& o) const {
    if (p_ != o.p_) throw std::invalid_argument("PadicNumber: mismatched primes");
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    return make(p_, cap_, val_, relprec_, Z(-unit_));
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    check_same(o);
    long cap = std::min(cap_, o.cap_);
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    long ap = std::min(absprec(), o.absprec());
    if (zero_ && o.zero_) return zero(p_, cap, ap);
    if (zero_ || o.zero_) {
        const PadicNumber& nz = zero_ ? o : *this;
        return make(p_, cap, nz.val_, ap - nz.val_, nz.unit_);
    }
    long v = std::min(val_, o.val_);
    if (v >= ap) return zero(p_, cap, ap);
    Z t = unit_ * ppow(p_, val_ - v) + o.unit_ * ppow(p_, o.val_ - v);
    return make(p_, cap, v, ap - v, std::move(t));
}

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    check_same(o);
    long cap = std::min(cap_, o.cap_);
    if (is_exact_zero() || o.is_exact_zero()) return zero(p_, cap);
    if (zero_ && o.zero_) return zero(p_, cap, absprec_ + o.absprec_);
    if (zero_) return zero(p_, cap, absprec_ + o.val_);
    if (o.zero_) return zero(p_, cap, o.absprec_ + val_);
    return make(p_, cap, val_ + o.val_, std::min(relprec_, o.relprec_), unit_ * o.unit_);
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
    check_same(o);
    long cap = std::min(cap_, o.cap_);
    if (o.zero_)
        throw PrecisionExhausted("PadicNumber: division by a value indistinguishable from zero", 2 * cap);
    if (is_exact_zero()) return zero(p_, cap);
    if (zero_) return zero(p_, cap, absprec_ - o.val_);
    long rp = std::min(relprec_, o.relprec_);
    Z inv;
    mpz_invert(inv.get_mpz_t(), o.unit_.get_mpz_t(), ppow(p_, rp).get_mpz_t());
    return make(p_, cap, val_ - o.val_, rp, unit_ * inv);
}

long PadicNumber::agreement(const PadicNumber& o) const {
    PadicNumber d = *this - o;
    if (d.zero_) return d.absprec_;
    return d.val_;
}

bool PadicNumber::agrees_with(const PadicNumber& o, long digits) const {
    PadicNumber d = *this - o;
    if (!d.zero_) return false;
    long base = std::min(zero_ ? absprec_ : val_, o.zero_ ? o.absprec_ : o.val_);
    if (d.absprec_ == kExact) return true;
    return d.absprec_ - base >= digits;
}

std::string PadicNumber::str() const {
    std::ostringstream os;
    if (zero_) {
        if (absprec_ == kExact) os << "0";
        else os << "O(" << p_ << "^" << absprec_ << ")";
        return os.str();
    }
    os << unit_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << absprec() << ")";
    return os.str();
}

}  // namespace padic
