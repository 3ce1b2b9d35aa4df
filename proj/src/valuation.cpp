#include "padic/valuation.hpp"

#include <stdexcept>

namespace padic {

long vp_int(const Z& a, long p) {
    if (a == 0) throw std::invalid_argument("vp_int: zero has infinite valuation");
    if (p < 2) throw std::invalid_argument("vp_int: p must be >= 2");
    Z t = abs(a);
    Z pp = p;
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

const Q& Valuation::value() const {
    if (!finite()) throw std::logic_error("Valuation::value on infinite valuation");
    return v_;
}

std::string Valuation::str() const {
    if (kind_ == Kind::PosInf) return "inf";
    if (kind_ == Kind::NegInf) return "-inf";
    return qstr(v_);
}

Valuation Valuation::operator+(const Valuation& o) const {
    if (is_neg_inf() || o.is_neg_inf()) return neg_inf();
    if (is_inf() || o.is_inf()) return inf();
    return Valuation(Q(v_ + o.v_));
}

Valuation Valuation::operator-(const Valuation& o) const {
    if (o.is_inf() || o.is_neg_inf()) throw std::invalid_argument("Valuation: subtracting an infinite valuation");
    if (!finite()) return *this;
    return Valuation(Q(v_ - o.v_));
}

Valuation Valuation::operator*(const Q& c) const {
    if (c < 0) throw std::invalid_argument("Valuation: negative scale");
    if (!finite()) return c == 0 ? Valuation(0) : *this;
    return Valuation(Q(v_ * c));
}

bool Valuation::operator==(const Valuation& o) const {
    if (kind_ != o.kind_) return false;
    return !finite() || v_ == o.v_;
}

bool Valuation::operator<(const Valuation& o) const {
    if (kind_ == o.kind_) return finite() && v_ < o.v_;
    if (is_neg_inf() || o.is_inf()) return true;
    return false;
}

std::string qstr(const Q& q) {
    Q c = q;
    c.canonicalize();
    return c.get_str();
}

}  // namespace padic
