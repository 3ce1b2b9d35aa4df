#include "padic/series.hpp"

#include "padic/padic_core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace padic {

QSeries::QSeries(long order, char var) : c_(std::max(0L, order), Q(0)), var_(var) {
    if (order < 0) throw std::invalid_argument("QSeries: negative order");
}

QSeries QSeries::one(long order, char var) { return monomial(0, Q(1), order, var); }

QSeries QSeries::monomial(long j, const Q& a, long order, char var) {
    QSeries r(order, var);
    if (j >= 0 && j < order) r.c_[j] = a;
    return r;
}

QSeries QSeries::from_poly(const Poly& f, long order, char var) {
    QSeries r(order, var);
    for (long j = 0; j < order && j <= f.deg(); ++j) r.c_[j] = f.coeff(j);
    return r;
}

QSeries QSeries::from_ratfun(const RationalFunction& f, long order, char var) {
    QSeries r(order, var);
    if (f.is_zero() || order == 0) return r;
    auto [o, co] = f.laurent_at(Q(0), order);
    if (o < 0) throw std::domain_error("QSeries::from_ratfun: pole at 0");
    for (long j = o; j < order; ++j) r.c_[j] = co[j - o];
    return r;
}

QSeries QSeries::binomial(const Q& a, long step, long order, char var) {
    if (step < 1) throw std::invalid_argument("QSeries::binomial: step must be >= 1");
    QSeries r(order, var);
    Q b = 1;  // (-1)^m binom(a, m)
    for (long m = 0; m * step < order; ++m) {
        if (m > 0) b *= -(a - (m - 1)) / Q(m);
        r.c_[m * step] = b;
    }
    return r;
}

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries r(std::min(order(), o.order()), var_);
    for (long j = 0; j < r.order(); ++j) r.c_[j] = c_[j] + o.c_[j];
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
    QSeries r(std::min(order(), o.order()), var_);
    const long n = r.order();
    for (long i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; i + j < n; ++j)
            if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
}

QSeries QSeries::operator*(const Q& s) const {
    QSeries r = *this;
    for (auto& a : r.c_) a *= s;
    return r;
}

bool QSeries::operator==(const QSeries& o) const {
    const long n = std::min(order(), o.order());
    for (long j = 0; j < n; ++j)
        if (c_[j] != o.c_[j]) return false;
    return true;
}

QSeries QSeries::truncate(long order) const {
    QSeries r(std::min(order, this->order()), var_);
    std::copy(c_.begin(), c_.begin() + r.order(), r.c_.begin());
    return r;
}

QSeries QSeries::derivative() const {
    QSeries r(std::max(0L, order() - 1), var_);
    for (long j = 1; j < order(); ++j) r.c_[j - 1] = c_[j] * j;
    return r;
}

QSeries QSeries::shift_up(long j) const {
    if (j < 0) throw std::invalid_argument("QSeries::shift_up: negative shift");
    QSeries r(order() + j, var_);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + j);
    return r;
}

QSeries QSeries::pow(const Q& a) const {
    if (order() == 0) return *this;
    if (c_[0] != 1) throw std::invalid_argument("QSeries::pow: constant term must be 1");
    QSeries g(order(), var_);
    g.c_[0] = 1;
    for (long n = 1; n < order(); ++n) {
        Q s = 0;
        for (long j = 1; j <= n; ++j)
            if (c_[j] != 0) s += ((a + 1) * j - n) * c_[j] * g.c_[n - j];
        g.c_[n] = s / Q(n);
    }
    return g;
}

QSeries QSeries::inverse() const {
    if (order() == 0) return *this;
    if (c_[0] == 0) throw std::domain_error("QSeries::inverse: constant term is zero");
    QSeries g(order(), var_);
    Q inv0 = 1 / c_[0];
    g.c_[0] = inv0;
    for (long n = 1; n < order(); ++n) {
        Q s = 0;
        for (long j = 1; j <= n; ++j)
            if (c_[j] != 0) s += c_[j] * g.c_[n - j];
        g.c_[n] = -s * inv0;
    }
    return g;
}

QSeries QSeries::compose_eta() const {
    // (y/(1-y))^j = sum_i binom(j+i-1, i) y^{j+i}
    QSeries r(order(), var_);
    r.c_[0] = order() ? c_[0] : Q(0);
    for (long j = 1; j < order(); ++j) {
        if (c_[j] == 0) continue;
        Q b = 1;
        for (long i = 0; j + i < order(); ++i) {
            if (i > 0) b = b * Q(j + i - 1) / Q(i);
            r.c_[j + i] += c_[j] * b;
        }
    }
    return r;
}

QSeries QSeries::project(long step, char var) const {
    if (step < 1) throw std::invalid_argument("QSeries::project: step must be >= 1");
    QSeries r((order() + step - 1) / step, var);
    for (long m = 0; m < r.order(); ++m) r.c_[m] = c_[m * step];
    return r;
}

bool QSeries::is_zero() const { return leading_index() == order(); }

long QSeries::leading_index() const {
    for (long j = 0; j < order(); ++j)
        if (c_[j] != 0) return j;
    return order();
}

std::string QSeries::str(long terms) const {
    std::ostringstream os;
    bool first = true;
    for (long j = 0; j < order() && j < terms; ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[j] << ")";
        if (j > 0) os << "*" << var_ << "^" << j;
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << order() << ")";
    return os.str();
}

PadicSeries::PadicSeries(long order, long p, long prec, char var)
    : c_(std::max(0L, order), PadicNumber::zero(p, prec)), p_(p), prec_(prec), var_(var) {}

PadicSeries PadicSeries::from_q(const QSeries& f, long p, long prec) {
    PadicSeries r(f.order(), p, prec, f.var());
    for (long j = 0; j < f.order(); ++j) r.c_[j] = PadicNumber::from_rational(f[j], p, prec);
    return r;
}

PadicSeries PadicSeries::operator+(const PadicSeries& o) const {
    PadicSeries r(std::min(order(), o.order()), p_, prec_, var_);
    for (long j = 0; j < r.order(); ++j) r.c_[j] = c_[j] + o.c_[j];
    return r;
}

PadicSeries PadicSeries::operator-(const PadicSeries& o) const {
    PadicSeries r(std::min(order(), o.order()), p_, prec_, var_);
    for (long j = 0; j < r.order(); ++j) r.c_[j] = c_[j] - o.c_[j];
    return r;
}

PadicSeries PadicSeries::operator*(const PadicSeries& o) const {
    PadicSeries r(std::min(order(), o.order()), p_, prec_, var_);
    const long n = r.order();
    for (long i = 0; i < n; ++i) {
        if (c_[i].is_exact_zero()) continue;
        for (long j = 0; i + j < n; ++j)
            if (!o.c_[j].is_exact_zero()) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
}

PadicSeries PadicSeries::operator*(const PadicNumber& s) const {
    PadicSeries r = *this;
    for (auto& a : r.c_) a = a * s;
    return r;
}

PadicSeries PadicSeries::project(long step, char var) const {
    if (step < 1) throw std::invalid_argument("PadicSeries::project: step must be >= 1");
    PadicSeries r((order() + step - 1) / step, p_, prec_, var);
    for (long m = 0; m < r.order(); ++m) r.c_[m] = c_[m * step];
    return r;
}

PadicSeries PadicSeries::truncate(long order) const {
    PadicSeries r(std::min(order, this->order()), p_, prec_, var_);
    std::copy(c_.begin(), c_.begin() + r.order(), r.c_.begin());
    return r;
}

Valuation PadicSeries::min_valuation() const {
    Valuation v = Valuation::inf();
    for (auto& a : c_) v = vmin(v, a.valuation());
    return v;
}

long PadicSeries::precision_floor() const {
    long f = PadicNumber::kExact;
    for (auto& a : c_) f = std::min(f, a.absprec());
    return f;
}

bool PadicSeries::all_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const PadicNumber& a) { return a.is_zero(); });
}

}  // namespace padic
