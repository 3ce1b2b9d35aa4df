#pragma once

#include "padic/padic_number.hpp"
#include "padic/ratfun.hpp"

#include <string>
#include <vector>

namespace padic {

/**
 * Truncated power series over Q: coefficients of y^0 .. y^{order-1}, the value
 * known modulo y^order. Binary operations truncate to the smaller order.
 */
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(long order, char var = 'y');

    static QSeries one(long order, char var = 'y');
    static QSeries monomial(long j, const Q& a, long order, char var = 'y');
    static QSeries from_poly(const Poly& f, long order, char var = 'y');
    /// Expansion at 0; throws std::domain_error on a pole at 0.
    static QSeries from_ratfun(const RationalFunction& f, long order, char var = 'y');
    /// (1 - y^step)^a with a in Q.
    static QSeries binomial(const Q& a, long step, long order, char var = 'y');

    long order() const { return static_cast<long>(c_.size()); }
    char var() const { return var_; }
    const std::vector<Q>& coeffs() const { return c_; }
    Q operator[](long j) const { return (j >= 0 && j < order()) ? c_[j] : Q(0); }
    Q& at(long j) { return c_.at(j); }

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator-() const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Q& s) const;
    QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
    bool operator==(const QSeries& o) const;
    bool operator!=(const QSeries& o) const { return !(*this == o); }

    QSeries truncate(long order) const;
    /// d/dy, known to order - 1.
    QSeries derivative() const;
    /// y^j f, known to order + j.
    QSeries shift_up(long j) const;
    /// f^a for f(0) = 1, via the power recurrence; the branch with constant term 1.
    QSeries pow(const Q& a) const;
    /// 1/f, needs f(0) != 0.
    QSeries inverse() const;
    /// f(y/(1-y)).
    QSeries compose_eta() const;
    /// Keep y^i with step | i, as a series in s = y^step.
    QSeries project(long step, char var = 's') const;

    bool is_zero() const;
    /// Index of the first nonzero coefficient, or order() if none.
    long leading_index() const;
    std::string str(long terms = 8) const;

private:
    std::vector<Q> c_;
    char var_ = 'y';
};

/// Power series with PadicNumber coefficients, y-adically exact up to its order.
class PadicSeries {
public:
    PadicSeries() = default;
    PadicSeries(long order, long p, long prec, char var = 'y');
    static PadicSeries from_q(const QSeries& f, long p, long prec);

    long order() const { return static_cast<long>(c_.size()); }
    long prime() const { return p_; }
    long prec() const { return prec_; }
    char var() const { return var_; }
    const PadicNumber& operator[](long j) const { return c_.at(j); }
    PadicNumber& at(long j) { return c_.at(j); }

    PadicSeries operator+(const PadicSeries& o) const;
    PadicSeries operator-(const PadicSeries& o) const;
    PadicSeries operator*(const PadicSeries& o) const;
    PadicSeries operator*(const PadicNumber& s) const;
    PadicSeries project(long step, char var = 's') const;
    PadicSeries truncate(long order) const;

    /// Minimum valuation over the retained coefficients.
    Valuation min_valuation() const;
    /// Smallest absolute precision over the retained coefficients.
    long precision_floor() const;
    /// Every coefficient is a tracked zero.
    bool all_zero() const;

private:
    std::vector<PadicNumber> c_;
    long p_ = 2, prec_ = PadicNumber::kDefaultPrec;
    char var_ = 'y';
};

}  // namespace padic
