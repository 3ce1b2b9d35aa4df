#include "padic/cheese.hpp"

#include "padic/padic_core.hpp"

#include <map>
#include <stdexcept>

namespace padic {

namespace {

/// v(a - b) as a Valuation (+inf when equal).
Valuation vdist(const Q& a, const Q& b, long p) { return vp_rational(a - b, p); }

/// Principal parts c_{a,j} (x-a)^{-j}, j = 1..order, for every pole a.
std::map<Q, std::vector<Q>> principal_parts(const RationalFunction& u) {
    std::map<Q, std::vector<Q>> out;
    for (auto& [a, e] : u.poles()) {
        auto [o, c] = u.laurent_at(a, e);
        std::vector<Q> pp(e + 1, Q(0));
        for (long j = 1; j <= e; ++j) pp[j] = c[e - j];
        out[a] = std::move(pp);
    }
    return out;
}

struct Geometric {
    Q c;      // coefficient
    Q delta;  // displacement of the pole from the expansion center
    long j;   // pole order
};

constexpr long kMaxTerms = 1 << 14;

}  // namespace

Cheese::Cheese(long p, const Q& center, const Q& e0, std::vector<Hole> holes)
    : p_(p), c0_(center), e0_(e0), holes_(std::move(holes)) {
    require_prime(p);
    c0_.canonicalize();
    e0_.canonicalize();
    for (auto& h : holes_) {
        h.center.canonicalize();
        h.e.canonicalize();
        if (h.e > e0_) throw std::invalid_argument("Cheese: hole larger than the outer disc");
        if (vdist(h.center, c0_, p) < Valuation(Q(-e0_)))
            throw std::invalid_argument("Cheese: hole center outside the outer disc");
    }
    for (size_t i = 0; i < holes_.size(); ++i)
        for (size_t j = i + 1; j < holes_.size(); ++j) {
            Q m = std::max(holes_[i].e, holes_[j].e);
            if (vdist(holes_[i].center, holes_[j].center, p) > Valuation(Q(-m)))
                throw std::invalid_argument("Cheese: holes overlap");
        }
}

Q Cheese::rho_exp() const {
    if (holes_.empty()) return e0_;
    Q m = holes_.front().e;
    for (auto& h : holes_) m = std::min(m, h.e);
    return m;
}

Q Cheese::r_exp() const { return -rho_exp() - varpi_val(p_); }

int Cheese::locate(const Q& z) const {
    for (size_t i = 0; i < holes_.size(); ++i)
        if (vdist(z, holes_[i].center, p_) > Valuation(Q(-holes_[i].e))) return static_cast<int>(i);
    if (vdist(z, c0_, p_) < Valuation(Q(-e0_))) return -2;
    return -1;
}

Cheese Cheese::transform(const MobiusMap& g) const {
    if (!g.upper_triangular()) throw std::invalid_argument("Cheese::transform: g must be upper triangular");
    Q shift = vp_q(g.rho(), p_);
    std::vector<Hole> hs;
    for (auto& h : holes_) hs.push_back({g.act_point(h.center), h.e - shift});
    return Cheese(p_, g.act_point(c0_), e0_ - shift, hs);
}

Cheese Cheese::with_hole(const Hole& h) const {
    auto hs = holes_;
    hs.push_back(h);
    return Cheese(p_, c0_, e0_, hs);
}

namespace {

Valuation weighted(const Q& c, long n, const Q& w, long p) {
    if (c == 0) return Valuation::inf();
    return Valuation(Q(Q(vp_q(c, p)) + Q(n) * w));
}

/**
 * Norm on the outer disc of head(t) + sum c (t - delta)^{-j}, t = x - center, |delta| > radius.
 * Returns min_n v(coef_n) - n*e0, stopping once the geometric tail is certified above it.
 */
Valuation outer_norm(long p, const std::vector<Q>& head, const std::vector<Geometric>& terms, const Q& e0) {
    std::vector<Q> cur, base, gamma;
    for (auto& g : terms) {
        Q s = g.c;
        for (long i = 0; i < g.j; ++i) s /= -g.delta;
        cur.push_back(s);
        Q vd = vp_q(g.delta, p);
        base.push_back(Q(vp_q(g.c, p)) - Q(g.j) * vd);
        gamma.push_back(-vd - e0);
    }
    Valuation best = Valuation::inf();
    for (long n = 0; n < kMaxTerms; ++n) {
        Q coef = n < static_cast<long>(head.size()) ? head[n] : Q(0);
        for (size_t t = 0; t < terms.size(); ++t) {
            coef += cur[t];
            cur[t] = cur[t] * Q(terms[t].j + n) / Q(n + 1) / terms[t].delta;
        }
        best = vmin(best, weighted(coef, n, Q(-e0), p));
        if (n + 1 < static_cast<long>(head.size())) continue;
        if (terms.empty()) return best;
        Valuation tail = Valuation::inf();
        for (size_t t = 0; t < terms.size(); ++t) tail = vmin(tail, Valuation(Q(base[t] + Q(n + 1) * gamma[t])));
        if (!best.is_inf() && tail > best) return best;
    }
    throw std::runtime_error("sup_norm: tail did not certify within the term budget");
}

/**
 * Norm on |x - center| >= p^e of sum c (x - center - delta)^{-j} with |delta| < p^e,
 * expanded in w = 1/(x - center): min_n v(b_n) + n*e.
 */
Valuation hole_norm(long p, const std::vector<Geometric>& terms, const Q& e) {
    long jmax = 0;
    for (auto& g : terms) jmax = std::max(jmax, g.j);
    Valuation best = Valuation::inf();
    for (long n = 1; n < kMaxTerms; ++n) {
        Q coef = 0;
        for (auto& g : terms) {
            if (g.j > n) continue;
            long k = n - g.j;
            if (g.delta == 0) {
                if (k == 0) coef += g.c;
                continue;
            }
            Q dk = 1;
            for (long i = 0; i < k; ++i) dk *= g.delta;
            coef += g.c * Q(binom_z(n - 1, k)) * dk;
        }
        best = vmin(best, weighted(coef, n, e, p));
        if (n < jmax) continue;
        Valuation tail = Valuation::inf();
        for (auto& g : terms) {
            if (g.delta == 0) continue;
            Q base = Q(vp_q(g.c, p)) + Q(g.j) * e;
            Q gam = Q(vp_q(g.delta, p)) + e;
            tail = vmin(tail, Valuation(Q(base + Q(n + 1 - g.j) * gam)));
        }
        if (tail.is_inf() || (!best.is_inf() && tail > best)) return best;
    }
    throw std::runtime_error("sup_norm: tail did not certify within the term budget");
}

}  // namespace

Valuation sup_norm(const RationalFunction& u, const Cheese& X) {
    if (u.is_zero()) return Valuation::inf();
    const long p = X.p();
    auto pp = principal_parts(u);
    std::vector<Geometric> outer;
    std::vector<std::vector<Geometric>> inner(X.holes().size());
    for (auto& [a, c] : pp) {
        int where = X.locate(a);
        if (where == -1) throw std::domain_error("sup_norm: pole at " + qstr(a) + " lies on the cheese");
        for (long j = 1; j < static_cast<long>(c.size()); ++j) {
            if (c[j] == 0) continue;
            if (where == -2) outer.push_back({c[j], Q(a - X.center()), j});
            else inner[where].push_back({c[j], Q(a - X.holes()[where].center), j});
        }
    }
    // polynomial part, recentred at the outer center
    Poly poly = u.numerator().divmod(u.denominator()).first.shift(X.center());
    std::vector<Q> head(poly.coeffs().begin(), poly.coeffs().end());

    Valuation best = Valuation::inf();
    if (!head.empty() || !outer.empty()) best = vmin(best, outer_norm(p, head, outer, X.e0()));
    for (size_t i = 0; i < inner.size(); ++i)
        if (!inner[i].empty()) best = vmin(best, hole_norm(p, inner[i], X.holes()[i].e));
    return best;
}

DividedPowerNorm divided_power_norm_check(const Cheese& X, long n) {
    if (n < 0) throw std::invalid_argument("divided_power_norm_check: n must be >= 0");
    DividedPowerNorm out;
    out.op_norm = Valuation(Q(Q(n) * X.rho_exp()));
    if (X.holes().empty()) {
        out.witness = RationalFunction(Poly::linear(X.center()).pow(n));
    } else {
        const Hole* h = &X.holes().front();
        for (auto& hh : X.holes())
            if (hh.e < h->e) h = &hh;
        out.witness = RationalFunction::power(h->center, -1);
    }
    Z nf = 1;
    for (long i = 2; i <= n; ++i) nf *= i;
    RationalFunction dn = out.witness.derivative(n) * Q(Q(1) / Q(nf));
    out.witness_ratio = sup_norm(dn, X) - sup_norm(out.witness, X);
    return out;
}

}  // namespace padic
