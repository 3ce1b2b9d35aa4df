#include "padic/skew.hpp"

#include "padic/padic_core.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace padic {

namespace {

constexpr long kNegInf = LONG_MIN / 4;
constexpr long kPosInf = LONG_MAX / 4;

long sat_add(long a, long b) {
    if (a <= kNegInf || b <= kNegInf) return kNegInf;
    if (a >= kPosInf || b >= kPosInf) return kPosInf;
    return std::clamp(a + b, kNegInf, kPosInf);
}

Z factorial(long n) {
    Z f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

SkewLaurentSeries::SkewLaurentSeries(long lo, long hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw std::invalid_argument("SkewLaurentSeries: empty window");
}

SkewLaurentSeries SkewLaurentSeries::monomial(const RationalFunction& a, long k) {
    SkewLaurentSeries s(k, k);
    s.set(k, a);
    return s;
}

SkewLaurentSeries SkewLaurentSeries::divided_power(long n) {
    if (n < 0) throw std::invalid_argument("divided_power: n must be >= 0");
    return monomial(RationalFunction(Q(Q(1) / Q(factorial(n)))), n);
}

RationalFunction SkewLaurentSeries::coeff(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? RationalFunction() : it->second;
}

void SkewLaurentSeries::set(long k, const RationalFunction& a) {
    if (k < lo_ || k > hi_) throw std::out_of_range("SkewLaurentSeries::set: degree outside the window");
    if (a.is_zero()) c_.erase(k);
    else c_[k] = a;
}

void SkewLaurentSeries::add_to(long k, const RationalFunction& a) { set(k, coeff(k) + a); }

Valuation SkewLaurentSeries::bound(long k) const {
    auto it = bound_.find(k);
    return it == bound_.end() ? Valuation::inf() : it->second;
}

void SkewLaurentSeries::set_bound(long k, const Valuation& b) {
    if (k < lo_ || k > hi_) throw std::out_of_range("SkewLaurentSeries::set_bound: degree outside the window");
    if (b.is_inf()) bound_.erase(k);
    else bound_[k] = b;
}

long SkewLaurentSeries::min_degree() const { return c_.empty() ? lo_ : c_.begin()->first; }
long SkewLaurentSeries::max_degree() const { return c_.empty() ? hi_ : c_.rbegin()->first; }

SkewLaurentSeries SkewLaurentSeries::operator+(const SkewLaurentSeries& o) const {
    SkewLaurentSeries r(std::min(lo_, o.lo_), std::max(hi_, o.hi_));
    for (auto* s : {this, &o}) {
        for (auto& [k, a] : s->c_) r.add_to(k, a);
        for (auto& [k, b] : s->bound_) r.set_bound(k, vmin(r.bound(k), b));
        for (long k = r.lo_; k < s->lo_; ++k)
            if (!s->tail_lo_.is_inf()) r.set_bound(k, vmin(r.bound(k), s->tail_lo_));
        for (long k = s->hi_ + 1; k <= r.hi_; ++k)
            if (!s->tail_hi_.is_inf()) r.set_bound(k, vmin(r.bound(k), s->tail_hi_));
    }
    r.tail_lo_ = vmin(tail_lo_, o.tail_lo_);
    r.tail_hi_ = vmin(tail_hi_, o.tail_hi_);
    return r;
}

SkewLaurentSeries SkewLaurentSeries::operator-(const SkewLaurentSeries& o) const { return *this + o * Q(-1); }

SkewLaurentSeries SkewLaurentSeries::operator*(const Q& s) const {
    SkewLaurentSeries r = *this;
    r.c_.clear();
    if (s == 0) {
        r.bound_.clear();
        r.tail_lo_ = r.tail_hi_ = Valuation::inf();
        return r;
    }
    for (auto& [k, a] : c_) r.c_[k] = a * s;
    return r;
}

SkewLaurentSeries SkewLaurentSeries::left_mul(const RationalFunction& f) const {
    SkewLaurentSeries r = *this;
    r.c_.clear();
    for (auto& [k, a] : c_) r.set(k, f * a);
    return r;
}

bool SkewLaurentSeries::agrees_exactly(const SkewLaurentSeries& o) const {
    long lo = std::max(lo_, o.lo_), hi = std::min(hi_, o.hi_);
    for (long k = lo; k <= hi; ++k)
        if (exact(k) && o.exact(k) && coeff(k) != o.coeff(k)) return false;
    return true;
}

bool SkewLaurentSeries::operator==(const SkewLaurentSeries& o) const {
    return lo_ == o.lo_ && hi_ == o.hi_ && c_ == o.c_ && bound_ == o.bound_ && tail_lo_ == o.tail_lo_ &&
           tail_hi_ == o.tail_hi_;
}

SkewLaurentSeries SkewLaurentSeries::restrict_window(long lo, long hi) const {
    SkewLaurentSeries r(lo, hi);
    r.tail_lo_ = tail_lo_;
    r.tail_hi_ = tail_hi_;
    for (auto& [k, a] : c_) {
        if (k < lo) r.tail_lo_ = Valuation::neg_inf();
        else if (k > hi) r.tail_hi_ = Valuation::neg_inf();
        else r.c_[k] = a;
    }
    for (auto& [k, b] : bound_) {
        if (k < lo) r.tail_lo_ = vmin(r.tail_lo_, b);
        else if (k > hi) r.tail_hi_ = vmin(r.tail_hi_, b);
        else r.bound_[k] = b;
    }
    for (long k = lo; k < lo_ && k <= hi; ++k) r.set_bound(k, tail_lo_);
    for (long k = std::max(lo, hi_ + 1); k <= hi; ++k) r.set_bound(k, tail_hi_);
    return r;
}

std::string SkewLaurentSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, a] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << a.str() << ")*d^" << k;
        if (!exact(k)) os << "[v>=" << bound(k).str() << "]";
    }
    if (first) os << "0";
    if (!tail_lo_.is_inf()) os << " + O(d^" << lo_ - 1 << ", v>=" << tail_lo_.str() << ")";
    if (!tail_hi_.is_inf()) os << " + O(d^" << hi_ + 1 << ", v>=" << tail_hi_.str() << ")";
    return os.str();
}

Valuation derivative_shift(const Cheese& X) {
    const long p = X.p();
    const Q e = X.rho_exp();
    if (e >= 0) return Valuation(0);
    const Q gamma = varpi_val(p) + e;
    if (gamma <= 0) return Valuation::neg_inf();
    // v(m!) + m e = m*gamma - s_p(m)/(p-1) >= m*gamma - (number of digits of m)
    Q best = 0;
    for (long m = 1; m < (1L << 24); ++m) {
        Q t = Q(vp_factorial(m, p)) + Q(m) * e;
        best = std::min(best, t);
        long digits = 0;
        for (long t2 = m; t2 > 0; t2 /= p) ++digits;
        if (Q(m) * gamma - Q(digits + 1) > best) return Valuation(best);
    }
    throw std::runtime_error("derivative_shift: scan did not terminate");
}

namespace {

/// Degrees that may carry a nonzero coefficient: [lo, hi] with kNegInf/kPosInf for omitted tails.
struct Extent {
    long lo = kPosInf, hi = kNegInf;
    bool empty() const { return lo > hi; }
};

Extent extent(const SkewLaurentSeries& s) {
    Extent e;
    for (auto& [k, a] : s.coeffs()) e.lo = std::min(e.lo, k), e.hi = std::max(e.hi, k);
    for (auto& [k, b] : s.bounds()) e.lo = std::min(e.lo, k), e.hi = std::max(e.hi, k);
    if (!s.tail_lo().is_inf()) e.lo = kNegInf;
    if (!s.tail_hi().is_inf()) e.hi = kPosInf;
    if (e.empty() && (e.lo == kNegInf || e.hi == kPosInf)) {
        if (e.lo == kPosInf) e.lo = s.lo();
        if (e.hi == kNegInf) e.hi = s.hi();
    }
    return e;
}

struct Norms {
    Valuation window = Valuation::inf();  // computed coefficients
    Valuation all = Valuation::inf();     // computed, bounded and omitted parts
};

Norms norms(const SkewLaurentSeries& s, const Cheese* X) {
    Norms n;
    for (auto& [k, a] : s.coeffs()) n.window = vmin(n.window, X ? sup_norm(a, *X) : Valuation::neg_inf());
    n.all = vmin(n.window, vmin(s.tail_lo(), s.tail_hi()));
    for (auto& [k, b] : s.bounds()) n.all = vmin(n.all, b);
    return n;
}

SkewLaurentSeries star_impl(const SkewLaurentSeries& u, const SkewLaurentSeries& v, const StarOptions& opt,
                            bool parallel) {
    std::vector<std::pair<long, RationalFunction>> us(u.coeffs().begin(), u.coeffs().end());
    std::vector<std::pair<long, RationalFunction>> vs(v.coeffs().begin(), v.coeffs().end());

    // Natural extent of the window x window product.
    long lo_nat = kPosInf, hi_nat = kNegInf;
    for (auto& [i, a] : us)
        for (auto& [j, b] : vs) {
            hi_nat = std::max(hi_nat, i + j);
            long pdeg = b.is_polynomial() ? b.poly_degree() : kPosInf;
            long mmax = i >= 0 ? std::min(i, pdeg) : pdeg;
            lo_nat = std::min(lo_nat, mmax >= kPosInf ? kNegInf : i + j - mmax);
        }
    if (us.empty() || vs.empty()) lo_nat = u.lo() + v.lo(), hi_nat = u.hi() + v.hi();

    long lo_out = opt.lo ? *opt.lo : (lo_nat > kNegInf ? lo_nat : u.lo() + v.lo() - SkewLaurentSeries::kDefaultWindow);
    long hi_out = opt.hi ? *opt.hi : hi_nat;
    if (!opt.hi && !(u.tail_hi().is_inf() && v.tail_hi().is_inf())) hi_out = std::max(hi_out, u.hi() + v.hi());
    if (!opt.lo && !(u.tail_lo().is_inf() && v.tail_lo().is_inf())) lo_out = std::min(lo_out, u.lo() + v.lo());
    if (lo_out > hi_out) throw std::invalid_argument("star_product: empty output window");

    // Derivatives d^m(v_j) for every m the window needs.
    std::vector<std::vector<RationalFunction>> der(vs.size());
    const long nv = static_cast<long>(vs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long t = 0; t < nv; ++t) {
        long j = vs[t].first;
        long cap = 0;
        for (auto& [i, a] : us) {
            long m = i + j - lo_out;
            if (i >= 0) m = std::min(m, i);
            cap = std::max(cap, m);
        }
        auto& d = der[t];
        d.push_back(vs[t].second);
        for (long m = 1; m <= cap; ++m) {
            auto nx = d.back().derivative();
            if (nx.is_zero()) break;
            d.push_back(std::move(nx));
        }
    }

    const long width = hi_out - lo_out + 1;
    std::vector<RationalFunction> out(width);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long w = 0; w < width; ++w) {
        long k = lo_out + w;
        RationalFunction acc;
        for (auto& [i, a] : us)
            for (long t = 0; t < nv; ++t) {
                long m = i + vs[t].first - k;
                if (m < 0 || (i >= 0 && m > i) || m >= static_cast<long>(der[t].size())) continue;
                acc += a * der[t][m] * Q(binom_z(i, m));
            }
        out[w] = std::move(acc);
    }

    SkewLaurentSeries r(lo_out, hi_out);
    for (long w = 0; w < width; ++w) r.set(lo_out + w, out[w]);
    if (u.finite_exact() && v.finite_exact() && lo_nat >= lo_out && hi_nat <= hi_out) return r;

    // Error propagation.
    const Valuation shift = opt.X ? derivative_shift(*opt.X) : Valuation::neg_inf();
    const Norms nu = norms(u, opt.X), nv_ = norms(v, opt.X);
    const Extent eu = extent(u), ev = extent(v);
    // Lowest output degree reachable from an unknown u_i, i >= i0, times all of v.
    // d^m(v_j) = 0 for m > deg v_j, and m <= i when i >= 0.
    long dv = kPosInf;
    for (auto& [j, b] : vs) dv = b.is_polynomial() ? std::min(dv, j - b.poly_degree()) : kNegInf;
    auto reach_from = [&](long i0) {
        if (i0 < 0) {
            if (!v.bounds().empty() || !v.tail_lo().is_inf() || !v.tail_hi().is_inf()) return kNegInf;
            return sat_add(i0, dv);
        }
        long lo = sat_add(i0, dv);
        if (!v.bounds().empty()) lo = std::min(lo, v.bounds().begin()->first);
        if (!v.tail_lo().is_inf()) lo = kNegInf;
        if (!v.tail_hi().is_inf()) lo = std::min(lo, v.hi() + 1);
        return std::max(lo, ev.lo);
    };
    Valuation tlo = Valuation::inf(), thi = Valuation::inf();
    std::map<long, Valuation> bnd;
    auto contribute = [&](const Valuation& a, const Valuation& b, long kmin, long kmax) {
        if (a.is_inf() || b.is_inf() || kmin > kmax) return;
        Valuation val = a + b + shift;
        if (kmin < lo_out) tlo = vmin(tlo, val);
        if (kmax > hi_out) thi = vmin(thi, val);
        for (long k = std::max(kmin, lo_out); k <= std::min(kmax, hi_out); ++k)
            bnd[k] = bnd.count(k) ? vmin(bnd[k], val) : val;
    };
    // omitted low / high parts of u
    contribute(u.tail_lo(), nv_.all, kNegInf, sat_add(u.lo() - 1, ev.hi));
    contribute(u.tail_hi(), nv_.all, reach_from(u.hi() + 1), kPosInf);
    // omitted low / high parts of v
    contribute(nu.all, v.tail_lo(), kNegInf, sat_add(eu.hi, v.lo() - 1));
    contribute(nu.all, v.tail_hi(), eu.lo >= 0 ? v.hi() + 1 : kNegInf, kPosInf);
    // bounded window coefficients
    for (auto& [i, b] : u.bounds())
        contribute(b, nv_.all, reach_from(i), sat_add(i, ev.hi));
    for (auto& [j, b] : v.bounds()) contribute(nu.all, b, eu.lo >= 0 ? j : kNegInf, sat_add(eu.hi, j));
    // window x window terms that fall outside the output window
    if (lo_nat < lo_out) contribute(nu.window, nv_.window, kNegInf, lo_out - 1);
    if (hi_nat > hi_out) contribute(nu.window, nv_.window, hi_out + 1, kPosInf);

    for (auto& [k, b] : bnd) r.set_bound(k, b);
    r.set_tail_lo(tlo);
    r.set_tail_hi(thi);
    return r;
}

}  // namespace

SkewLaurentSeries star_product(const SkewLaurentSeries& u, const SkewLaurentSeries& v, const StarOptions& opt) {
    return star_impl(u, v, opt, true);
}

SkewLaurentSeries star_product_serial(const SkewLaurentSeries& u, const SkewLaurentSeries& v,
                                      const StarOptions& opt) {
    return star_impl(u, v, opt, false);
}

namespace {

void require_skew_poly(const SkewLaurentSeries& u, const char* who) {
    if (!u.finite_exact() || !u.nonnegative())
        throw std::invalid_argument(std::string(who) + ": needs a finite exact series with nonnegative degrees");
}

}  // namespace

SkewLaurentSeries ore_product_naive(const SkewLaurentSeries& u, const SkewLaurentSeries& v) {
    require_skew_poly(u, "ore_product_naive");
    require_skew_poly(v, "ore_product_naive");
    long hu = std::max(0L, u.max_degree()), hv = std::max(0L, v.max_degree());
    // cur = d^i * v as a coefficient vector
    std::vector<RationalFunction> cur(hu + hv + 1);
    for (auto& [j, b] : v.coeffs()) cur[j] = b;
    SkewLaurentSeries r(0, hu + hv);
    for (long i = 0; i <= hu; ++i) {
        auto a = u.coeff(i);
        if (!a.is_zero())
            for (long k = 0; k <= hu + hv; ++k)
                if (!cur[k].is_zero()) r.add_to(k, a * cur[k]);
        // d * (sum b_k d^k) = sum (b_k' d^k + b_k d^{k+1})
        std::vector<RationalFunction> nx(cur.size());
        for (long k = 0; k <= hu + hv; ++k) {
            if (cur[k].is_zero()) continue;
            nx[k] += cur[k].derivative();
            if (k + 1 <= hu + hv) nx[k + 1] += cur[k];
        }
        cur = std::move(nx);
    }
    return r;
}

SkewLaurentSeries ore_inverse_expansion(const Poly& a, long N) {
    if (N < std::max(0L, a.deg())) throw std::invalid_argument("ore_inverse_expansion: N must be >= deg a");
    SkewLaurentSeries r(-N - 1, -1);
    Poly cur = a;
    for (long n = 0; n <= N && !cur.is_zero(); ++n) {
        r.set(-n - 1, RationalFunction(n % 2 ? -cur : cur));
        cur = cur.derivative();
    }
    return r;
}

SeriesNorm series_norm(const SkewLaurentSeries& u, const Q& s_exp, const Q& r_exp, const Cheese& X) {
    auto weight = [&](long j) { return Q(-Q(j) * (j >= 0 ? r_exp : s_exp)); };
    SeriesNorm out;
    out.value = Valuation::inf();
    for (auto& [j, a] : u.coeffs()) out.value = vmin(out.value, sup_norm(a, X) + Valuation(weight(j)));
    Valuation unknown = Valuation::inf();
    for (auto& [j, b] : u.bounds()) unknown = vmin(unknown, b + Valuation(weight(j)));
    if (!u.tail_lo().is_inf()) {
        // inf of the weight over j <= lo - 1
        long top = u.lo() - 1;
        Valuation w = s_exp < 0 ? Valuation::neg_inf() : Valuation(weight(std::min(top, -1L)));
        if (top >= 0) w = vmin(w, vmin(Valuation(weight(0)), Valuation(weight(top))));
        unknown = vmin(unknown, u.tail_lo() + w);
    }
    if (!u.tail_hi().is_inf()) {
        long bot = u.hi() + 1;
        Valuation w = r_exp > 0 ? Valuation::neg_inf() : Valuation(weight(std::max(bot, 0L)));
        if (bot < 0) w = vmin(w, vmin(Valuation(weight(bot)), Valuation(weight(-1))));
        unknown = vmin(unknown, u.tail_hi() + w);
    }
    out.tail_may_dominate = !(out.value < unknown);
    return out;
}

SkewLaurentSeries transpose(const SkewLaurentSeries& u) {
    require_skew_poly(u, "transpose");
    long h = std::max(0L, u.max_degree());
    SkewLaurentSeries r(0, h);
    // (a d^j)^T = (-d)^j a = (-1)^j sum_m binom(j,m) a^{(m)} d^{j-m}
    for (auto& [j, a] : u.coeffs()) {
        RationalFunction dm = a;
        for (long m = 0; m <= j && !dm.is_zero(); ++m) {
            Q s = Q(binom_z(j, m)) * (j % 2 ? Q(-1) : Q(1));
            r.add_to(j - m, dm * s);
            dm = dm.derivative();
        }
    }
    return r;
}

RationalFunction apply_to_function(const SkewLaurentSeries& u, const RationalFunction& f) {
    if (!u.coeffs().empty() && u.coeffs().begin()->first < 0)
        throw std::invalid_argument("apply_to_function: negative powers of d do not act on functions");
    RationalFunction out, df = f;
    long k = 0;
    for (auto& [j, a] : u.coeffs()) {
        for (; k < j; ++k) df = df.derivative();
        out += a * df;
    }
    return out;
}

SkewLaurentSeries gdot_divided_power(const MobiusMap& g, long n) {
    if (n < 0) throw std::invalid_argument("gdot_divided_power: n must be >= 0");
    if (n == 0) return SkewLaurentSeries::scalar(RationalFunction(Q(1)));
    SkewLaurentSeries r(1, n);
    RationalFunction lin(Poly(std::vector<Q>{g.a(), -g.c()}));
    Q detn = 1;
    for (long i = 0; i < n; ++i) detn *= g.det();
    for (long i = 1; i <= n; ++i) {
        Q mc = 1;
        for (long t = 0; t < n - i; ++t) mc *= -g.c();
        Q s = Q(binom_z(n - 1, i - 1)) * mc / detn / Q(factorial(i));
        r.set(i, lin.pow(n + i) * s);
    }
    return r;
}

SkewLaurentSeries group_transform(const MobiusMap& g, const SkewLaurentSeries& u) {
    require_skew_poly(u, "group_transform");
    long h = std::max(0L, u.max_degree());
    SkewLaurentSeries r(0, h);
    auto gd = SkewLaurentSeries::monomial(g.act_derivation(), 1);
    SkewLaurentSeries pw = SkewLaurentSeries::scalar(RationalFunction(Q(1)));
    for (long n = 0; n <= h; ++n) {
        auto a = u.coeff(n);
        if (!a.is_zero()) {
            auto term = pw.left_mul(g.act(a));
            for (auto& [k, c] : term.coeffs()) r.add_to(k, c);
        }
        if (n < h) pw = star_product_serial(pw, gd);
    }
    return r;
}

}  // namespace padic
