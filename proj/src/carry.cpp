#include "padic/carry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace padic {

long CarryProfile::carries() const {
    if (L_infinite) throw std::logic_error("CarryProfile: infinitely many carries");
    return L - noncarries[L];
}

CarryProfile carry_profile(const Q& lam, long n, long m, long p) {
    require_prime(p);
    if (n < 0) throw std::invalid_argument("carry_profile: n must be >= 0");
    if (m < 1) throw std::invalid_argument("carry_profile: m must be >= 1");
    CarryProfile cp;
    cp.lam = lam;
    cp.n = n;
    cp.p = p;
    DigitStream ds(lam, p);
    std::vector<int> g;
    long rem = n, c = 0, i = 0, last = -1;
    bool infinite = false;
    while (rem > 0 || c == 1 || i < m) {
        if (rem == 0 && c == 1 && ds.rest() == -1) {
            infinite = true;
            break;
        }
        long a = ds.next();
        long s = a + rem % p + c;
        rem /= p;
        c = s >= p ? 1 : 0;
        g.push_back(static_cast<int>(c));
        if (c) last = i;
        ++i;
        if (rem == 0 && c == 0 && i >= m) break;
    }
    if (infinite) {
        while (static_cast<long>(g.size()) < m) g.push_back(1);
        cp.L_infinite = true;
        cp.L = -1;
    } else {
        cp.L = last + 1;
    }
    long upto = std::max<long>(m, cp.L_infinite ? 0 : cp.L);
    while (static_cast<long>(g.size()) < upto) g.push_back(0);
    long nc = 0;
    cp.noncarries.push_back(0);
    for (long j = 0; j < upto; ++j) {
        if (g[j] == 0) ++nc;
        cp.noncarries.push_back(nc);
    }
    g.resize(m);
    cp.gamma = g;
    return cp;
}

Valuation vp_binom_kummer(const Q& lam, long n, long p) {
    if (n < 0) throw std::invalid_argument("vp_binom_kummer: n must be >= 0");
    if (n == 0) return Valuation(0);
    CarryProfile cp = carry_profile(lam, n, 1, p);
    if (cp.L_infinite) return Valuation::inf();
    return Valuation(cp.carries());
}

Valuation vp_binom(const Q& lam, long r, long p) { return vp_binom_kummer(lam - r, r, p); }

FixedDigits::FixedDigits(const Q& lam, long p, long depth) : lam_(lam), p_(p) {
    DigitStream ds(lam, p);
    d_.reserve(depth);
    for (long i = 0; i < depth; ++i) d_.push_back(ds.next());
    tail_ = ds.rest();
}

long FixedDigits::tail_carry_run(bool add) const {
    if (add && tail_ == -1) return -1;
    if (!add && tail_ == 0) return -1;
    DigitStream ds(tail_, p_);
    long through = add ? p_ - 1 : 0;
    long run = 0;
    while (ds.next() == through) ++run;
    return run;
}

long FixedDigits::add_carries(long n) const {
    long c = 0, count = 0, i = 0;
    const long T = static_cast<long>(d_.size());
    while (n > 0 || c) {
        if (i >= T) {
            if (n > 0) throw std::invalid_argument("FixedDigits: integer longer than cached depth");
            long run = tail_carry_run(true);
            return run < 0 ? -1 : count + run;
        }
        long s = d_[i] + n % p_ + c;
        n /= p_;
        c = s >= p_;
        count += c;
        ++i;
    }
    return count;
}

long FixedDigits::sub_borrows(long n) const {
    long b = 0, count = 0, i = 0;
    const long T = static_cast<long>(d_.size());
    while (n > 0 || b) {
        if (i >= T) {
            if (n > 0) throw std::invalid_argument("FixedDigits: integer longer than cached depth");
            long run = tail_carry_run(false);
            return run < 0 ? -1 : count + run;
        }
        long t = d_[i] - n % p_ - b;
        n /= p_;
        b = t < 0;
        count += b;
        ++i;
    }
    return count;
}

std::string parity_violation(long q, long k, long N) {
    bool even_rule = (1 <= k && k <= q - 1) || (k == 2 && q == 2);
    if (even_rule && N % 2 != 0)
        return "N must be even when 1 <= k <= q-1 or k = q = 2 (got N = " + std::to_string(N) + ")";
    if (!even_rule && k == q && q > 2 && N % 2 == 0)
        return "N must be odd when k = q > 2 (got N = " + std::to_string(N) + ")";
    return "";
}

long expected_M(long q, long k, long N) {
    if ((1 <= k && k <= q - 2) || (k == q && q > 2)) return N - 1;
    if ((k == q - 1 && q > 2) || (k == q && q == 2)) return N - 2;
    if (k == 1 && q == 2) return N - 3;
    throw std::invalid_argument("expected_M: k out of range");
}

SpecialIndex special_index(long p, long f, long k, long N) {
    require_prime(p);
    if (f < 1) throw std::invalid_argument("special_index: f must be >= 1");
    Z qz = ppow(p, f);
    if (qz > 1000000) throw std::invalid_argument("special_index: q too large");
    long q = qz.get_si();
    if (k < 1 || k > q) throw std::invalid_argument("special_index: k must satisfy 1 <= k <= q");
    if (N < 6) throw std::invalid_argument("special_index: N must be >= 6");
    std::string pv = parity_violation(q, k, N);
    if (!pv.empty()) throw std::invalid_argument("special_index: " + pv);
    Z qN = ppow(p, f * N);
    if (qN > Z(std::numeric_limits<long>::max() / 4)) throw std::invalid_argument("special_index: q^N too large");
    Z inv;
    Z den = qz * qz - 1;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), qN.get_mpz_t());
    Z nz = (qz * k * inv) % qN;
    if (nz == 0) nz = qN;
    SpecialIndex idx;
    idx.p = p;
    idx.f = f;
    idx.q = q;
    idx.k = k;
    idx.d = q + 1;
    idx.N = N;
    idx.n = nz.get_si();
    long partial = 1, term = 1, M = 0;
    while (true) {
        long nextterm = term * q;
        if (partial + nextterm > idx.n) break;
        term = nextterm;
        partial += term;
        ++M;
    }
    idx.M = M;
    idx.s = idx.n - partial;
    idx.lam = Q(k, q + 1);
    idx.lam.canonicalize();
    if (idx.M != expected_M(q, k, N))
        throw std::logic_error("special_index: M = " + std::to_string(idx.M) + " disagrees with the case table");
    return idx;
}

void require_desk_scale(const SpecialIndex& idx) {
    bool ok;
    if (idx.q == 2) ok = idx.N <= 12;
    else if (idx.q == 3) ok = idx.N <= 10;
    else ok = ppow(idx.q, idx.N) <= 59049;
    if (!ok) {
        Z mults = Z(idx.n) * (idx.q + 1);
        throw std::invalid_argument("sum too large for a desk run: n = " + std::to_string(idx.n) + " terms, about " +
                                    mults.get_str() + " capped-precision multiplications");
    }
}

static std::vector<long> base_digits(Z v, long base, long len) {
    std::vector<long> out;
    for (long i = 0; i < len; ++i) {
        out.push_back(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(base)));
        mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(base));
    }
    return out;
}

static std::vector<long> pattern(const std::vector<long>& prefix, const std::vector<long>& pair, long len) {
    std::vector<long> out;
    for (long i = 0; i < len; ++i) {
        if (i < static_cast<long>(prefix.size())) out.push_back(prefix[i]);
        else out.push_back(pair[(i - prefix.size()) % 2]);
    }
    return out;
}

QExpReport qexp_check(const SpecialIndex& idx) {
    const long q = idx.q, k = idx.k, len = idx.M + 1;
    QExpReport r;
    std::vector<long> sp, spair, rp, rpair;
    if (1 <= k && k <= q - 2) {
        r.which = 'a';
        sp = {q - 1, q - k - 2};
        spair = {q - 2, q - k - 2};
        rpair = {k + 1, 1};
    } else if (k == q - 1 && q > 2) {
        r.which = 'b';
        sp = {q - 1};
        spair = {q - 1, q - 3};
        rp = {0};
        rpair = {2, 0};
    } else if (k == 1 && q == 2) {
        r.which = 'c';
        sp = {1, 1};
        spair = {1, 0};
        rp = {0, 0};
        rpair = {1, 0};
    } else if (k == 2 && q == 2) {
        r.which = 'd';
        sp = {1, 0, 1};
        spair = {1, 0};
        rp = {1, 0, 0};
        rpair = {1, 0};
    } else {
        r.which = 'e';
        sp = {q - 1};
        spair = {q - 2, q - 3};
        rp = {1};
        rpair = {2, 1};
    }
    r.s_expected = pattern(sp, spair, len);
    r.rest_expected = pattern(rp, rpair, len);
    r.s_digits = base_digits(Z(idx.s), q, len);
    Z rest = residue_mod(idx.lam - idx.s, idx.p, idx.f * len);
    r.rest_digits = base_digits(rest, q, len);
    r.s_ok = r.s_digits == r.s_expected && Z(idx.s) < ppow(q, len);
    r.rest_ok = r.rest_digits == r.rest_expected;
    CarryProfile cp = carry_profile(idx.lam - idx.s, idx.s, 1, idx.p);
    r.L_infinite = cp.L_infinite;
    r.L = cp.L;
    r.no_carry_last = !cp.L_infinite && cp.L < len * idx.f;
    return r;
}

long denom_valuation(long n, long r, long q, long p) {
    if (r < 0 || r > n) throw std::invalid_argument("denom_valuation: need 0 <= r <= n");
    return vp_int(Z(n - r) * (q - 1) + 1, p);
}

static Q alpha_of(const SpecialIndex& idx) { return Q(idx.q) * idx.lam - Q(idx.n) * (idx.q - 1); }

Valuation term_valuation(const SpecialIndex& idx, long r) {
    if (r < 0 || r > idx.n) throw std::invalid_argument("term_valuation: need 0 <= r <= n");
    Valuation a = vp_binom(idx.lam, r, idx.p);
    Valuation b = vp_binom_kummer(alpha_of(idx), (idx.n - r) * (idx.q - 1), idx.p);
    return a + b - Valuation(denom_valuation(idx.n, r, idx.q, idx.p));
}

static long digits_needed(long x, long p) {
    long c = 0;
    while (x > 0) {
        x /= p;
        ++c;
    }
    return c;
}

TermValuator::TermValuator(const SpecialIndex& idx)
    : idx_(idx),
      lam_(idx.lam, idx.p, digits_needed(idx.n * idx.q, idx.p) + 8),
      alpha_(alpha_of(idx), idx.p, digits_needed(idx.n * idx.q, idx.p) + 8) {}

Q TermValuator::operator()(long r) const {
    long a = lam_.sub_borrows(r);
    long b = alpha_.add_carries((idx_.n - r) * (idx_.q - 1));
    if (a < 0 || b < 0) throw std::logic_error("TermValuator: vanishing summand");
    return Q(a + b - denom_valuation(idx_.n, r, idx_.q, idx_.p));
}

ArgminReport term_argmin(const SpecialIndex& idx) {
    TermValuator tv(idx);
    const long n = idx.n;
    const long chunks = std::min<long>(64, n + 1);
    std::vector<long> best(chunks, -1);
    std::vector<Q> bestv(chunks), secondv(chunks);
    std::vector<int> has_second(chunks, 0);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < chunks; ++c) {
        long lo = (n + 1) * c / chunks, hi = (n + 1) * (c + 1) / chunks;
        for (long r = lo; r < hi; ++r) {
            Q v = tv(r);
            if (best[c] < 0 || v < bestv[c]) {
                if (best[c] >= 0) {
                    secondv[c] = bestv[c];
                    has_second[c] = 1;
                }
                best[c] = r;
                bestv[c] = v;
            } else if (!has_second[c] || v < secondv[c]) {
                secondv[c] = v;
                has_second[c] = 1;
            }
        }
    }
    ArgminReport rep;
    bool have2 = false;
    for (long c = 0; c < chunks; ++c) {
        if (best[c] < 0) continue;
        std::vector<Q> cand;
        if (rep.argmin < 0) {
            rep.argmin = best[c];
            rep.min_val = bestv[c];
        } else if (bestv[c] < rep.min_val) {
            rep.second_val = rep.min_val;
            have2 = true;
            rep.argmin = best[c];
            rep.min_val = bestv[c];
        } else if (!have2 || bestv[c] < rep.second_val) {
            rep.second_val = bestv[c];
            have2 = true;
        }
        if (has_second[c] && (!have2 || secondv[c] < rep.second_val)) {
            rep.second_val = secondv[c];
            have2 = true;
        }
    }
    rep.unique = !have2 || rep.second_val > rep.min_val;
    return rep;
}

namespace {

struct SumFactors {
    const SpecialIndex& idx;
    long prec;
    Q qlam;

    explicit SumFactors(const SpecialIndex& i, long pr) : idx(i), prec(pr), qlam(Q(i.q) * i.lam) {}

    PadicNumber one() const { return PadicNumber::from_int(1, idx.p, prec); }

    /// B_r / B_{r-1}; the r = 0 factor is 1.
    PadicNumber fB(long r) const {
        if (r == 0) return one();
        Q f = (idx.lam - r + 1) / Q(r);
        return PadicNumber::from_rational(f, idx.p, prec);
    }

    /// S_r / S_{r+1}; the r = n factor is 1.
    PadicNumber fS(long r) const {
        if (r == idx.n) return one();
        Q a = qlam - Q((idx.q - 1) * (r + 1));
        Q b = Q((idx.n - r - 1) * (idx.q - 1));
        Q num = 1, den = 1;
        for (long i = 1; i <= idx.q - 1; ++i) {
            num *= a + i;
            den *= b + i;
        }
        return PadicNumber::from_rational(num / den, idx.p, prec);
    }

    PadicNumber term(long r, const PadicNumber& B, const PadicNumber& S, SumSigns signs) const {
        long b = (idx.n - r) * (idx.q - 1);
        PadicNumber t = B * S / PadicNumber::from_int(b + 1, idx.p, prec);
        if (signs == SumSigns::Series) {
            long e = r + b;
            if (e % 2 == 0) t = -t;
        }
        return t;
    }
};

SumEstimate finish(const SpecialIndex& idx, long prec, PadicNumber sum) {
    if (sum.is_zero())
        throw PrecisionExhausted("sum_estimate: sum indistinguishable from zero at precision " + std::to_string(prec),
                                 2 * prec);
    SumEstimate out;
    out.sum = sum;
    out.v_sum = sum.valuation();
    out.v_dominant = term_valuation(idx, idx.s);
    out.prec = prec;
    return out;
}

void check_prec(long prec) {
    if (prec < 1) throw std::invalid_argument("sum_estimate: precision must be positive");
}

}  // namespace

SumEstimate sum_estimate_serial(const SpecialIndex& idx, long prec, SumSigns signs) {
    check_prec(prec);
    require_desk_scale(idx);
    SumFactors F(idx, prec);
    const long n = idx.n;
    std::vector<PadicNumber> S(n + 1);
    S[n] = F.one();
    for (long r = n - 1; r >= 0; --r) S[r] = S[r + 1] * F.fS(r);
    PadicNumber B = F.one();
    PadicNumber sum = PadicNumber::zero(idx.p, prec);
    for (long r = 0; r <= n; ++r) {
        B = B * F.fB(r);
        sum = sum + F.term(r, B, S[r], signs);
    }
    return finish(idx, prec, sum);
}

SumEstimate sum_estimate(const SpecialIndex& idx, long prec, SumSigns signs) {
    check_prec(prec);
    require_desk_scale(idx);
    SumFactors F(idx, prec);
    const long n = idx.n;
    const long chunks = std::min<long>(64, n + 1);
    auto lo_of = [&](long c) { return (n + 1) * c / chunks; };
    std::vector<PadicNumber> PB(chunks), PS(chunks), part(chunks);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < chunks; ++c) {
        PadicNumber b = F.one(), s = F.one();
        for (long r = lo_of(c); r < lo_of(c + 1); ++r) {
            b = b * F.fB(r);
            s = s * F.fS(r);
        }
        PB[c] = b;
        PS[c] = s;
    }
    std::vector<PadicNumber> Bpre(chunks), Spost(chunks);
    Bpre[0] = F.one();
    for (long c = 1; c < chunks; ++c) Bpre[c] = Bpre[c - 1] * PB[c - 1];
    Spost[chunks - 1] = F.one();
    for (long c = chunks - 2; c >= 0; --c) Spost[c] = Spost[c + 1] * PS[c + 1];
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < chunks; ++c) {
        const long lo = lo_of(c), hi = lo_of(c + 1);
        std::vector<PadicNumber> S(hi - lo);
        PadicNumber s = Spost[c];
        for (long r = hi - 1; r >= lo; --r) {
            s = s * F.fS(r);
            S[r - lo] = s;
        }
        PadicNumber B = Bpre[c];
        PadicNumber acc = PadicNumber::zero(idx.p, prec);
        for (long r = lo; r < hi; ++r) {
            B = B * F.fB(r);
            acc = acc + F.term(r, B, S[r - lo], signs);
        }
        part[c] = acc;
    }
    PadicNumber sum = PadicNumber::zero(idx.p, prec);
    for (long c = 0; c < chunks; ++c) sum = sum + part[c];
    return finish(idx, prec, sum);
}

}  // namespace padic
