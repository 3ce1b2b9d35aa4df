#include "doctest.h"

#include "padic/cheese.hpp"
#include "padic/padic_core.hpp"

#include <random>

using namespace padic;

namespace {

RationalFunction X() { return RationalFunction::x(); }

/// Brute-force Gauss norm of a Laurent polynomial in (x - c) on |x - c| = p^e.
Valuation circle_norm(const std::vector<std::pair<long, Q>>& terms, long p, const Q& e) {
    Valuation best = Valuation::inf();
    for (auto& [k, c] : terms)
        if (c != 0) best = vmin(best, Valuation(Q(Q(vp_q(c, p)) - Q(k) * e)));
    return best;
}

}  // namespace

TEST_CASE("rho and spectral radius") {
    auto D = Cheese::unit_disc(3);
    CHECK(D.rho_exp() == 0);
    CHECK(D.r_exp() == Q(-1, 2));
    for (long n = 1; n <= 4; ++n) {
        Cheese C(5, 0, 0, {{Q(0), Q(-n)}});
        CHECK(C.r_exp() == Q(n) - Q(1, 4));
    }
    Cheese C(3, 0, 0, {{Q(0), Q(-2)}, {Q(1), Q(-1, 2)}});
    CHECK(C.rho_exp() == -2);
    CHECK(C.admissible(Q(2)));
    CHECK_FALSE(C.admissible(C.r_exp()));
    CHECK(C.dagger_admissible(C.r_exp()));
    // r(gX) = r(X)/|rho(g)|
    MobiusMap g(9, 1, 0, 1);
    auto gC = C.transform(g);
    CHECK(gC.r_exp() == C.r_exp() + vp_q(g.rho(), 3));
    MobiusMap h(1, 2, 0, 27);
    CHECK(C.transform(h).r_exp() == C.r_exp() + vp_q(h.rho(), 3));
    CHECK_THROWS_AS(C.transform(MobiusMap(1, 0, 3, 1)), std::invalid_argument);
}

TEST_CASE("cheese validation") {
    CHECK_THROWS_AS(Cheese(4, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Cheese(3, 0, 0, {{Q(0), Q(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(Cheese(3, 0, 0, {{Q(1, 3), Q(-1)}}), std::invalid_argument);
    CHECK_THROWS_AS(Cheese(3, 0, 0, {{Q(0), Q(-1)}, {Q(9), Q(-1)}}), std::invalid_argument);
    CHECK_NOTHROW(Cheese(3, 0, 0, {{Q(0), Q(-1)}, {Q(3), Q(-1)}}));
    Cheese C(3, 0, 0, {{Q(0), Q(-1)}});
    CHECK(C.locate(Q(1, 9)) == -2);
    CHECK(C.locate(9) == 0);
    CHECK(C.locate(3) == -1);
    CHECK(C.locate(1) == -1);
}

TEST_CASE("sup norm examples") {
    auto D = Cheese::unit_disc(3);
    CHECK(sup_norm(X(), D) == Valuation(0));
    CHECK(sup_norm(X() * Q(3), D) == Valuation(1));
    CHECK(sup_norm(RationalFunction(), D).is_inf());
    // |s/(x - a)| = 1 when the hole at a has radius |s|
    for (long n = 0; n <= 3; ++n) {
        Q s = 1;
        for (long i = 0; i < n; ++i) s *= 3;
        Cheese C(3, 0, 0, {{Q(1), Q(-n)}});
        CHECK(sup_norm(RationalFunction::power(1, -1) * s, C) == Valuation(0));
    }
    // poles outside the outer disc: 1/(x - 1/3) on the unit disc has norm 3
    CHECK(sup_norm(RationalFunction::power(Q(1, 3), -1), D) == Valuation(1));
    CHECK_THROWS_AS(sup_norm(RationalFunction::power(1, -1), D), std::domain_error);
    // Laurent polynomials on a circle agree with the Gauss norm
    Cheese A = Cheese::circle(3, 0, 0);
    auto u = X().pow(2) * Q(3) + X().inverse() * Q(1, 9) + RationalFunction(Q(5));
    CHECK(sup_norm(u, A) == circle_norm({{2, Q(3)}, {-1, Q(1, 9)}, {0, Q(5)}}, 3, 0));
    Cheese A2 = Cheese::circle(2, 0, 2);
    auto w = X().pow(3) * Q(1, 2) + X().pow(-2) * Q(4);
    CHECK(sup_norm(w, A2) == circle_norm({{3, Q(1, 2)}, {-2, Q(4)}}, 2, 2));
}

TEST_CASE("sup norm with several poles in one hole") {
    // 1/(x - 3) - 1/x on |x| >= 1: expansion 3/x^2 + 9/x^3 + ... has norm |3|
    Cheese C(3, 0, 0, {{Q(0), Q(0)}});
    auto u = RationalFunction::power(3, -1) - RationalFunction::power(0, -1);
    CHECK(sup_norm(u, C) == Valuation(1));
    // matches |3/(x(x-3))| = |3|
    CHECK(sup_norm(RationalFunction::factored(3, {{Q(0), -1}, {Q(3), -1}}), C) == Valuation(1));
}

TEST_CASE("sup norm is multiplicative when every hole has the outer radius") {
    std::mt19937_64 rng(21);
    const long p = 3;
    Cheese C(p, 0, 0, {{Q(0), Q(0)}, {Q(1), Q(0)}});
    std::vector<Q> in_holes{0, 9, Q(-3), 1, Q(28), Q(4), Q(10, 1), Q(6)};
    std::vector<Q> outside{Q(1, 3), Q(2, 9), Q(1, 27)};
    std::uniform_int_distribution<int> pick(0, 10), ex(-3, 3), sc(-20, 20);
    auto rnd = [&]() {
        Divisor f;
        for (int i = 0; i < 3; ++i) {
            int k = pick(rng);
            Q a = k < static_cast<int>(in_holes.size()) ? in_holes[k] : outside[k - in_holes.size()];
            f[a] += ex(rng);
        }
        for (auto it = f.begin(); it != f.end();) {
            if (it->second == 0) it = f.erase(it);
            else ++it;
        }
        Q lam = 0;
        while (lam == 0) lam = Q(sc(rng), 1 + pick(rng));
        lam.canonicalize();
        return RationalFunction::factored(lam, f);
    };
    for (int t = 0; t < 200; ++t) {
        auto u = rnd(), v = rnd();
        REQUIRE(sup_norm(u * v, C) == sup_norm(u, C) + sup_norm(v, C));
    }
}

TEST_CASE("sup norm is not multiplicative on a thick annulus") {
    // 1/3 <= |x| <= 1
    Cheese A(3, 0, 0, {{Q(0), Q(-1)}});
    auto u = X(), v = X().inverse() * Q(3);
    CHECK(sup_norm(u, A) == Valuation(0));
    CHECK(sup_norm(v, A) == Valuation(0));
    CHECK(sup_norm(u * v, A) == Valuation(1));
}

TEST_CASE("sup norm is invariant under triangular maps") {
    Cheese C(3, 0, 0, {{Q(0), Q(-1)}, {Q(1), Q(-1)}});
    auto u = RationalFunction::factored(2, {{Q(0), -2}, {Q(1), 1}, {Q(1, 3), -1}});
    for (auto g : {MobiusMap(1, 4, 0, 1), MobiusMap(3, 1, 0, 1), MobiusMap(1, 0, 0, 9), MobiusMap(2, 5, 0, 7)}) {
        // (g.u)(x) = u(g^{-1} x), a function on g(X)
        CHECK(sup_norm(g.act(u), C.transform(g)) == sup_norm(u, C));
    }
}

TEST_CASE("divided power operator norm") {
    for (long n = 0; n <= 6; ++n) {
        auto r = divided_power_norm_check(Cheese::unit_disc(5), n);
        CHECK(r.op_norm == Valuation(0));
        CHECK(r.witness_ratio == r.op_norm);
    }
    Cheese C(3, 0, 0, {{Q(0), Q(-1)}});
    auto r = divided_power_norm_check(C, 2);
    CHECK(r.op_norm == Valuation(-2));
    CHECK(r.witness_ratio == Valuation(-2));
    Cheese C2(2, 0, 1, {{Q(0), Q(-3, 2)}, {Q(1), Q(-1, 2)}});
    for (long n = 0; n <= 8; ++n) {
        auto rr = divided_power_norm_check(C2, n);
        CHECK(rr.op_norm == Valuation(Q(Q(-3 * n) / 2)));
        CHECK(rr.witness_ratio == rr.op_norm);
    }
    CHECK_THROWS_AS(divided_power_norm_check(C, -1), std::invalid_argument);
}

TEST_CASE("divided powers never beat the operator norm") {
    std::mt19937_64 rng(22);
    Cheese C(3, 0, 0, {{Q(0), Q(-1)}, {Q(2), Q(-2)}});
    std::uniform_int_distribution<int> ex(-3, 3);
    for (int t = 0; t < 60; ++t) {
        auto u = RationalFunction::factored(1, {{Q(0), ex(rng)}, {Q(2), ex(rng)}, {Q(9), ex(rng)}, {Q(29), ex(rng)}, {Q(1, 3), ex(rng)}});
        Valuation vu = sup_norm(u, C);
        Z nf = 1;
        for (long n = 1; n <= 5; ++n) {
            nf *= n;
            auto dn = u.derivative(n) * Q(Q(1) / Q(nf));
            REQUIRE(sup_norm(dn, C) >= vu + divided_power_norm_check(C, n).op_norm);
        }
    }
}

TEST_CASE("adding holes shrinks rho") {
    Cheese X0(3, 0, 1);
    Cheese X1 = X0.with_hole({Q(0), Q(0)});
    Cheese X2 = X1.with_hole({Q(1), Q(-2)});
    Cheese X3 = X2.with_hole({Q(2), Q(-1)});
    std::vector<Cheese> chain{X0, X1, X2, X3};
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        CHECK(chain[i + 1].rho_exp() <= chain[i].rho_exp());
        CHECK(chain[i + 1].r_exp() >= chain[i].r_exp());
    }
}
