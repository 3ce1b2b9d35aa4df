#include "doctest.h"

#include "padic/padic_core.hpp"
#include "padic/zeta.hpp"

#include <random>
#include <tuple>

using namespace padic;

namespace {

/// Admissible (q, k, d) with k != d.
const std::vector<std::tuple<long, long, long>> kParams = {
    {3, 1, 4}, {3, 3, 4}, {3, 1, 2}, {2, 1, 3}, {2, 2, 3}, {4, 1, 5}, {4, 3, 5}, {5, 1, 3}, {5, 2, 6}, {7, 3, 8},
};

}  // namespace

TEST_CASE("zeta parameter rules") {
    CHECK_NOTHROW(zeta_params(3, 1, 4));
    CHECK(zeta_params(9, 1, 5).p == 3);
    CHECK(zeta_params(9, 1, 5).f == 2);
    CHECK_THROWS_AS(zeta_params(6, 1, 7), std::invalid_argument);  // not a prime power
    CHECK_THROWS_AS(zeta_params(3, 1, 3), std::invalid_argument);  // d does not divide q+1
    CHECK_NOTHROW(zeta_params(5, 1, 6));
    CHECK_THROWS_AS(zeta_params(3, 5, 4), std::invalid_argument);  // k > d
    CHECK_THROWS_AS(zeta_params(3, 0, 4), std::invalid_argument);
    // the trivial twist is rejected by every zeta construction, but c exists
    CHECK_THROWS_AS(zeta_series(3, 4, 4, 10), std::invalid_argument);
    CHECK_THROWS_AS(alpha_and_J(3, 4, 4, 10), std::invalid_argument);
    CHECK_THROWS_AS(ode_residual(3, 4, 4, 10, 30), std::invalid_argument);
    CHECK_THROWS_AS(zeta_series(3, 2, 2, 10), std::invalid_argument);
    CHECK_NOTHROW(build_cocycle_c(3, 4, 4, 10));
    CHECK_THROWS_AS(zeta_series(5, 1, 3, 4), std::invalid_argument);  // order < q
}

TEST_CASE("cocycle c") {
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L}) {
        for (long d = 1; d <= q + 1; ++d) {
            if ((q + 1) % d) continue;
            ZetaParams z;
            try {
                z = zeta_params(q, 1, d);
            } catch (const std::invalid_argument&) {
                continue;
            }
            for (long k = 1; k <= d; ++k) {
                auto cc = build_cocycle_c(q, k, d, 30);
                CHECK(cc.c[0] == 1);
                CHECK(cc.f_integral);
                CHECK(cc.power_exact);
            }
        }
    }
    // d = 1: c is the ratio itself
    auto c1 = build_cocycle_c(3, 1, 1, 40);
    CHECK(c1.c == QSeries::from_ratfun(c1.ratio, 40));
    CHECK(build_cocycle_c(2, 1, 1, 40).c == QSeries::from_ratfun(build_cocycle_c(2, 1, 1, 40).ratio, 40));
    // the ratio is w / (h^{-1} w) for w = (x^q - p^{q-1} x)^{-1}, y = p/x
    for (long q : {2L, 3L}) {
        const long p = q;
        Poly x = Poly::x();
        RationalFunction w = RationalFunction(x.pow(q) - x * Q(ppow(p, q - 1))).pow(-1);
        RationalFunction hw = w.compose_mobius(1, p, 0, 1);  // x -> x - p
        auto cc = build_cocycle_c(q, 1, q + 1, 4);
        for (Q x0 : {Q(7), Q(11, 2), Q(-13, 3), Q(100)}) {
            Q lhs = w.eval(x0) / hw.eval(x0);
            CHECK(lhs == cc.ratio.eval(Q(p) / x0));
        }
    }
    // f for q = 3: (y(1-y)^3 - y^3(1-y) - y + y^3) / (3y^2) = y - 1
    CHECK(build_cocycle_c(3, 1, 4, 5).f == Poly(std::vector<Q>{-1, 1}));
}

TEST_CASE("alpha and J") {
    for (auto [q, k, d] : kParams) {
        auto aj = alpha_and_J(q, k, d, 80);
        CHECK(aj.identity);
        Q qkd = Q(q * k) / Q(d);
        CHECK(aj.alpha[0] == Q(-1) / (qkd + 1));
        for (long m = 0; m < 1000; ++m) CHECK(Q((q - 1) * m) - qkd - 1 != 0);
    }
}

TEST_CASE("zeta series") {
    for (auto [q, k, d] : kParams) {
        auto z = zeta_params(q, k, d);
        auto zeta = zeta_series(q, k, d, 50);
        // constant term read off the formula: p * (r = 0 bracket at 0) = p * (-1)
        CHECK(zeta[0] == Q(-z.p));
        // DivJ route
        CHECK(zeta_divj(q, k, d, 50) == zeta);
        // below y^{q-1} only the r = 0 term contributes
        Q mu = 1 + z.qkd();
        QSeries B0 = (QSeries::binomial(mu, 1, q + 1) - QSeries::one(q + 1));
        QSeries b0(q);
        for (long j = 0; j < q; ++j) b0.at(j) = B0[j + 1] / mu;
        QSeries r0 = QSeries::binomial(-z.kd(), q - 1, q) * b0 * Q(z.p);
        for (long j = 0; j < q - 1; ++j) CHECK(zeta[j] == r0[j]);
    }
    // frozen coefficients for (3, 1, 4)
    auto z = zeta_series(3, 1, 4, 6);
    CHECK(z[1] == Q(9, 8));
    CHECK(z[2] == Q(3, 32));
    CHECK(z[3] == Q(399, 512));
    CHECK(z[4] == Q(795, 2048));
    CHECK(z[5] == Q(17205, 16384));
}

TEST_CASE("ODE residual and uniqueness") {
    auto rep = ode_residual(3, 1, 4, 200, 60);
    CHECK(rep.residual.order() == 201);
    CHECK(rep.exact_zero);
    CHECK(rep.padic_zero);
    CHECK(rep.unique_match);
    CHECK(rep.precision_floor >= 50);
    CHECK(rep.pass());
    for (auto [q, k, d] : kParams) {
        auto r = ode_residual(q, k, d, 60, 40);
        CHECK(r.pass());
    }
    // the recurrence never divides by zero
    for (auto [q, k, d] : kParams)
        for (long n = 0; n < 5000; ++n) REQUIRE(Q(n) - Q(q * k) / Q(d) != 0);
}

TEST_CASE("twist coefficient routes agree") {
    for (auto [q, k, d] : kParams) {
        if (q > 3) continue;
        CHECK(twist_h1(q, k, d, 60) == twist_h1_series(q, k, d, 60));
    }
    // h1 = -(k(q-1)/d) y^{q-2} / (1 - y^{q-1})
    auto h = twist_h1_series(5, 2, 6, 30);
    for (long j = 0; j < 30; ++j) CHECK(h[j] == (j % 4 == 3 ? Q(-4, 3) : Q(0)));
}

TEST_CASE("eta commutes with y^2 d/dy") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> coef(-50, 50), den(1, 9);
    for (int t = 0; t < 300; ++t) {
        QSeries f(60);
        for (long j = 0; j < 60; ++j) f.at(j) = Q(coef(rng)) / Q(den(rng));
        REQUIRE(eta_commutes(f));
    }
    CHECK(eta_commutes(zeta_series(3, 1, 4, 60)));
    // eta(y) = y/(1-y)
    auto e = QSeries::monomial(1, Q(1), 10).compose_eta();
    for (long j = 1; j < 10; ++j) CHECK(e[j] == 1);
}

TEST_CASE("Phi valuation profile") {
    auto rows = phi_valuation_profile(3, 1, 4, {6, 8}, 60);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 456);
    CHECK(rows[0].series_done);
    CHECK(rows[0].agree);
    CHECK(rows[0].agree_digits >= 30);
    CHECK(rows[0].v_series == rows[0].v_carry);
    CHECK(rows[0].v_carry == Valuation(-3));
    CHECK_FALSE(rows[1].series_done);
    CHECK(rows[1].v_carry == Valuation(-4));
    for (auto& r : rows) {
        CHECK(r.v_carry == r.v_dominant);
        CHECK(r.v_carry <= Valuation(r.bound));
    }
    CHECK(rows[1].v_carry < rows[0].v_carry);

    auto serial = phi_valuation_profile_serial(3, 1, 4, {6, 8}, 60);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(serial[i].v_carry == rows[i].v_carry);
        CHECK(serial[i].v_series == rows[i].v_series);
        CHECK(serial[i].agree_digits == rows[i].agree_digits);
    }

    auto small = phi_valuation_profile(2, 1, 3, {6, 8, 10}, 60);
    for (auto& r : small) {
        CHECK(r.series_done);
        CHECK(r.agree);
        CHECK(r.v_series == r.v_carry);
    }
    CHECK(small[0].v_carry == Valuation(-3));
    CHECK(small[1].v_carry == Valuation(-4));

    // d not q+1: k/d rescales to k(q+1)/d over q+1
    auto half = phi_valuation_profile(3, 1, 2, {6}, 60, 0);
    CHECK(half[0].n == special_index(3, 1, 2, 6).n);
    CHECK_FALSE(half[0].series_done);
    CHECK_THROWS(phi_valuation_profile(3, 1, 4, {7}, 60));  // parity rule for k <= q-1
}

TEST_CASE("XVzero solution") {
    auto rep = xvzero_series(3, 1, 4, 80, 60);
    CHECK(rep.F[0] == 3);  // n = 1 term: -(-p) h^[0] = p
    CHECK(rep.nabla_F[0] == 0);
    CHECK(rep.cocycle[0] == 1);
    CHECK(rep.residual_zero);
    CHECK(rep.matches_c);
    CHECK(rep.matches_zeta);
    CHECK(rep.padic_ok);
    CHECK(xvzero_series(2, 1, 3, 40, 40).pass());
    CHECK(xvzero_series(3, 1, 2, 40, 40).pass());
    CHECK_THROWS_AS(xvzero_series(5, 1, 3, 20, 20), std::invalid_argument);
}

TEST_CASE("series arithmetic") {
    auto a = QSeries::binomial(Q(1, 3), 1, 30);
    auto cube = a * a * a;
    CHECK(cube == QSeries::from_poly(Poly(std::vector<Q>{1, -1}), 30));
    CHECK((a * a.inverse()) == QSeries::one(30));
    CHECK(a.pow(Q(3)) == cube);
    auto s = QSeries::from_poly(Poly(std::vector<Q>{1, 2, 3, 4, 5, 6, 7}), 7).project(3);
    CHECK(s.order() == 3);
    CHECK(s[0] == 1);
    CHECK(s[1] == 4);
    CHECK(s[2] == 7);
    auto pa = PadicSeries::from_q(a, 3, 30);
    auto prod = pa * pa * pa - PadicSeries::from_q(cube, 3, 30);
    CHECK(prod.all_zero());
    CHECK_THROWS_AS(QSeries::from_ratfun(RationalFunction::power(Q(0), -1), 5), std::domain_error);
    auto zp = PadicSeries::from_q(zeta_series(3, 1, 4, 200), 3, 60);
    CHECK(radius_diagnostic(zp) >= Valuation(1));
    CHECK(zp.min_valuation() == Valuation(-1));
}
