#include "doctest.h"

#include "padic/dwork.hpp"
#include "padic/padic_core.hpp"

#include <complex>
#include <random>

using namespace padic;

TEST_CASE("Dwork coefficients") {
    auto H = dwork_build(2, 4);
    CHECK(H.c[0] == 1);
    CHECK(H.c[1] == -1);
    CHECK(H.c[2] == 2);
    // direct root-of-unity sums: c_k = (1/q) sum_zeta (zeta - 1)^k
    for (long q : {2L, 3L, 4L, 5L}) {
        auto Hq = dwork_build(q, 20);
        CHECK(Hq.c[0] == 1);
        for (long k = 0; k <= 20; ++k) {
            std::complex<long double> s = 0;
            for (long r = 0; r < q; ++r) {
                auto z = std::polar<long double>(1, 2 * M_PIl * r / q);
                s += std::pow(z - std::complex<long double>(1), static_cast<int>(k));
            }
            s /= static_cast<long double>(q);
            REQUIRE(std::abs(s.real() - Hq.c[k].get_d()) < 1e-6L * (1 + std::abs(s.real())));
            REQUIRE(std::abs(s.imag()) < 1e-6L * (1 + std::abs(s.real())));
        }
    }
    CHECK_THROWS_AS(dwork_build(3, 2), std::invalid_argument);
}

TEST_CASE("Dwork projector action") {
    for (long q : {2L, 3L}) {
        auto H = dwork_build(q, 12).op();
        for (long j = 0; j <= 12 - q; ++j) {
            auto got = apply_to_function(H, RationalFunction::x().pow(j));
            CHECK(got == (j % q == 0 ? RationalFunction::x().pow(j) : RationalFunction()));
        }
    }
}

TEST_CASE("Dwork identities") {
    for (long q : {2L, 3L}) {
        auto rep = dwork_identities(q, 12);
        CHECK(rep.checked_through >= 12 - q);
        CHECK(rep.idempotent);
        CHECK(rep.partition);
        CHECK(rep.prime_consistent);
        CHECK(rep.projector);
        CHECK(rep.zero_coefficients >= 3 * (12 - q + 1));
    }
    auto r5 = dwork_identities(5, 16);
    CHECK((r5.idempotent && r5.partition && r5.prime_consistent && r5.projector));
    CHECK_THROWS_AS(dwork_identities(3, 8), std::invalid_argument);
}

TEST_CASE("Dwork identities detect a corrupted coefficient") {
    // H with c_2 changed is no longer idempotent
    auto H = dwork_build(2, 12).op();
    auto bad = H;
    bad.set(2, bad.coeff(2) * Q(3));
    auto HH = star_product(bad, bad);
    bool same = true;
    for (long k = 0; k <= 10; ++k) same = same && HH.coeff(k) == bad.coeff(k);
    CHECK_FALSE(same);
}

TEST_CASE("Frobenius descent relation") {
    auto r0 = frobenius_relation(2, Q(0), 0, 12);
    CHECK(r0.holds);
    CHECK(r0.sums_to_euler);
    auto r1 = frobenius_relation(2, Q(1, 2), 1, 12);
    CHECK(r1.holds);
    CHECK(r1.checked_through >= 10);
    for (long q : {2L, 3L})
        for (long i = 0; i < q; ++i)
            for (Q lam : {Q(0), Q(1, 3), Q(-2), Q(5, 7)}) {
                auto r = frobenius_relation(q, lam, i, 12);
                REQUIRE(r.holds);
                REQUIRE(r.sums_to_euler);
                REQUIRE(r.checked_through >= 12 - q);
            }
}

TEST_CASE("Euler operators") {
    // E_0 = identity
    CHECK(euler_apply(0, {{3, Q(2)}}, 1).coeffs() == SkewLaurentSeries::monomial(RationalFunction::x().pow(3) * Q(2), 1).coeffs());
    for (long m = 0; m <= 6; ++m)
        for (long n = 0; n <= 6; ++n)
            CHECK(euler_apply(n, {{m, Q(1)}}, 0).coeff(0) == RationalFunction::x().pow(m) * Q(binom_z(m, n)));
    // E_2(d^3) = binom(-3, 2) d^3 = 6 d^3
    CHECK(euler_apply(2, {{0, Q(1)}}, 3).coeff(3) == RationalFunction(Q(6)));
    CHECK(binom_z(-3, 2) == 6);
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> c(-6, 6), deg(0, 5), mm(-4, 4);
    for (int t = 0; t < 60; ++t) {
        std::vector<Q> cs(deg(rng) + 1);
        for (auto& x : cs) x = c(rng);
        Poly f(cs);
        if (f.is_zero()) continue;
        REQUIRE(euler_iterate_consistent(t % 6, f, mm(rng)));
    }
}
