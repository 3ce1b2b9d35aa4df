#include "doctest.h"

#include "padic/padic_core.hpp"

#include <random>

using namespace padic;

TEST_CASE("vp_rational examples") {
    CHECK(vp_rational(24, 3) == Valuation(1));
    CHECK(vp_rational(0, 5).is_inf());
    CHECK(vp_rational(Q(3, 8), 2) == Valuation(-3));
    CHECK(vp_rational(Q(-3, 2), 3).str() == "1");
}

TEST_CASE("vp_factorial examples") {
    CHECK(vp_factorial(4, 3) == 1);
    CHECK(vp_factorial(0, 2) == 0);
    for (long p : {2L, 3L, 5L, 7L})
        for (long m = 0; m <= 4; ++m) {
            long pm = ppow(p, m).get_si();
            CHECK(vp_factorial(pm, p) == (pm - 1) / (p - 1));
        }
    // Legendre sum oracle
    for (long p : {2L, 3L, 5L})
        for (long n = 0; n < 2000; ++n) {
            long leg = 0;
            for (long pk = p; pk <= n; pk *= p) leg += n / pk;
            REQUIRE(vp_factorial(n, p) == leg);
        }
}

TEST_CASE("field ops") {
    auto half = PadicNumber::from_rational(Q(1, 2), 3);
    auto one = PadicNumber::from_int(1, 3);
    auto two_halves = half + half;
    CHECK(two_halves.agreement(one) >= PadicNumber::kDefaultPrec);
    CHECK(!two_halves.is_zero());
    CHECK(two_halves.val() == 0);

    auto z = one - one;
    CHECK(z.is_zero());
    CHECK(!z.is_exact_zero());
    CHECK(z.absprec() == PadicNumber::kDefaultPrec);
    CHECK_THROWS_AS(one / z, PrecisionExhausted);

    CHECK(half.digits(4) == std::vector<long>{2, 1, 1, 1});
    CHECK(PadicNumber::from_rational(Q(-3, 2), 3).digits(4) == std::vector<long>{0, 1, 1, 1});
    CHECK(PadicNumber::from_rational(0, 3).is_exact_zero());
    CHECK_THROWS_AS(PadicNumber::from_rational(1, 4), std::invalid_argument);
}

TEST_CASE("precision bookkeeping never overstates") {
    long p = 5, prec = 10;
    auto a = PadicNumber::from_rational(Q(1, 3), p, prec);
    auto b = PadicNumber::from_rational(Q(1, 3) + Q(ppow(p, 7)), p, prec);
    auto d = a - b;
    CHECK(!d.is_zero());
    CHECK(d.val() == 7);
    CHECK(d.absprec() == prec);
    CHECK(d.relprec() == 3);
    auto big = PadicNumber::from_rational(Q(ppow(p, 3)), p, prec);
    CHECK((d * big).absprec() == 13);
    CHECK((d / big).val() == 4);
}

TEST_CASE("padic_binom") {
    auto b = padic_binom(Q(1, 2), 2, 3);
    CHECK(b.val() == 0);
    CHECK(b.agreement(PadicNumber::from_rational(Q(-1, 8), 3)) >= PadicNumber::kDefaultPrec);
    CHECK(padic_binom(Q(7, 11), 0, 3).agreement(PadicNumber::from_int(1, 3)) >= PadicNumber::kDefaultPrec);
    // coefficients binom(-k/d, m) of the monomial twist
    for (long k = 1; k <= 3; ++k)
        for (long d : {2L, 4L})
            for (long m = 0; m < 12; ++m) {
                Q lam(-k, d);
                lam.canonicalize();
                auto pb = padic_binom(lam, m, 3, 40);
                Q ex = binom_q(lam, m);
                if (ex == 0) {
                    CHECK(pb.is_zero());
                } else {
                    CHECK(pb.agreement(PadicNumber::from_rational(ex, 3, 40)) >= pb.val() + 40);
                }
            }
}

TEST_CASE("padic_digits") {
    CHECK(padic_digits(Q(1, 2), 4, 3) == std::vector<long>{2, 1, 1, 1});
    CHECK(padic_digits(5, 2, 3) == std::vector<long>{2, 1});
    CHECK(padic_digits(Q(-3, 2), 4, 3) == std::vector<long>{0, 1, 1, 1});
    CHECK_THROWS_AS(padic_digits(Q(1, 3), 4, 3), std::invalid_argument);
}

TEST_CASE("valuation is additive and ultrametric on random rationals") {
    std::mt19937_64 rng(20261018);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (long p : {2L, 3L, 5L, 7L})
        for (int t = 0; t < 1000; ++t) {
            Q a(num(rng), den(rng)), b(num(rng), den(rng));
            a.canonicalize();
            b.canonicalize();
            if (a == 0 || b == 0) continue;
            REQUIRE(vp_rational(a * b, p) == vp_rational(a, p) + vp_rational(b, p));
            Valuation va = vp_rational(a, p), vb = vp_rational(b, p), vs = vp_rational(a + b, p);
            REQUIRE(vs >= vmin(va, vb));
            if (va != vb) REQUIRE(vs == vmin(va, vb));
            // the capped-precision arithmetic agrees with exact rationals
            auto pa = PadicNumber::from_rational(a, p, 30), pb = PadicNumber::from_rational(b, p, 30);
            auto ps = pa + pb;
            if (a + b != 0) REQUIRE(ps.valuation() == vs);
            REQUIRE((pa * pb).valuation() == vp_rational(a * b, p));
            REQUIRE((pa / pb).agreement(PadicNumber::from_rational(a / b, p, 30)) >= (pa / pb).absprec());
        }
}

// 0 <= n/(p-1) - v_p(n!) <= 1 + log_p n, i.e. p^(s_p(n) - (p-1)) <= n^(p-1)
TEST_CASE("factorial versus varpi^n") {
    for (long p : {2L, 3L, 5L, 7L})
        for (long n = 1; n <= 100000; ++n) {
            Q gap = Q(n) / Q(p - 1) - vp_factorial(n, p);
            REQUIRE(gap >= 0);
            long e = digit_sum(n, p) - (p - 1);
            if (e > 0) {
                Z lhs = ppow(p, e), rhs;
                mpz_ui_pow_ui(rhs.get_mpz_t(), n, p - 1);
                REQUIRE(lhs <= rhs);
            }
        }
}

TEST_CASE("level-m factorial estimate") {
    for (long p : {2L, 3L, 5L})
        for (long m = 0; m <= 4; ++m) {
            long pm = ppow(p, m).get_si();
            Q w = varpi_m_val(p, m);
            for (long k = 0; k <= 10000; ++k) {
                Q v = Q(vp_factorial(k, p) - vp_factorial(k / pm, p)) - Q(k) * w;
                REQUIRE(v <= 0);
                REQUIRE(v >= -m);
            }
        }
}
