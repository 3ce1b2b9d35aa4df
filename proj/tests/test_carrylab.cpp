#include "doctest.h"

#include "padic/carry.hpp"

#include <random>

using namespace padic;

TEST_CASE("carry_profile examples") {
    auto a = carry_profile(5, 7, 2, 3);
    CHECK(a.gamma == std::vector<int>{1, 1});
    CHECK(a.L == 2);
    CHECK(a.noncarries[2] == 0);
    auto z = carry_profile(0, 41, 6, 3);
    for (int g : z.gamma) CHECK(g == 0);
    CHECK(z.L == 0);
    auto h = carry_profile(Q(-3, 2), 2, 3, 3);
    CHECK(h.gamma[0] == 0);
    CHECK(h.L == 0);
    CHECK_THROWS_AS(carry_profile(Q(1, 3), 2, 3, 3), std::invalid_argument);
}

TEST_CASE("vp_binom_kummer examples") {
    CHECK(vp_binom_kummer(5, 7, 3) == Valuation(vp_factorial(12, 3) - vp_factorial(7, 3) - vp_factorial(5, 3)));
    CHECK(vp_binom_kummer(5, 7, 3) == Valuation(2));
    CHECK(vp_binom_kummer(Q(3, 7), 0, 3) == Valuation(0));
    CHECK(vp_binom_kummer(Q(-3, 2), 2, 3) == Valuation(0));
    CHECK(vp_rational(binom_q(Q(1, 2), 2), 3) == Valuation(0));
}

TEST_CASE("Kummer agrees with factorials on integers") {
    for (long p : {2L, 3L, 5L, 7L})
        for (long a = 0; a <= 150; ++a)
            for (long b = 0; b <= a; ++b)
                REQUIRE(vp_binom_kummer(a - b, b, p) ==
                        Valuation(vp_factorial(a, p) - vp_factorial(b, p) - vp_factorial(a - b, p)));
}

TEST_CASE("Kummer agrees with exact rational binomials and padic_binom") {
    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 5L})
        for (int t = 0; t < 400; ++t) {
            long den;
            do den = std::uniform_int_distribution<long>(1, 60)(rng);
            while (den % p == 0);
            Q lam(std::uniform_int_distribution<long>(-300, 300)(rng), den);
            lam.canonicalize();
            long n = std::uniform_int_distribution<long>(0, 120)(rng);
            Q ex = binom_q(lam, n);
            REQUIRE(vp_binom(lam, n, p) == vp_rational(ex, p));
            auto pb = padic_binom(lam, n, p, 40);
            if (ex == 0) REQUIRE(pb.is_exact_zero());
            else REQUIRE(pb.valuation() == vp_rational(ex, p));
        }
}

TEST_CASE("infinite carries only for negative integers absorbed by n") {
    for (long p : {2L, 3L, 5L})
        for (long lam = -50; lam <= 50; ++lam)
            for (long n = 0; n <= 100; ++n) {
                auto cp = carry_profile(lam, n, 1, p);
                REQUIRE(cp.L_infinite == (lam < 0 && n >= -lam));
            }
    auto cp = carry_profile(Q(-1, 2), 1, 4, 3);
    CHECK(!cp.L_infinite);
}

TEST_CASE("FixedDigits matches the streaming carry count") {
    std::mt19937_64 rng(11);
    for (long p : {2L, 3L, 5L}) {
        Q lam(std::uniform_int_distribution<long>(-99, 99)(rng), p == 2 ? 3 : 4);
        lam.canonicalize();
        FixedDigits fd(lam, p, 12);
        for (long n = 0; n < 3000; ++n) {
            long c = fd.add_carries(n);
            Valuation v = vp_binom_kummer(lam, n, p);
            REQUIRE((c < 0 ? v.is_inf() : v == Valuation(c)));
            long b = fd.sub_borrows(n);
            Valuation w = vp_binom(lam, n, p);
            REQUIRE((b < 0 ? w.is_inf() : w == Valuation(b)));
        }
    }
}

TEST_CASE("special_index examples") {
    auto idx = special_index(3, 1, 1, 6);
    CHECK(idx.n == 456);
    CHECK(idx.M == 5);
    CHECK(idx.s == 92);
    CHECK(special_index(3, 1, 2, 6).M == 4);
    CHECK(special_index(2, 1, 1, 6).M == 3);
    CHECK_THROWS_AS(special_index(3, 1, 1, 7), std::invalid_argument);
    CHECK_THROWS_AS(special_index(3, 1, 3, 6), std::invalid_argument);
    CHECK_THROWS_AS(special_index(3, 1, 4, 6), std::invalid_argument);
    CHECK_THROWS_AS(special_index(3, 1, 1, 4), std::invalid_argument);
}

TEST_CASE("qexp_check examples") {
    auto r = qexp_check(special_index(3, 1, 1, 6));
    CHECK(r.which == 'a');
    CHECK(r.s_digits == std::vector<long>{2, 0, 1, 0, 1, 0});
    CHECK(r.pass());
    auto d = qexp_check(special_index(2, 1, 2, 6));
    CHECK(d.which == 'd');
    CHECK(d.s_digits == std::vector<long>{1, 0, 1, 1, 0});
    CHECK(d.pass());
}

TEST_CASE("denom_valuation examples") {
    CHECK(denom_valuation(456, 92, 3, 3) == 6);
    CHECK(denom_valuation(456, 456, 3, 3) == 0);
    CHECK(denom_valuation(456, 91, 3, 3) == 0);
}

TEST_CASE("index grid: table, digit patterns, unique minimum") {
    for (long q : {2L, 3L, 5L})
        for (long k = 1; k <= q; ++k)
            for (long N : {6L, 7L, 8L, 9L, 10L, 11L}) {
                if (!parity_violation(q, k, N).empty()) continue;
                CAPTURE(q);
                CAPTURE(k);
                CAPTURE(N);
                auto idx = special_index(q, 1, k, N);
                REQUIRE(idx.M == expected_M(q, k, N));
                REQUIRE(qexp_check(idx).pass());
                for (long r = 0; r <= idx.n; r += std::max<long>(1, idx.n / 200))
                    REQUIRE(idx.M + 1 == denom_valuation(idx.n, idx.s, q, q));
                REQUIRE(term_valuation(idx, idx.s) <= Valuation(Q(3 - N, 2)));
                REQUIRE(vp_binom_kummer(Q(q) * idx.lam - Q(idx.n * (q - 1)), (idx.n - idx.s) * (q - 1), q) ==
                        Valuation(0));
                if (idx.n <= 2000000) {
                    auto am = term_argmin(idx);
                    REQUIRE(am.argmin == idx.s);
                    REQUIRE(am.unique);
                    REQUIRE(Valuation(am.min_val) == term_valuation(idx, idx.s));
                }
            }
}

TEST_CASE("TermValuator agrees with term_valuation") {
    auto idx = special_index(3, 1, 2, 6);
    TermValuator tv(idx);
    for (long r = 0; r <= idx.n; ++r) REQUIRE(Valuation(tv(r)) == term_valuation(idx, r));
}

TEST_CASE("sum_estimate small cases") {
    auto idx = special_index(3, 1, 1, 6);
    auto s = sum_estimate(idx, 60);
    CHECK(s.v_sum == s.v_dominant);
    CHECK(s.v_sum <= Valuation(Q(-3, 2)));
    auto serial = sum_estimate_serial(idx, 60);
    CHECK(serial.sum.agreement(s.sum) >= s.sum.absprec());
    auto doubled = sum_estimate(idx, 120);
    CHECK(doubled.v_sum == s.v_sum);
    CHECK(doubled.sum.agreement(s.sum) >= s.sum.absprec());
    CHECK_THROWS_AS(sum_estimate(special_index(5, 1, 1, 8), 60), std::invalid_argument);
    // a strict unique minimum is resolvable even with one digit of relative precision
    CHECK(sum_estimate(idx, 1).v_sum == s.v_sum);
}

TEST_CASE("sum_estimate agrees with exact rational summation") {
    auto idx = special_index(2, 1, 1, 6);
    Q exact = 0, exact_series = 0;
    for (long r = 0; r <= idx.n; ++r) {
        long b = (idx.n - r) * (idx.q - 1);
        Q t = binom_q(idx.lam, r) * binom_q(Q(idx.q) * idx.lam - Q((idx.q - 1) * r), b) / Q(b + 1);
        exact += t;
        exact_series += ((r + b) % 2 ? t : Q(-t));
    }
    auto s = sum_estimate(idx, 60);
    CHECK(s.sum.agreement(PadicNumber::from_rational(exact, 2, 60)) >= s.sum.absprec());
    auto ss = sum_estimate(idx, 60, SumSigns::Series);
    CHECK(ss.sum.agreement(PadicNumber::from_rational(exact_series, 2, 60)) >= ss.sum.absprec());
}
