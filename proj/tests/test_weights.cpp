#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gpylab/arith.hpp"
#include "gpylab/weights.hpp"

using namespace gpylab;

TEST_CASE("lambda_d formula") {
    SieveParams p(2, 0, std::exp(2.0), {1, 0});
    CHECK(lambda_d(1, p) == doctest::Approx(2.0));  // (log R)^2 / 2!
    CHECK(lambda_d(100, p) == 0.0);                 // d > R
    CHECK(lambda_d(4, p) == 0.0);                   // mu(4) = 0
    CHECK(lambda_d(2, p) < 0.0);                    // sign of mu
}

TEST_CASE("lambda bounds and signs over a table") {
    SieveParams p(3, 1, 50.0, {1, 0});
    WeightTable table(p);
    double cap = std::pow(std::log(50.0), 4) / 24.0;
    for (uint32_t d : table.squarefree()) {
        double l = table.lambda(d);
        CHECK(std::abs(l) <= cap + 1e-12);
        if (l != 0.0) CHECK((l > 0) == (mobius(d) == 1));
        CHECK(table.lambda(d) == doctest::Approx(lambda_d(d, p)).epsilon(1e-12));
    }
    CHECK(table.lambda(1) > 0.0);
}

TEST_CASE("alpha") {
    Tuple H({0, 2});
    SUBCASE("only d=1 contributes when R < 2") {
        SieveParams p(2, 0, 1.5, {1, 0});
        WeightTable t(p);
        double l1 = t.lambda(1);
        CHECK(alpha(7, H, t) == doctest::Approx(l1 * l1));
    }
    SUBCASE("n=1, R=3: divisors {1,3} of P(1,H)=3") {
        SieveParams p(2, 0, 3.0, {1, 0});
        WeightTable t(p);
        double expected = t.lambda(1) + t.lambda(3);
        CHECK(alpha(1, H, t) == doctest::Approx(expected * expected));
        // brute-force check over a range
        for (uint64_t n = 1; n < 60; ++n) {
            double s = 0.0;
            for (uint64_t d = 1; d <= 3; ++d) {
                if (mobius(d) == 0) continue;
                uint64_t P = n * (n + 2);
                if (P % d == 0) s += lambda_d(d, p);
            }
            CHECK(alpha(n, H, t) == doctest::Approx(s * s).epsilon(1e-12));
        }
    }
    SUBCASE("always nonnegative") {
        SieveParams p(2, 1, 20.0, {1, 0});
        WeightTable t(p);
        for (uint64_t n = 1; n < 500; ++n) CHECK(alpha(n, H, t) >= 0.0);
    }
}

TEST_CASE("rho local values") {
    Tuple H({0, 4, 12});
    auto r1 = RhoSpec::make_rho1(H, 4);
    CHECK(rho_local(r1, 2) == 0.0);  // p | m
    CHECK(rho_local(r1, 97) == 3.0); // p > h_k
    auto r3 = RhoSpec::make_rho3(H, 4);
    CHECK(rho_local(r3, 3) == doctest::Approx(1.5));  // 3*(2-1)/2
    CHECK(rho_eval(r1, 3 * 97) == doctest::Approx(rho_local(r1, 3) * 3.0));
    CHECK_THROWS_AS(rho_eval(r1, 4), std::domain_error);
}

TEST_CASE("singular series: k=1 is exactly 1") {
    auto ss = tuple_singular_series(Tuple({0}), 100'000);
    CHECK(ss.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(ss.degenerate);
}

TEST_CASE("singular series: twin constant") {
    auto ss = tuple_singular_series(Tuple({0, 2}));
    CHECK(ss.value == doctest::Approx(1.3203236316).epsilon(1e-4));
    CHECK(ss.tail_bound > 0.0);
    CHECK(ss.tail_bound < 1e-4);
}

TEST_CASE("degenerate tuple gives S = 0") {
    auto ss = tuple_singular_series(Tuple({0, 2, 4}));  // nu_3 = 3
    CHECK(ss.value == 0.0);
    CHECK(ss.degenerate);
}

TEST_CASE("S(rho3)/S(rho1) = phi(m)/m") {
    for (uint64_t m : {3, 4, 6}) {
        for (size_t k : {2, 3, 4}) {
            auto H = generate_constrained_tuple(k, m);
            auto ss1 = singular_series(RhoSpec::make_rho1(H, m), k);
            auto ss3 = singular_series(RhoSpec::make_rho3(H, m), k - 1);
            double expected = double(euler_phi(m)) / double(m);
            CHECK(ss3.value / ss1.value == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("per-prime local identities, exact rational, p <= 1000") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        uint64_t m = std::vector<uint64_t>{3, 4, 6, 12}[rng() % 4];
        size_t k = 2 + rng() % 4;
        auto H = generate_constrained_tuple(k, m);
        auto s1 = RhoSpec::make_rho1(H, m);
        auto s3 = RhoSpec::make_rho3(H, m);
        for (uint64_t p : primes_up_to(1000)) {
            Rational pr((int64_t)p), one(1);
            Rational f3 = one - rho_local_rational(s3, p) / pr;
            Rational f1 = one - rho_local_rational(s1, p) / pr;
            // exponent difference contributes one factor of (1 - 1/p)
            Rational ratio = f3 / f1 * (one - one / pr);
            Rational expected = (m % p == 0) ? one - one / pr : one;
            REQUIRE(ratio == expected);
        }
    }
}

TEST_CASE("quad_form_T: hand enumeration at R=2.5, k=1") {
    SieveParams p(1, 0, 2.5, {1, 0});
    auto spec = RhoSpec::make_rho1(Tuple({0}), 1);
    double l1 = std::log(2.5), l2 = -std::log(2.5 / 2.0);
    double expected = l1 * l1 + 2 * l1 * l2 * 0.5 + l2 * l2 * 0.5;  // rho(2) = 1
    CHECK(quad_form_T(spec, p, TPath::dense) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(quad_form_T(spec, p, TPath::grouped) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("quad_form_T: dense and grouped paths agree") {
    for (double R : {20.0, 50.0, 120.0}) {
        SieveParams p(2, 0, R, {1, 0});
        auto spec = RhoSpec::make_rho1(Tuple({0, 2}), 1);
        double dense = quad_form_T(spec, p, TPath::dense);
        double grouped = quad_form_T(spec, p, TPath::grouped);
        CHECK(dense == doctest::Approx(grouped).epsilon(1e-9));
    }
    // with a congruence constraint as well
    SieveParams p(3, 1, 40.0, {4, 1});
    auto spec = RhoSpec::make_rho1(generate_constrained_tuple(3, 4), 4);
    CHECK(quad_form_T(spec, p, TPath::dense) ==
          doctest::Approx(quad_form_T(spec, p, TPath::grouped)).epsilon(1e-9));
}

TEST_CASE("main_term") {
    SieveParams p(1, 0, std::exp(1.0), {1, 0});
    SingularSeriesResult ss;
    ss.value = 1.0;
    CHECK(main_term(1, 100.0, p, ss) == doctest::Approx(100.0));
    SingularSeriesResult zero;  // degenerate
    CHECK(main_term(2, 100.0, p, zero) == 0.0);
    CHECK_THROWS_AS(main_term(4, 100.0, p, ss), std::invalid_argument);
}

TEST_CASE("main-term consistency with beta") {
    // k * main3 / main1 = beta * log R when S(rho3)/S(rho1) = phi(m)/m
    for (uint64_t m : {3, 4}) {
        size_t k = 3, l = 1;
        auto H = generate_constrained_tuple(k, m);
        SieveParams p(k, l, 50.0, {m, 1});
        auto ss1 = singular_series(RhoSpec::make_rho1(H, m), k);
        auto ss3 = singular_series(RhoSpec::make_rho3(H, m), k - 1);
        double lhs = k * main_term(3, 1e6, p, ss3) / main_term(1, 1e6, p, ss1);
        CHECK(lhs == doctest::Approx(beta(k, l) * std::log(50.0)).epsilon(1e-6));
    }
}

TEST_CASE("beta") {
    CHECK(beta(1, 0) == doctest::Approx(1.0));
    CHECK(beta(6, 1) == doctest::Approx(2.0));
    double b = beta(10'000, 100);
    CHECK(b > 3.90);
    CHECK(b < 4.0);
    double prev = 0.0;
    for (size_t l : {10, 30, 100}) {  // k = l^2: approach to 4
        double v = beta(l * l, l);
        CHECK(v < 4.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("weight table CSV header") {
    SieveParams p(2, 0, 10.0, {1, 0});
    WeightTable t(p);
    std::ostringstream os;
    t.write_csv(os);
    CHECK(os.str().rfind("d,mu,lambda\n", 0) == 0);
}
