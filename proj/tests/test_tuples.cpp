#include <doctest.h>

#include <random>

#include "gpylab/arith.hpp"
#include "gpylab/tuple.hpp"

using namespace gpylab;

TEST_CASE("nu_p") {
    Tuple H({0, 4, 12});
    CHECK(nu_p(H, 2) == 1);
    CHECK(nu_p(H, 3) == 2);
    CHECK(nu_p(H, 13) == 3);
    CHECK_THROWS_AS(nu_p(H, 6), std::domain_error);
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(Tuple({0, 2, 6})));
    CHECK_FALSE(is_admissible(Tuple({0, 2, 4})));  // covers all classes mod 3
    CHECK(is_admissible(Tuple({0})));
}

TEST_CASE("tuple validation") {
    CHECK_THROWS_AS(Tuple({}), std::invalid_argument);
    CHECK_THROWS_AS(Tuple({3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Tuple({-1, 2}), std::invalid_argument);
    CHECK(Tuple({6, 2}).elements() == std::vector<int64_t>{2, 6});  // sorts
}

TEST_CASE("diameter") {
    CHECK(Tuple({0, 2, 6}).diameter() == 6);
    CHECK(Tuple({13}).diameter() == 0);
    CHECK(Tuple({20, 28, 44}).diameter() == 24);
}

TEST_CASE("generate_constrained_tuple examples") {
    CHECK(generate_constrained_tuple(2, 1).elements() == std::vector<int64_t>{3, 5});
    CHECK(generate_constrained_tuple(3, 4).elements() == std::vector<int64_t>{20, 28, 44});
    CHECK(generate_constrained_tuple(1, 6).elements() == std::vector<int64_t>{12});
}

TEST_CASE("generated tuples admissible and = {0} mod m") {
    for (size_t k = 1; k <= 10; ++k) {
        for (uint64_t m : {1, 2, 3, 4, 6, 12, 30, 60}) {
            auto H = generate_constrained_tuple(k, m);
            CHECK(H.k() == k);
            CHECK(is_admissible(H));
            for (int64_t h : H.elements()) CHECK(uint64_t(h) % m == 0);
            // nu_p = 1 for p | m
            for (auto& [p, e] : factorize(m).factors) CHECK(nu_p(H, p) == 1);
        }
    }
}

TEST_CASE("nu_p = k for p beyond the largest element") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        size_t k = 2 + rng() % 5;
        auto H = generate_constrained_tuple(k, 1 + rng() % 6);
        uint64_t hk = uint64_t(H.max());
        for (uint64_t p = hk + 1; p <= 2 * hk; ++p)
            if (is_prime_u64(p)) CHECK(nu_p(H, p) == k);
    }
}

TEST_CASE("admissibility is translation-invariant") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<int64_t> v;
        while (v.size() < 4) {
            int64_t c = rng() % 30;
            if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
        }
        Tuple H(v);
        for (int64_t shift : {1, 2, 7, 30}) {
            std::vector<int64_t> w;
            for (int64_t h : H.elements()) w.push_back(h + shift);
            CHECK(is_admissible(H) == is_admissible(Tuple(w)));
        }
    }
}

TEST_CASE("json round trip") {
    Tuple H({0, 4, 12});
    CHECK(Tuple::from_json(H.to_json()).elements() == H.elements());
    CHECK(H.to_json() == "[0,4,12]");
}
