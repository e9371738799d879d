#include "gpylab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gpylab {

PrimeStore sieve_segment(uint64_t lo, uint64_t hi, uint64_t budget) {
    if (lo >= hi) throw std::invalid_argument("sieve_segment: need lo < hi");
    uint64_t width = hi - lo;
    if (width > budget)
        throw resource_error("sieve_segment: segment width exceeds memory budget");

    std::vector<uint8_t> bits(width, 1);
    // knock out 0 and 1
    for (uint64_t n = lo; n < std::min<uint64_t>(hi, 2); ++n) bits[n - lo] = 0;

    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    for (uint64_t p : primes_up_to(root)) {
        uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (uint64_t m = start; m < hi; m += p) bits[m - lo] = 0;
    }
    return PrimeStore(lo, hi, std::move(bits));
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<uint8_t> sieve(n + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (uint64_t i = 2; i * i <= n; ++i)
        if (sieve[i])
            for (uint64_t j = i * i; j <= n; j += i) sieve[j] = 0;
    for (uint64_t i = 2; i <= n; ++i)
        if (sieve[i]) out.push_back(i);
    return out;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((__uint128_t)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

Factorization factorize(uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    if (n > 1'000'000'000'000ull)
        throw resource_error("factorize: n beyond trial-division scale (1e12)");
    Factorization f;
    f.n = n;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

int mobius(uint64_t n) {
    auto f = factorize(n);
    for (auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

uint32_t omega(uint64_t n) {
    return static_cast<uint32_t>(factorize(n).factors.size());
}

uint64_t euler_phi(uint64_t n) {
    auto f = factorize(n);
    uint64_t r = n;
    for (auto& [p, e] : f.factors) r = r / p * (p - 1);
    return r;
}

int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int t = 0;
        while (n % 2 == 0) { n /= 2; ++t; }
        int64_t am8 = ((a % 8) + 8) % 8;
        if (t % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
    }
    // Jacobi (a|n), n odd positive
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t lcm_checked(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    uint64_t g = std::gcd(a, b);
    uint64_t q = a / g;
    if (q > UINT64_MAX / b) throw std::overflow_error("lcm_checked: 64-bit overflow");
    return q * b;
}

std::vector<uint32_t> spf_table(uint32_t n) {
    std::vector<uint32_t> spf(static_cast<size_t>(n) + 1, 0);
    for (uint32_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            for (uint64_t j = i; j <= n; j += i)
                if (spf[j] == 0) spf[j] = i;
        }
    }
    return spf;
}

}  // namespace gpylab
