#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gpylab {

// Thrown when an operation would exceed a configured memory/work budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Primality bitmap for the half-open range [lo, hi).
class PrimeStore {
public:
    PrimeStore(uint64_t lo, uint64_t hi, std::vector<uint8_t> bits)
        : lo_(lo), hi_(hi), bits_(std::move(bits)) {}

    uint64_t lo() const { return lo_; }
    uint64_t hi() const { return hi_; }

    bool is_prime(uint64_t n) const {
        if (n < lo_ || n >= hi_) throw std::out_of_range("PrimeStore: n outside segment");
        return bits_[n - lo_] != 0;
    }

    template <typename F>
    void for_each_prime(F&& f) const {
        for (uint64_t n = lo_; n < hi_; ++n)
            if (bits_[n - lo_]) f(n);
    }

    std::vector<uint64_t> primes() const {
        std::vector<uint64_t> out;
        for_each_prime([&](uint64_t p) { out.push_back(p); });
        return out;
    }

private:
    uint64_t lo_, hi_;
    std::vector<uint8_t> bits_;
};

struct Factorization {
    uint64_t n = 1;
    std::vector<std::pair<uint64_t, uint32_t>> factors;  // (prime, exponent), increasing
};

// Default cap on sieve_segment width (number of integers).
inline constexpr uint64_t kDefaultSegmentBudget = uint64_t(1) << 26;

PrimeStore sieve_segment(uint64_t lo, uint64_t hi,
                         uint64_t budget = kDefaultSegmentBudget);

// All primes <= n, ascending.
std::vector<uint64_t> primes_up_to(uint64_t n);

// Deterministic 64-bit Miller-Rabin.
bool is_prime_u64(uint64_t n);

Factorization factorize(uint64_t n);

int mobius(uint64_t n);
uint32_t omega(uint64_t n);
uint64_t euler_phi(uint64_t n);

// Kronecker symbol (a|n), full extension to all integers.
int kronecker(int64_t a, int64_t n);

uint64_t gcd_u64(uint64_t a, uint64_t b);
// lcm with overflow detection; throws std::overflow_error.
uint64_t lcm_checked(uint64_t a, uint64_t b);

// Smallest-prime-factor table for 0..n (spf[0]=spf[1]=0).
std::vector<uint32_t> spf_table(uint32_t n);

}  // namespace gpylab
