#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gpylab/quadfield.hpp"

namespace gpylab {

// Which primes count as "split": a congruence class p = a (mod m), or
// kronecker(D,p) = 1 for a quadratic field.
struct GapModel {
    enum class Kind { congruence, quadratic } kind = Kind::congruence;
    uint64_t m = 1;
    uint64_t a = 0;
    int64_t D = 0;

    static GapModel congruence(uint64_t m, uint64_t a);
    static GapModel quadratic(int64_t D);

    bool accepts(uint64_t p) const;  // p assumed prime
};

std::vector<uint64_t> split_prime_sequence(const GapModel& model, uint64_t x_max);

struct GapReport {
    uint64_t x_max = 0;
    uint64_t min_gap = 0;
    uint64_t min_gap_at = 0;  // left endpoint q_n of the minimal gap
    double min_normalized = 0.0;
    uint64_t min_normalized_at = 0;
    std::map<uint64_t, uint64_t> histogram;                  // gap -> count
    std::vector<std::pair<uint64_t, double>> running_minima; // (checkpoint x, min normalized)
};

// Gap statistics; normalized gap is (q_{n+1}-q_n)/log q_n (left endpoint).
// Running minima recorded at power-of-10 checkpoints.
GapReport gap_stats(const std::vector<uint64_t>& seq);

}  // namespace gpylab
