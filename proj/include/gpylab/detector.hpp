#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gpylab/tuple.hpp"
#include "gpylab/weights.hpp"

namespace gpylab {

// varpi(n) = log n if n prime, else 0.
double varpi(uint64_t n);

struct DetectorReport {
    SieveParams params;
    uint64_t x = 0;
    double sum_alpha = 0.0;
    std::map<int64_t, double> sum_alpha_theta;  // offset h -> sum alpha(n) varpi(n+h)
    int64_t h0_reference = 0;                   // the off-tuple offset used for Eq-(6) data
    double ratio = 0.0;                         // sum over h in H / sum_alpha
    double main1 = 0.0, main2 = 0.0, main3 = 0.0;
    // relative |empirical/main - 1| when the main term is nonzero, else the
    // absolute empirical value (degenerate tuples predict 0)
    double dev1 = 0.0, dev2 = 0.0, dev3 = 0.0;
    double predicted_ratio_lower = 0.0;  // beta(k,l) * log R
};

struct SubsetSpec {
    uint64_t m = 4;
    double delta = 0.25;
    double x = 1e6;
};

struct SubsetSumReport {
    std::vector<int64_t> A;
    size_t k = 1;
    double B_A = 0.0;    // with the k! multiplicity convention
    double S_star = 0.0; // B_A / |A|^k
    bool truncated = false;
};

// Shared machinery: per-n accumulator of sum_{d | P(n,H)} lambda_d over a
// segment, driven by precomputed root classes mod d for each squarefree d <= R.
class AlphaEngine {
public:
    AlphaEngine(const SieveParams& params, const Tuple& H);

    // acc[i] += contribution for n = seg_lo + i, i < acc.size().
    void accumulate(uint64_t seg_lo, std::vector<double>& acc) const;

    const SieveParams& params() const { return params_; }
    const Tuple& tuple() const { return H_; }

private:
    SieveParams params_;
    Tuple H_;
    struct Entry {
        uint32_t d;
        double lambda;
        std::vector<uint32_t> roots;  // t mod d with d | P(t,H)
    };
    std::vector<Entry> entries_;
};

inline constexpr uint64_t kDetectorMaxX = 4'000'000'000ull;
inline constexpr uint64_t kDetectorSegment = uint64_t(1) << 22;

// sum over n in [x,2x), n = a (mod m), of alpha(n,H).
double sum_alpha(uint64_t x, const SieveParams& params, const Tuple& H,
                 unsigned workers = 1);

// sum of alpha(n,H) varpi(n+h0) over the same progression; h0 = 0 (mod m).
double sum_alpha_varpi(uint64_t x, const SieveParams& params, const Tuple& H,
                       int64_t h0, unsigned workers = 1);

// Both sums, the ratio, the Lemma main-term predictions and deviations.
DetectorReport ratio_report(uint64_t x, const SieveParams& params, const Tuple& H,
                            unsigned workers = 1, uint64_t ss_truncation = 1'000'000);

// n in [x,2x), n = a (mod m), with at least two of n+h prime; up to `limit`.
std::vector<uint64_t> find_two_prime_translates(uint64_t x, uint64_t m, uint64_t a,
                                                const Tuple& H, size_t limit);

// B_A(k) = sum over k-subsets H of A of S(H), counted with k! multiplicity.
SubsetSumReport subset_sum_B(const SubsetSpec& spec, size_t k,
                             uint64_t ss_truncation = 1'000'000);
SubsetSumReport subset_sum_B_over(std::vector<int64_t> A, size_t k,
                                  uint64_t ss_truncation = 1'000'000);

}  // namespace gpylab
