#include "gpylab/detector.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "gpylab/arith.hpp"

namespace gpylab {

double varpi(uint64_t n) {
    return is_prime_u64(n) ? std::log(static_cast<double>(n)) : 0.0;
}

namespace {

uint64_t mod_inverse(uint64_t a, uint64_t p) {
    // p prime, a not divisible by p
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

}  // namespace

AlphaEngine::AlphaEngine(const SieveParams& params, const Tuple& H)
    : params_(params), H_(H) {
    uint64_t d_max = static_cast<uint64_t>(std::floor(params.R));
    if (d_max > 2'000'000)
        throw resource_error("AlphaEngine: R too large for the root-class tables");
    WeightTable table(params);
    for (uint32_t d : table.squarefree()) {
        Entry e;
        e.d = d;
        e.lambda = table.lambda(d);
        // CRT product of per-prime root sets {-h mod p}
        std::vector<uint32_t> roots{0};
        uint64_t cur = 1;
        for (uint32_t p : table.prime_factors(d)) {
            std::vector<uint32_t> rp;
            for (int64_t h : H.elements()) {
                uint32_t r = static_cast<uint32_t>((p - static_cast<uint64_t>(h) % p) % p);
                if (std::find(rp.begin(), rp.end(), r) == rp.end()) rp.push_back(r);
            }
            std::vector<uint32_t> next;
            next.reserve(roots.size() * rp.size());
            uint64_t inv = mod_inverse(cur % p, p);
            for (uint32_t r1 : roots)
                for (uint32_t r2 : rp) {
                    uint64_t diff = (r2 + p - r1 % p) % p;
                    next.push_back(static_cast<uint32_t>(r1 + cur * ((diff * inv) % p)));
                }
            roots = std::move(next);
            cur *= p;
        }
        std::sort(roots.begin(), roots.end());
        e.roots = std::move(roots);
        entries_.push_back(std::move(e));
    }
}

void AlphaEngine::accumulate(uint64_t seg_lo, std::vector<double>& acc) const {
    uint64_t len = acc.size();
    for (const auto& e : entries_) {
        for (uint32_t r : e.roots) {
            uint64_t first = seg_lo + ((r + e.d - seg_lo % e.d) % e.d);
            for (uint64_t n = first; n < seg_lo + len; n += e.d)
                acc[n - seg_lo] += e.lambda;
        }
    }
}

namespace {

struct SegmentSums {
    double s_alpha = 0.0;
    std::vector<double> s_varpi;  // parallel to the offsets list
};

SegmentSums& operator+=(SegmentSums& a, const SegmentSums& b) {
    a.s_alpha += b.s_alpha;
    if (a.s_varpi.size() < b.s_varpi.size()) a.s_varpi.resize(b.s_varpi.size(), 0.0);
    for (size_t i = 0; i < b.s_varpi.size(); ++i) a.s_varpi[i] += b.s_varpi[i];
    return a;
}

void validate_detector_inputs(uint64_t x, const SieveParams& params, const Tuple& H) {
    if (x > kDetectorMaxX)
        throw resource_error("detector: x exceeds the configured budget");
    if (params.R > std::sqrt(static_cast<double>(x)) * (1.0 + 1e-12))
        throw std::invalid_argument("detector: requires R <= x^(1/2)");
    if (H.k() != params.k)
        throw std::invalid_argument("detector: |H| must equal params.k");
    for (int64_t h : H.elements())
        if (static_cast<uint64_t>(h) % params.constraint.m != 0)
            throw std::invalid_argument("detector: H must satisfy H = {0} (mod m)");
}

SegmentSums detector_segment(const AlphaEngine& engine, uint64_t seg_lo, uint64_t seg_hi,
                             const std::vector<int64_t>& offsets) {
    const auto& params = engine.params();
    uint64_t m = params.constraint.m, a = params.constraint.a;
    std::vector<double> acc(seg_hi - seg_lo, 0.0);
    engine.accumulate(seg_lo, acc);

    SegmentSums sums;
    sums.s_varpi.assign(offsets.size(), 0.0);
    if (offsets.empty()) {
        uint64_t first = seg_lo + ((a + m - seg_lo % m) % m);
        for (uint64_t n = first; n < seg_hi; n += m) {
            double w = acc[n - seg_lo];
            sums.s_alpha += w * w;
        }
        return sums;
    }
    int64_t off_min = *std::min_element(offsets.begin(), offsets.end());
    int64_t off_max = *std::max_element(offsets.begin(), offsets.end());
    PrimeStore store = sieve_segment(seg_lo + off_min, seg_hi + off_max);
    uint64_t first = seg_lo + ((a + m - seg_lo % m) % m);
    for (uint64_t n = first; n < seg_hi; n += m) {
        double w = acc[n - seg_lo];
        double w2 = w * w;
        sums.s_alpha += w2;
        for (size_t i = 0; i < offsets.size(); ++i) {
            uint64_t t = n + static_cast<uint64_t>(offsets[i]);
            if (store.is_prime(t))
                sums.s_varpi[i] += w2 * std::log(static_cast<double>(t));
        }
    }
    return sums;
}

// Runs the detector over [x,2x) split into segments; deterministic merge in
// ascending segment order regardless of worker count.
SegmentSums detector_run(uint64_t x, const SieveParams& params, const Tuple& H,
                         const std::vector<int64_t>& offsets, unsigned workers) {
    validate_detector_inputs(x, params, H);
    AlphaEngine engine(params, H);
    std::vector<std::pair<uint64_t, uint64_t>> segments;
    for (uint64_t s = x; s < 2 * x; s += kDetectorSegment)
        segments.emplace_back(s, std::min(2 * x, s + kDetectorSegment));

    SegmentSums total;
    total.s_varpi.assign(offsets.size(), 0.0);
    if (workers <= 1 || segments.size() == 1) {
        for (auto [lo, hi] : segments) total += detector_segment(engine, lo, hi, offsets);
        return total;
    }
    size_t next = 0;
    while (next < segments.size()) {
        size_t batch = std::min<size_t>(workers, segments.size() - next);
        std::vector<std::future<SegmentSums>> fs;
        for (size_t i = 0; i < batch; ++i) {
            auto [lo, hi] = segments[next + i];
            fs.push_back(std::async(std::launch::async, [&engine, lo, hi, &offsets] {
                return detector_segment(engine, lo, hi, offsets);
            }));
        }
        for (auto& f : fs) total += f.get();
        next += batch;
    }
    return total;
}

}  // namespace

double sum_alpha(uint64_t x, const SieveParams& params, const Tuple& H, unsigned workers) {
    return detector_run(x, params, H, {}, workers).s_alpha;
}

double sum_alpha_varpi(uint64_t x, const SieveParams& params, const Tuple& H,
                       int64_t h0, unsigned workers) {
    if (h0 < 0 || static_cast<uint64_t>(h0) % params.constraint.m != 0)
        throw std::invalid_argument("sum_alpha_varpi: requires h0 = 0 (mod m)");
    return detector_run(x, params, H, {h0}, workers).s_varpi[0];
}

DetectorReport ratio_report(uint64_t x, const SieveParams& params, const Tuple& H,
                            unsigned workers, uint64_t ss_truncation) {
    DetectorReport rep{params};
    rep.x = x;
    rep.h0_reference = H.max() + static_cast<int64_t>(params.constraint.m);

    std::vector<int64_t> offsets = H.elements();
    offsets.push_back(rep.h0_reference);
    SegmentSums sums = detector_run(x, params, H, offsets, workers);
    rep.sum_alpha = sums.s_alpha;
    for (size_t i = 0; i < offsets.size(); ++i) rep.sum_alpha_theta[offsets[i]] = sums.s_varpi[i];

    double in_tuple = 0.0;
    for (int64_t h : H.elements()) in_tuple += rep.sum_alpha_theta[h];
    rep.ratio = rep.sum_alpha > 0 ? in_tuple / rep.sum_alpha : 0.0;

    auto ss1 = singular_series(RhoSpec::make_rho1(H, params.constraint.m), params.k, ss_truncation);
    auto ss2 = singular_series(RhoSpec::make_rho2(H, rep.h0_reference, params.constraint.m),
                               params.k, ss_truncation);
    auto ss3 = singular_series(RhoSpec::make_rho3(H, params.constraint.m), params.k - 1,
                               ss_truncation);
    double xd = static_cast<double>(x);
    rep.main1 = main_term(1, xd, params, ss1);
    rep.main2 = main_term(2, xd, params, ss2);
    rep.main3 = main_term(3, xd, params, ss3);

    double sum2 = rep.sum_alpha_theta[rep.h0_reference];
    double sum3 = H.k() > 0 ? rep.sum_alpha_theta[H.elements().front()] : 0.0;
    auto dev = [](double emp, double mt) {
        return mt != 0.0 ? std::abs(emp / mt - 1.0) : std::abs(emp);
    };
    rep.dev1 = dev(rep.sum_alpha, rep.main1);
    rep.dev2 = dev(sum2, rep.main2);
    rep.dev3 = dev(sum3, rep.main3);
    rep.predicted_ratio_lower = beta(params.k, params.l) * std::log(params.R);
    return rep;
}

std::vector<uint64_t> find_two_prime_translates(uint64_t x, uint64_t m, uint64_t a,
                                                const Tuple& H, size_t limit) {
    CongruenceConstraint c(m, a);  // validates
    std::vector<uint64_t> out;
    if (H.k() < 2 || limit == 0) return out;
    int64_t off_min = H.min(), off_max = H.max();
    for (uint64_t s = x; s < 2 * x; s += kDetectorSegment) {
        uint64_t e = std::min(2 * x, s + kDetectorSegment);
        PrimeStore store = sieve_segment(s + off_min, e + off_max);
        uint64_t first = s + ((a + m - s % m) % m);
        for (uint64_t n = first; n < e; n += m) {
            int hits = 0;
            for (int64_t h : H.elements())
                if (store.is_prime(n + static_cast<uint64_t>(h)) && ++hits >= 2) break;
            if (hits >= 2) {
                out.push_back(n);
                if (out.size() >= limit) return out;
            }
        }
    }
    return out;
}

SubsetSumReport subset_sum_B_over(std::vector<int64_t> A, size_t k, uint64_t ss_truncation) {
    if (k < 1 || k > A.size())
        throw std::invalid_argument("subset_sum_B: need 1 <= k <= |A|");
    std::sort(A.begin(), A.end());
    double combos = binomial(static_cast<unsigned>(A.size()), static_cast<unsigned>(k));
    if (combos > 5e6)
        throw resource_error("subset_sum_B: combinatorial budget exceeded");

    SubsetSumReport rep;
    rep.A = A;
    rep.k = k;
    std::vector<size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    double total = 0.0;
    while (true) {
        std::vector<int64_t> subset;
        subset.reserve(k);
        for (size_t i : idx) subset.push_back(A[i]);
        total += tuple_singular_series(Tuple(std::move(subset)), ss_truncation).value;
        // next combination
        size_t i = k;
        while (i > 0 && idx[i - 1] == A.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    rep.B_A = std::tgamma(static_cast<double>(k) + 1.0) * total;
    rep.S_star = rep.B_A / std::pow(static_cast<double>(A.size()), static_cast<double>(k));
    return rep;
}

SubsetSumReport subset_sum_B(const SubsetSpec& spec, size_t k, uint64_t ss_truncation) {
    if (spec.m < 1 || spec.delta <= 0 || spec.x < 3)
        throw std::invalid_argument("subset_sum_B: invalid A specification");
    double bound = static_cast<double>(spec.m) * spec.delta * std::log(spec.x);
    std::vector<int64_t> A;
    for (int64_t v = static_cast<int64_t>(spec.m); v <= static_cast<int64_t>(bound);
         v += static_cast<int64_t>(spec.m))
        A.push_back(v);
    if (A.empty())
        throw std::invalid_argument("subset_sum_B: A is empty for these parameters");
    bool truncated = false;
    if (A.size() > 40) {  // hard desk-scale cap
        A.resize(40);
        truncated = true;
    }
    auto rep = subset_sum_B_over(std::move(A), k, ss_truncation);
    rep.truncated = truncated;
    return rep;
}

}  // namespace gpylab
