#include "gpylab/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpylab/arith.hpp"

namespace gpylab {

GapModel GapModel::congruence(uint64_t m, uint64_t a) {
    CongruenceConstraint c(m, a);  // validates, incl. a=0 only for m=1
    GapModel g;
    g.kind = Kind::congruence;
    g.m = m;
    g.a = a;
    return g;
}

GapModel GapModel::quadratic(int64_t D) {
    if (!is_fundamental_discriminant(D))
        throw std::domain_error("GapModel: D must be a fundamental discriminant");
    GapModel g;
    g.kind = Kind::quadratic;
    g.D = D;
    return g;
}

bool GapModel::accepts(uint64_t p) const {
    if (kind == Kind::congruence) return p % m == a;
    return kronecker(D, static_cast<int64_t>(p)) == 1;
}

std::vector<uint64_t> split_prime_sequence(const GapModel& model, uint64_t x_max) {
    if (x_max < 2) throw std::invalid_argument("split_prime_sequence: x_max >= 2");
    std::vector<uint64_t> seq;
    const uint64_t seg = uint64_t(1) << 22;
    for (uint64_t lo = 2; lo <= x_max; lo += seg) {
        uint64_t hi = std::min(x_max + 1, lo + seg);
        PrimeStore store = sieve_segment(lo, hi);
        store.for_each_prime([&](uint64_t p) {
            if (model.accepts(p)) seq.push_back(p);
        });
    }
    return seq;
}

GapReport gap_stats(const std::vector<uint64_t>& seq) {
    if (seq.size() < 2) throw std::domain_error("gap_stats: need at least two primes");
    if (!std::is_sorted(seq.begin(), seq.end()))
        throw std::domain_error("gap_stats: sequence must be increasing");

    GapReport rep;
    rep.x_max = seq.back();
    uint64_t checkpoint = 10;
    double running = std::numeric_limits<double>::infinity();
    rep.min_gap = UINT64_MAX;
    rep.min_normalized = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        uint64_t gap = seq[i + 1] - seq[i];
        double norm = static_cast<double>(gap) / std::log(static_cast<double>(seq[i]));
        // a gap counts toward checkpoints at or beyond its right endpoint
        while (seq[i + 1] > checkpoint) {
            if (std::isfinite(running)) rep.running_minima.emplace_back(checkpoint, running);
            checkpoint *= 10;
        }
        rep.histogram[gap] += 1;
        if (gap < rep.min_gap) {
            rep.min_gap = gap;
            rep.min_gap_at = seq[i];
        }
        if (norm < rep.min_normalized) {
            rep.min_normalized = norm;
            rep.min_normalized_at = seq[i];
        }
        running = std::min(running, norm);
    }
    rep.running_minima.emplace_back(rep.x_max, running);
    return rep;
}

}  // namespace gpylab
