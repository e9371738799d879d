#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gpylab {

// Sorted set of k distinct nonnegative offsets h_1 < ... < h_k.
class Tuple {
public:
    explicit Tuple(std::vector<int64_t> elements);

    const std::vector<int64_t>& elements() const { return elems_; }
    size_t k() const { return elems_.size(); }
    int64_t min() const { return elems_.front(); }
    int64_t max() const { return elems_.back(); }
    int64_t diameter() const { return elems_.back() - elems_.front(); }

    bool contains(int64_t h) const;

    // Tuple with h0 adjoined (h0 must not already be a member).
    Tuple with_offset(int64_t h0) const;
    // Tuple with member h0 removed (k must stay >= 1).
    Tuple without(int64_t h0) const;

    std::string to_json() const;
    static Tuple from_json(const std::string& s);

private:
    std::vector<int64_t> elems_;
};

// Residue progression constraint q_n = a (mod m), gcd(a,m)=1.
struct CongruenceConstraint {
    uint64_t m = 1;
    uint64_t a = 0;  // a=0 only allowed for m=1

    CongruenceConstraint() = default;
    CongruenceConstraint(uint64_t m_, uint64_t a_);
};

// Number of distinct residue classes mod p occupied by H.
uint32_t nu_p(const Tuple& H, uint64_t p);

// nu_p(H) < p for every prime p <= k (automatic for p > k).
bool is_admissible(const Tuple& H);

// Admissible k-tuple with every element = 0 (mod m), built as m times
// primes > max(k, largest prime factor of m); verified post hoc.
Tuple generate_constrained_tuple(size_t k, uint64_t m);

inline int64_t diameter(const Tuple& H) { return H.diameter(); }

}  // namespace gpylab
