#include "gpylab/tuple.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "gpylab/arith.hpp"

namespace gpylab {

Tuple::Tuple(std::vector<int64_t> elements) : elems_(std::move(elements)) {
    if (elems_.empty()) throw std::invalid_argument("Tuple: needs at least one element");
    if (!std::is_sorted(elems_.begin(), elems_.end()))
        std::sort(elems_.begin(), elems_.end());
    for (size_t i = 0; i + 1 < elems_.size(); ++i)
        if (elems_[i] == elems_[i + 1])
            throw std::invalid_argument("Tuple: elements must be distinct");
    if (elems_.front() < 0) throw std::invalid_argument("Tuple: elements must be nonnegative");
}

bool Tuple::contains(int64_t h) const {
    return std::binary_search(elems_.begin(), elems_.end(), h);
}

Tuple Tuple::with_offset(int64_t h0) const {
    if (contains(h0)) throw std::invalid_argument("Tuple::with_offset: h0 already in H");
    auto v = elems_;
    v.push_back(h0);
    return Tuple(std::move(v));
}

Tuple Tuple::without(int64_t h0) const {
    if (!contains(h0)) throw std::invalid_argument("Tuple::without: h0 not in H");
    if (elems_.size() == 1) throw std::invalid_argument("Tuple::without: would be empty");
    std::vector<int64_t> v;
    for (int64_t h : elems_)
        if (h != h0) v.push_back(h);
    return Tuple(std::move(v));
}

std::string Tuple::to_json() const {
    return nlohmann::json(elems_).dump();
}

Tuple Tuple::from_json(const std::string& s) {
    auto j = nlohmann::json::parse(s);
    return Tuple(j.get<std::vector<int64_t>>());
}

CongruenceConstraint::CongruenceConstraint(uint64_t m_, uint64_t a_) : m(m_), a(a_) {
    if (m == 0) throw std::invalid_argument("CongruenceConstraint: m >= 1");
    if (m == 1) {
        if (a != 0) throw std::invalid_argument("CongruenceConstraint: m=1 requires a=0");
        return;
    }
    if (a == 0 || a >= m || std::gcd(a, m) != 1)
        throw std::invalid_argument("CongruenceConstraint: need 1 <= a < m, gcd(a,m)=1");
}

uint32_t nu_p(const Tuple& H, uint64_t p) {
    if (!is_prime_u64(p)) throw std::domain_error("nu_p: p must be prime");
    std::set<uint64_t> classes;
    for (int64_t h : H.elements()) classes.insert(static_cast<uint64_t>(h) % p);
    return static_cast<uint32_t>(classes.size());
}

bool is_admissible(const Tuple& H) {
    // For p > k, nu_p <= k < p, so only p <= k can fail.
    for (uint64_t p : primes_up_to(H.k()))
        if (nu_p(H, p) >= p) return false;
    return true;
}

Tuple generate_constrained_tuple(size_t k, uint64_t m) {
    if (k < 1) throw std::invalid_argument("generate_constrained_tuple: k >= 1");
    if (m < 1) throw std::invalid_argument("generate_constrained_tuple: m >= 1");
    // H = m * {first k primes > k}, shifting the prime window on a rare
    // admissibility failure.
    uint64_t start = k + 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<int64_t> elems;
        uint64_t p = start;
        while (elems.size() < k) {
            while (!is_prime_u64(p)) ++p;
            elems.push_back(static_cast<int64_t>(m * p));
            ++p;
        }
        Tuple H(std::move(elems));
        if (is_admissible(H)) return H;
        start = p;
    }
    throw std::runtime_error("generate_constrained_tuple: no admissible window found");
}

}  // namespace gpylab
