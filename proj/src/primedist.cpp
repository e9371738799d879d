#include "gpylab/primedist.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gpylab/arith.hpp"

namespace gpylab {

double von_mangoldt(uint64_t n) {
    if (n == 0) throw std::domain_error("von_mangoldt: n >= 1");
    if (n == 1) return 0.0;
    auto f = factorize(n);
    if (f.factors.size() != 1) return 0.0;
    return std::log(static_cast<double>(f.factors[0].first));
}

std::vector<PsiJump> psi_jumps(uint64_t x) {
    std::vector<PsiJump> jumps;
    for (uint64_t p : primes_up_to(x)) {
        double lp = std::log(static_cast<double>(p));
        for (uint64_t pk = p; pk <= x; ) {
            jumps.push_back({pk, lp});
            if (pk > x / p) break;
            pk *= p;
        }
    }
    std::sort(jumps.begin(), jumps.end(),
              [](const PsiJump& a, const PsiJump& b) { return a.n < b.n; });
    return jumps;
}

double psi(uint64_t x, uint64_t q, uint64_t a) {
    if (q < 1) throw std::invalid_argument("psi: q >= 1");
    if (a >= q) throw std::invalid_argument("psi: need 0 <= a < q");
    double s = 0.0;
    for (const auto& j : psi_jumps(x))
        if (j.n % q == a) s += j.logp;
    return s;
}

double theta_star(uint64_t x, uint64_t q, uint64_t a) {
    if (q < 1) throw std::invalid_argument("theta_star: q >= 1");
    if (a >= q) throw std::invalid_argument("theta_star: need 0 <= a < q");
    double s = 0.0;
    PrimeStore store = sieve_segment(x + 1, 2 * x + 1);
    store.for_each_prime([&](uint64_t p) {
        if (p % q == a) s += std::log(static_cast<double>(p));
    });
    return s;
}

double error_E(uint64_t x, uint64_t q, const std::vector<PsiJump>& jumps) {
    if (q < 1) throw std::invalid_argument("error_E: q >= 1");
    double phi_q = static_cast<double>(euler_phi(q));
    std::vector<double> psi_class(q, 0.0);
    std::vector<double> best(q, 0.0);
    for (const auto& j : jumps) {
        uint64_t a = j.n % q;
        if (std::gcd(a, q) != 1) continue;
        double line = static_cast<double>(j.n) / phi_q;
        best[a] = std::max(best[a], std::abs(psi_class[a] - line));  // y -> n^-
        psi_class[a] += j.logp;
        best[a] = std::max(best[a], std::abs(psi_class[a] - line));  // y = n
    }
    double E = 0.0;
    double end_line = static_cast<double>(x) / phi_q;
    for (uint64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        E = std::max(E, std::max(best[a], std::abs(psi_class[a] - end_line)));
    }
    return E;
}

double error_E(uint64_t x, uint64_t q) { return error_E(x, q, psi_jumps(x)); }

ErrorProfile bv_aggregate(uint64_t x, double theta_prime, double B_log_power) {
    if (x < 100) throw std::invalid_argument("bv_aggregate: x >= 100");
    if (theta_prime <= 0.0 || theta_prime > 1.0)
        throw std::invalid_argument("bv_aggregate: 0 < theta' <= 1");
    ErrorProfile prof;
    prof.x = x;
    prof.theta_prime = theta_prime;
    prof.B_log_power = B_log_power;
    double logx = std::log(static_cast<double>(x));
    double Q = std::pow(static_cast<double>(x), theta_prime) / std::pow(logx, B_log_power);
    if (Q < 1.0) {
        prof.q_max = 0;
        return prof;
    }
    prof.q_max = static_cast<uint64_t>(Q);
    auto jumps = psi_jumps(x);
    for (uint64_t q = 1; q <= prof.q_max; ++q) {
        double E = error_E(x, q, jumps);
        prof.entries.emplace_back(q, E);
        prof.aggregate += E;
    }
    return prof;
}

}  // namespace gpylab
