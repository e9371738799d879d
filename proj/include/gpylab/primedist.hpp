#pragma once

#include <cstdint>
#include <vector>

namespace gpylab {

double von_mangoldt(uint64_t n);

// psi(x;q,a) = sum of Lambda(n) over n <= x, n = a (mod q).
double psi(uint64_t x, uint64_t q, uint64_t a);

// theta*(x;q,a) = sum of varpi(n) over n in (x,2x], n = a (mod q).
double theta_star(uint64_t x, uint64_t q, uint64_t a);

// Jumps of psi: prime powers n <= x with weight log p, ascending.
struct PsiJump {
    uint64_t n;
    double logp;
};
std::vector<PsiJump> psi_jumps(uint64_t x);

// E(x,q) = max over (a,q)=1 of max over y <= x of |psi(y;q,a) - y/phi(q)|.
// psi is a step function and y/phi(q) increases, so the max is attained at a
// jump point or immediately before one; the scan evaluates exactly those.
double error_E(uint64_t x, uint64_t q);
double error_E(uint64_t x, uint64_t q, const std::vector<PsiJump>& jumps);

struct ErrorProfile {
    uint64_t x = 0;
    double theta_prime = 0.0;
    double B_log_power = 0.0;
    uint64_t q_max = 0;  // floor of x^theta' / (log x)^B
    std::vector<std::pair<uint64_t, double>> entries;  // (q, E(x,q)), ascending q
    double aggregate = 0.0;
};

// Bombieri-Vinogradov aggregate over q <= x^theta' / (log x)^B.
ErrorProfile bv_aggregate(uint64_t x, double theta_prime, double B_log_power);

}  // namespace gpylab
