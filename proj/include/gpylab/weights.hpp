#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "gpylab/rational.hpp"
#include "gpylab/tuple.hpp"

namespace gpylab {

struct SieveParams {
    size_t k = 1;
    size_t l = 0;
    double R = 2.0;
    CongruenceConstraint constraint;

    SieveParams(size_t k_, size_t l_, double R_, CongruenceConstraint c = {})
        : k(k_), l(l_), R(R_), constraint(c) {
        if (k < 1) throw std::invalid_argument("SieveParams: k >= 1");
        if (!(R > 1.0)) throw std::invalid_argument("SieveParams: R > 1");
    }
};

// lambda_d = mu(d) (log(R/d))^{k+l} / (k+l)!  for squarefree d <= R, else 0.
double lambda_d(uint64_t d, const SieveParams& params);

// lambda_d for all squarefree d <= R, with divisor data for alpha().
class WeightTable {
public:
    explicit WeightTable(const SieveParams& params);

    const SieveParams& params() const { return params_; }
    uint64_t d_max() const { return d_max_; }
    double lambda(uint64_t d) const { return d <= d_max_ ? lam_[d] : 0.0; }

    // Distinct primes of d (d <= d_max, d squarefree where it matters).
    std::vector<uint32_t> prime_factors(uint64_t d) const;

    // Squarefree d <= R in increasing order.
    const std::vector<uint32_t>& squarefree() const { return squarefree_; }

    void write_csv(std::ostream& os) const;  // columns: d, mu, lambda

private:
    SieveParams params_;
    uint64_t d_max_;
    std::vector<double> lam_;
    std::vector<int8_t> mu_;
    std::vector<uint32_t> spf_;
    std::vector<uint32_t> squarefree_;
};

// alpha(n,H) = (sum of lambda_d over squarefree d <= R with d | P(n,H))^2.
double alpha(uint64_t n, const Tuple& H, const WeightTable& table);

enum class RhoKind { rho1, rho2, rho3, rho_prime };

// One of the paper's multiplicative densities on squarefree integers:
//   rho1(p) = 0 if p|m, else nu_p(H)
//   rho2(p) = 0 if p|m, else p(nu_p(H u {h0}) - 1)/(p-1)
//   rho3(p) = 0 if p|m, else p(nu_p(H) - 1)/(p-1)
//   rho'(p) = p(nu_p(H u {h0}) - 1)/phi1(p), phi1(p) = p-1 off the discriminant
struct RhoSpec {
    RhoKind kind;
    Tuple H;
    std::optional<int64_t> h0;  // required for rho2, rho_prime
    uint64_t m = 1;             // modulus (rho1..rho3)
    int64_t D = 0;              // discriminant (rho_prime)

    static RhoSpec make_rho1(Tuple H, uint64_t m);
    static RhoSpec make_rho2(Tuple H, int64_t h0, uint64_t m);
    static RhoSpec make_rho3(Tuple H, uint64_t m);
    static RhoSpec make_rho_prime(Tuple H, int64_t h0, int64_t D);

    // Exponent the singular-series definition pairs with this density:
    // k for rho1/rho2/rho', k-1 for rho3 (the H \ {h0} replacement).
    size_t default_exponent() const;
};

double rho_local(const RhoSpec& spec, uint64_t p);
Rational rho_local_rational(const RhoSpec& spec, uint64_t p);

// Product of rho(p) over p | d; d must be squarefree.
double rho_eval(const RhoSpec& spec, uint64_t d);

struct SingularSeriesResult {
    double value = 0.0;
    uint64_t truncation_prime = 0;
    double tail_bound = 0.0;  // bound on |log of omitted factors|
    bool degenerate = false;  // some local factor vanished (nu_p = p)
};

// S(rho) = prod_{p <= P} (1 - rho(p)/p)(1 - 1/p)^{-k_exponent}.
SingularSeriesResult singular_series(const RhoSpec& spec, size_t k_exponent,
                                     uint64_t P = 1'000'000);

// Classical S(H): rho(p) = nu_p(H), exponent |H|.
SingularSeriesResult tuple_singular_series(const Tuple& H, uint64_t P = 1'000'000);

void singular_series_csv(const RhoSpec& spec, size_t k_exponent, uint64_t P,
                         std::ostream& os);  // p, local_factor, running_product

enum class TPath { dense, grouped };

// T = sum_{d1,d2 <= R squarefree} lambda_{d1} lambda_{d2} rho([d1,d2])/[d1,d2].
// Deterministic summation order (ascending d1 then d2 / ascending lcm).
double quad_form_T(const RhoSpec& spec, const SieveParams& params,
                   TPath path = TPath::dense);

// Lemma main terms: which=1 gives (x/m)(log R)^{k+2l}/(k+2l)! C(2l,l) S;
// which=2 the same with x/phi(m); which=3 the (k+2l+1, l+1) variant.
double main_term(int which, double x, const SieveParams& params,
                 const SingularSeriesResult& ss);

// beta(k,l) = 2k(2l+1)/((l+1)(k+2l+1)); < 4, -> 4 for k,l -> inf, l = o(k).
double beta(size_t k, size_t l);

double binomial(unsigned n, unsigned r);
// (log R)^n / n!
double log_power_over_factorial(double logR, unsigned n);

}  // namespace gpylab
