#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gpylab/tuple.hpp"
#include "gpylab/weights.hpp"

namespace gpylab {

// A Fogels-type operation was requested on a field that does not support it
// (class number != 1, or unverifiable certificate).
struct capability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ClassNumberCertificate { KnownList, FormCount, Asserted };

struct QuadField {
    int64_t D = 0;  // fundamental discriminant
    int h = 0;      // class number (exact for D < 0; asserted for D > 0)
    ClassNumberCertificate certificate = ClassNumberCertificate::FormCount;

    void require_h1(const char* op) const {
        if (h != 1) throw capability_error(std::string(op) + ": requires class number 1");
    }
};

bool is_fundamental_discriminant(int64_t D);

// Class number of the imaginary quadratic order of discriminant D < 0,
// by counting reduced binary quadratic forms.
int class_number_form_count(int64_t D);

// D < 0: h computed; D > 0: accepted only with assert_class_number_one.
QuadField validate_field(int64_t D, bool assert_class_number_one = false);

// kronecker(D, p) = 1; ramified p | D never splits.
bool splits_completely(uint64_t p, const QuadField& K);

struct NormResidueGroup {
    uint64_t q = 1;
    std::vector<uint64_t> members;     // the norm-residue subgroup of (Z/q)*
    std::vector<uint64_t> generators_found;
    uint64_t order = 1;                // phi1(q)
    uint64_t stabilization_bound = 0;  // largest prime examined
};

// Order of the subgroup of (Z/q)* generated by norms of prime ideals coprime
// to q (p for split/ramified p, p^2 for inert p). Needs h = 1.
NormResidueGroup phi1(uint64_t q, const QuadField& K);

// Li(x) = integral from 2 to x of dt/log t, adaptive quadrature, |err| <= 1e-9.
double li(double x);

// Number of split primes p in (x,2x] with p = a (mod q).
uint64_t pi_star(uint64_t x, uint64_t q, uint64_t a, const QuadField& K);

// max over norm-residue classes a (mod q) of max over y <= x of
// |pi_split(y;q,a) - Li(y)/phi1(q)|, evaluated at jump points.
double fogels_error(uint64_t x, uint64_t q, const QuadField& K);

// S(rho') for rho'(p) = p(nu_p(H u {h0}) - 1)/phi1(p); requires
// H = {0} (mod D), h0 = 0 (mod D), h0 not in H.
SingularSeriesResult rho_prime_series(const Tuple& H, int64_t h0, const QuadField& K,
                                      uint64_t P = 1'000'000);

}  // namespace gpylab
