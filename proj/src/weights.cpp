#include "gpylab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "gpylab/arith.hpp"

namespace gpylab {

namespace {

// Shared ascending prime lists, keyed by bound. Immutable once built.
std::shared_ptr<const std::vector<uint64_t>> shared_primes(uint64_t P) {
    static std::mutex mu;
    static std::map<uint64_t, std::shared_ptr<const std::vector<uint64_t>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(P);
    if (it != cache.end()) return it->second;
    auto v = std::make_shared<const std::vector<uint64_t>>(primes_up_to(P));
    cache.emplace(P, v);
    return v;
}

uint32_t count_residues(const std::vector<int64_t>& elems, uint64_t p) {
    uint32_t n = 0;
    uint64_t seen[16];
    std::vector<uint64_t> big;
    for (int64_t h : elems) {
        uint64_t r = static_cast<uint64_t>(h) % p;
        bool dup = false;
        if (elems.size() <= 16) {
            for (uint32_t i = 0; i < n; ++i)
                if (seen[i] == r) { dup = true; break; }
            if (!dup) seen[n++] = r;
        } else {
            if (std::find(big.begin(), big.end(), r) != big.end()) dup = true;
            else { big.push_back(r); ++n; }
        }
    }
    return n;
}

uint64_t largest_prime_factor(uint64_t n) {
    if (n <= 1) return 1;
    auto f = factorize(n);
    return f.factors.back().first;
}

}  // namespace

double lambda_d(uint64_t d, const SieveParams& params) {
    if (d == 0) throw std::domain_error("lambda_d: d >= 1");
    if (static_cast<double>(d) > params.R) return 0.0;
    int mu = mobius(d);
    if (mu == 0) return 0.0;
    unsigned n = static_cast<unsigned>(params.k + params.l);
    return mu * std::pow(std::log(params.R / static_cast<double>(d)), n) /
           std::tgamma(static_cast<double>(n) + 1.0);
}

WeightTable::WeightTable(const SieveParams& params) : params_(params) {
    d_max_ = static_cast<uint64_t>(std::floor(params.R));
    if (d_max_ > 10'000'000)
        throw resource_error("WeightTable: R too large for dense table");
    lam_.assign(d_max_ + 1, 0.0);
    mu_.assign(d_max_ + 1, 0);
    spf_ = spf_table(static_cast<uint32_t>(d_max_));
    unsigned n = static_cast<unsigned>(params.k + params.l);
    double fact = std::tgamma(static_cast<double>(n) + 1.0);
    double logR = std::log(params.R);
    if (d_max_ >= 1) {
        mu_[1] = 1;
        lam_[1] = std::pow(logR, n) / fact;
        squarefree_.push_back(1);
    }
    for (uint64_t d = 2; d <= d_max_; ++d) {
        uint64_t rest = d;
        int sign = 1;
        bool sf = true;
        while (rest > 1) {
            uint32_t p = spf_[rest];
            rest /= p;
            if (rest % p == 0) { sf = false; break; }
            sign = -sign;
        }
        if (!sf) continue;
        mu_[d] = static_cast<int8_t>(sign);
        lam_[d] = sign * std::pow(std::log(params.R / static_cast<double>(d)), n) / fact;
        squarefree_.push_back(static_cast<uint32_t>(d));
    }
}

std::vector<uint32_t> WeightTable::prime_factors(uint64_t d) const {
    std::vector<uint32_t> ps;
    while (d > 1) {
        uint32_t p = spf_[d];
        ps.push_back(p);
        while (d % p == 0) d /= p;
    }
    return ps;
}

void WeightTable::write_csv(std::ostream& os) const {
    os << "d,mu,lambda\n";
    for (uint32_t d : squarefree_)
        os << d << ',' << int(mu_[d]) << ',' << lam_[d] << '\n';
}

double alpha(uint64_t n, const Tuple& H, const WeightTable& table) {
    if (n < 1) throw std::domain_error("alpha: n >= 1");
    double s = 0.0;
    for (uint32_t d : table.squarefree()) {
        bool divides = true;
        for (uint32_t p : table.prime_factors(d)) {
            bool hit = false;
            for (int64_t h : H.elements())
                if ((n + static_cast<uint64_t>(h)) % p == 0) { hit = true; break; }
            if (!hit) { divides = false; break; }
        }
        if (divides) s += table.lambda(d);
    }
    return s * s;
}

RhoSpec RhoSpec::make_rho1(Tuple H, uint64_t m) {
    return RhoSpec{RhoKind::rho1, std::move(H), std::nullopt, m, 0};
}
RhoSpec RhoSpec::make_rho2(Tuple H, int64_t h0, uint64_t m) {
    if (H.contains(h0)) throw std::invalid_argument("rho2: h0 must not be in H");
    return RhoSpec{RhoKind::rho2, std::move(H), h0, m, 0};
}
RhoSpec RhoSpec::make_rho3(Tuple H, uint64_t m) {
    return RhoSpec{RhoKind::rho3, std::move(H), std::nullopt, m, 0};
}
RhoSpec RhoSpec::make_rho_prime(Tuple H, int64_t h0, int64_t D) {
    if (H.contains(h0)) throw std::invalid_argument("rho': h0 must not be in H");
    return RhoSpec{RhoKind::rho_prime, std::move(H), h0, 1, D};
}

size_t RhoSpec::default_exponent() const {
    switch (kind) {
        case RhoKind::rho3: return H.k() - 1;
        default: return H.k();
    }
}

namespace {

// Elements whose residues drive nu_p for this density.
std::vector<int64_t> effective_elements(const RhoSpec& spec) {
    if (spec.kind == RhoKind::rho2 || spec.kind == RhoKind::rho_prime) {
        auto v = spec.H.elements();
        v.push_back(*spec.h0);
        std::sort(v.begin(), v.end());
        return v;
    }
    return spec.H.elements();
}

}  // namespace

double rho_local(const RhoSpec& spec, uint64_t p) {
    switch (spec.kind) {
        case RhoKind::rho1:
            if (spec.m % p == 0) return 0.0;
            return count_residues(spec.H.elements(), p);
        case RhoKind::rho2: {
            if (spec.m % p == 0) return 0.0;
            auto u = effective_elements(spec);
            return static_cast<double>(p) * (count_residues(u, p) - 1) / (p - 1.0);
        }
        case RhoKind::rho3:
            if (spec.m % p == 0) return 0.0;
            return static_cast<double>(p) * (count_residues(spec.H.elements(), p) - 1) / (p - 1.0);
        case RhoKind::rho_prime: {
            auto u = effective_elements(spec);
            uint32_t nu = count_residues(u, p);
            uint64_t absD = spec.D < 0 ? uint64_t(-spec.D) : uint64_t(spec.D);
            if (absD % p == 0) {
                if (nu != 1)
                    throw std::invalid_argument("rho': requires H u {h0} = {0} mod D");
                return 0.0;
            }
            // phi1(p) = p - 1 for p not dividing D
            return static_cast<double>(p) * (nu - 1) / (p - 1.0);
        }
    }
    return 0.0;
}

Rational rho_local_rational(const RhoSpec& spec, uint64_t p) {
    auto ip = static_cast<int64_t>(p);
    switch (spec.kind) {
        case RhoKind::rho1:
            if (spec.m % p == 0) return Rational(0);
            return Rational(count_residues(spec.H.elements(), p));
        case RhoKind::rho2: {
            if (spec.m % p == 0) return Rational(0);
            auto u = effective_elements(spec);
            return Rational(ip * (count_residues(u, p) - 1), ip - 1);
        }
        case RhoKind::rho3:
            if (spec.m % p == 0) return Rational(0);
            return Rational(ip * (count_residues(spec.H.elements(), p) - 1), ip - 1);
        case RhoKind::rho_prime: {
            auto u = effective_elements(spec);
            int64_t nu = count_residues(u, p);
            uint64_t absD = spec.D < 0 ? uint64_t(-spec.D) : uint64_t(spec.D);
            if (absD % p == 0) {
                if (nu != 1)
                    throw std::invalid_argument("rho': requires H u {h0} = {0} mod D");
                return Rational(0);
            }
            return Rational(ip * (nu - 1), ip - 1);
        }
    }
    return Rational(0);
}

double rho_eval(const RhoSpec& spec, uint64_t d) {
    if (d == 0 || mobius(d) == 0) throw std::domain_error("rho_eval: d must be squarefree");
    double r = 1.0;
    for (auto& [p, e] : factorize(d).factors) r *= rho_local(spec, p);
    return r;
}

namespace {

// Generic local-factor family beyond all tuple structure:
//   fam 0: (1 - c/p)      (1-1/p)^{-ke}   (rho1, c = nu)
//   fam 1: (1 - c/(p-1))  (1-1/p)^{-ke}   (rho2/rho3/rho', c = nu - 1)
double generic_log_factor(int fam, uint32_t c, size_t ke, double p) {
    double base = fam == 0 ? 1.0 - c / p : 1.0 - c / (p - 1.0);
    return std::log(base) - static_cast<double>(ke) * std::log1p(-1.0 / p);
}

double generic_log_tail(int fam, uint32_t c, size_t ke,
                        const std::vector<uint64_t>& primes, size_t lo, size_t hi) {
    static std::mutex mu;
    static std::map<std::tuple<int, uint32_t, size_t, size_t, size_t>, double> cache;
    auto key = std::make_tuple(fam, c, ke, lo, hi);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i)
        s += generic_log_factor(fam, c, ke, static_cast<double>(primes[i]));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, s);
    return s;
}

struct GenericShape {
    int fam;
    uint32_t c;
};

GenericShape generic_shape(const RhoSpec& spec) {
    size_t k = spec.H.k();
    switch (spec.kind) {
        case RhoKind::rho1: return {0, static_cast<uint32_t>(k)};
        case RhoKind::rho2: return {1, static_cast<uint32_t>(k)};      // nu(H u {h0}) - 1 = k
        case RhoKind::rho3: return {1, static_cast<uint32_t>(k - 1)};  // nu(H) - 1
        case RhoKind::rho_prime: return {1, static_cast<uint32_t>(k)};
    }
    return {0, 0};
}

}  // namespace

SingularSeriesResult singular_series(const RhoSpec& spec, size_t k_exponent, uint64_t P) {
    auto elems = effective_elements(spec);
    uint64_t hmax = elems.back() > 0 ? static_cast<uint64_t>(elems.back()) : 1;
    uint64_t mstruct = spec.kind == RhoKind::rho_prime
                           ? (spec.D < 0 ? uint64_t(-spec.D) : uint64_t(spec.D))
                           : spec.m;
    uint64_t pm = largest_prime_factor(mstruct);
    if (P < hmax || P < pm)
        throw std::invalid_argument("singular_series: P must cover h_k and the primes of m");

    // Beyond T0 every factor is generic: nu_p = |elems| and p coprime to m.
    uint64_t T0 = std::max<uint64_t>({hmax, pm, elems.size()});

    auto primes = shared_primes(P);
    SingularSeriesResult res;
    res.truncation_prime = P;
    auto shape = generic_shape(spec);
    double C = static_cast<double>(std::max<size_t>({shape.c + 1, k_exponent, 1}));
    res.tail_bound = 2.0 * C * C / (static_cast<double>(P) * std::log(static_cast<double>(P)));

    double head = 1.0;
    bool degenerate = false;
    size_t i = 0;
    for (; i < primes->size() && (*primes)[i] <= T0; ++i) {
        double p = static_cast<double>((*primes)[i]);
        double local = (1.0 - rho_local(spec, (*primes)[i]) / p) *
                       std::pow(1.0 - 1.0 / p, -static_cast<double>(k_exponent));
        if (local <= 0.0) { degenerate = true; head = 0.0; break; }
        head *= local;
    }
    if (degenerate) {
        res.value = 0.0;
        res.degenerate = true;
        return res;
    }
    double tail_log = generic_log_tail(shape.fam, shape.c, k_exponent, *primes, i, primes->size());
    res.value = head * std::exp(tail_log);
    return res;
}

SingularSeriesResult tuple_singular_series(const Tuple& H, uint64_t P) {
    return singular_series(RhoSpec::make_rho1(H, 1), H.k(), P);
}

void singular_series_csv(const RhoSpec& spec, size_t k_exponent, uint64_t P,
                         std::ostream& os) {
    os << "p,local_factor,running_product\n";
    auto primes = shared_primes(P);
    double prod = 1.0;
    for (uint64_t p : *primes) {
        double pd = static_cast<double>(p);
        double local = (1.0 - rho_local(spec, p) / pd) *
                       std::pow(1.0 - 1.0 / pd, -static_cast<double>(k_exponent));
        prod *= local;
        os << p << ',' << local << ',' << prod << '\n';
    }
}

namespace {

double quad_form_T_dense(const RhoSpec& spec, const SieveParams& params) {
    WeightTable table(params);
    const auto& sf = table.squarefree();
    if (static_cast<double>(sf.size()) * sf.size() > 4e8)
        throw resource_error("quad_form_T: dense path budget exceeded; use the grouped path");

    uint64_t d_max = table.d_max();
    std::vector<double> rho_p(d_max + 1, 0.0);
    for (uint64_t p : primes_up_to(d_max)) rho_p[p] = rho_local(spec, p);

    std::vector<double> rho_d(sf.size());
    std::vector<std::vector<uint32_t>> pf(sf.size());
    for (size_t i = 0; i < sf.size(); ++i) {
        pf[i] = table.prime_factors(sf[i]);
        double r = 1.0;
        for (uint32_t p : pf[i]) r *= rho_p[p];
        rho_d[i] = r;
    }

    double T = 0.0;
    for (size_t i = 0; i < sf.size(); ++i) {
        if (rho_d[i] == 0.0) continue;
        double li = table.lambda(sf[i]);
        for (size_t j = i; j < sf.size(); ++j) {
            if (rho_d[j] == 0.0) continue;
            uint64_t d1 = sf[i], d2 = sf[j];
            uint64_t g = std::gcd(d1, d2);
            uint64_t lcm = d1 / g * d2;
            double rho_lcm = rho_d[i];
            for (uint32_t p : pf[j])
                if (d1 % p != 0) rho_lcm *= rho_p[p];
            double term = li * table.lambda(d2) * rho_lcm / static_cast<double>(lcm);
            T += (i == j) ? term : 2.0 * term;
        }
    }
    return T;
}

// For squarefree delta, sum of lambda_{d1} lambda_{d2} over [d1,d2] = delta:
// each prime of delta goes to d1 only, d2 only, or both.
double pair_lambda_sum(const std::vector<uint32_t>& ps, size_t idx, uint64_t d1,
                       uint64_t d2, int n1, int n2, const SieveParams& params,
                       double logR, double fact, uint64_t Rd) {
    if (idx == ps.size()) {
        unsigned n = static_cast<unsigned>(params.k + params.l);
        double l1 = ((n1 & 1) ? -1.0 : 1.0) *
                    std::pow(logR - std::log(static_cast<double>(d1)), n) / fact;
        double l2 = ((n2 & 1) ? -1.0 : 1.0) *
                    std::pow(logR - std::log(static_cast<double>(d2)), n) / fact;
        return l1 * l2;
    }
    uint64_t p = ps[idx];
    double s = 0.0;
    if (d1 * p <= Rd)
        s += pair_lambda_sum(ps, idx + 1, d1 * p, d2, n1 + 1, n2, params, logR, fact, Rd);
    if (d2 * p <= Rd)
        s += pair_lambda_sum(ps, idx + 1, d1, d2 * p, n1, n2 + 1, params, logR, fact, Rd);
    if (d1 * p <= Rd && d2 * p <= Rd)
        s += pair_lambda_sum(ps, idx + 1, d1 * p, d2 * p, n1 + 1, n2 + 1, params, logR, fact, Rd);
    return s;
}

double quad_form_T_grouped(const RhoSpec& spec, const SieveParams& params) {
    uint64_t Rd = static_cast<uint64_t>(std::floor(params.R));
    uint64_t R2 = Rd * Rd;
    if (R2 > (uint64_t(1) << 26))
        throw resource_error("quad_form_T: grouped path budget exceeded (R^2 too large)");
    auto spf = spf_table(static_cast<uint32_t>(R2));
    double logR = std::log(params.R);
    unsigned n = static_cast<unsigned>(params.k + params.l);
    double fact = std::tgamma(static_cast<double>(n) + 1.0);

    double T = 0.0;
    std::vector<uint32_t> ps;
    for (uint64_t delta = 1; delta <= R2; ++delta) {
        ps.clear();
        uint64_t rest = delta;
        bool sf = true;
        double rho = 1.0;
        while (rest > 1) {
            uint32_t p = spf[rest];
            rest /= p;
            if (rest % p == 0) { sf = false; break; }
            ps.push_back(p);
            rho *= rho_local(spec, p);
        }
        if (!sf || rho == 0.0) continue;
        double pair = pair_lambda_sum(ps, 0, 1, 1, 0, 0, params, logR, fact, Rd);
        T += rho / static_cast<double>(delta) * pair;
    }
    return T;
}

}  // namespace

double quad_form_T(const RhoSpec& spec, const SieveParams& params, TPath path) {
    return path == TPath::dense ? quad_form_T_dense(spec, params)
                                : quad_form_T_grouped(spec, params);
}

double binomial(unsigned n, unsigned r) {
    if (r > n) return 0.0;
    double v = 1.0;
    for (unsigned i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

double log_power_over_factorial(double logR, unsigned n) {
    if (n == 0) return 1.0;
    return std::exp(n * std::log(logR) - std::lgamma(static_cast<double>(n) + 1.0));
}

double main_term(int which, double x, const SieveParams& params,
                 const SingularSeriesResult& ss) {
    if (x <= params.R) throw std::invalid_argument("main_term: need x > R");
    double logR = std::log(params.R);
    unsigned k = static_cast<unsigned>(params.k), l = static_cast<unsigned>(params.l);
    uint64_t m = params.constraint.m;
    switch (which) {
        case 1:
            return x / static_cast<double>(m) *
                   log_power_over_factorial(logR, k + 2 * l) * binomial(2 * l, l) * ss.value;
        case 2:
            return x / static_cast<double>(euler_phi(m)) *
                   log_power_over_factorial(logR, k + 2 * l) * binomial(2 * l, l) * ss.value;
        case 3:
            return x / static_cast<double>(euler_phi(m)) *
                   log_power_over_factorial(logR, k + 2 * l + 1) *
                   binomial(2 * (l + 1), l + 1) * ss.value;
        default:
            throw std::invalid_argument("main_term: which must be 1, 2, or 3");
    }
}

double beta(size_t k, size_t l) {
    if (k < 1) throw std::invalid_argument("beta: k >= 1");
    double kd = static_cast<double>(k), ld = static_cast<double>(l);
    return 2.0 * kd * (2.0 * ld + 1.0) / ((ld + 1.0) * (kd + 2.0 * ld + 1.0));
}

}  // namespace gpylab
