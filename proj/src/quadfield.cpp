#include "gpylab/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gpylab/arith.hpp"

namespace gpylab {

namespace {

bool squarefree_i64(int64_t n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    return mobius(static_cast<uint64_t>(n)) != 0;
}

}  // namespace

bool is_fundamental_discriminant(int64_t D) {
    if (D == 0 || D == 1) return false;
    int64_t r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree_i64(D);
    if (r == 0) {
        int64_t m = D / 4;
        int64_t mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree_i64(m);
    }
    return false;
}

int class_number_form_count(int64_t D) {
    if (D >= 0) throw std::invalid_argument("class_number_form_count: needs D < 0");
    // reduced forms (a,b,c): b^2 - 4ac = D, |b| <= a <= c, b >= 0 if |b|=a or a=c
    int64_t absD = -D;
    int count = 0;
    for (int64_t a = 1; 3 * a * a <= absD; ++a) {
        for (int64_t b = -a; b <= a; ++b) {
            int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            int64_t c = num / (4 * a);
            if (c < a) continue;
            if ((b < 0) && (b == -a || a == c)) continue;
            count += 1;
        }
    }
    return count;
}

QuadField validate_field(int64_t D, bool assert_class_number_one) {
    if (!is_fundamental_discriminant(D))
        throw std::domain_error("validate_field: D is not a fundamental discriminant");
    QuadField K;
    K.D = D;
    if (D < 0) {
        static const std::set<int64_t> h1_list = {-3, -4, -7, -8, -11, -19, -43, -67, -163};
        K.h = class_number_form_count(D);
        K.certificate = h1_list.count(D) ? ClassNumberCertificate::KnownList
                                         : ClassNumberCertificate::FormCount;
    } else {
        if (!assert_class_number_one)
            throw capability_error(
                "validate_field: real quadratic fields need an explicit class-number-one "
                "assertion");
        K.h = 1;
        K.certificate = ClassNumberCertificate::Asserted;
    }
    return K;
}

bool splits_completely(uint64_t p, const QuadField& K) {
    if (!is_prime_u64(p)) throw std::domain_error("splits_completely: p must be prime");
    return kronecker(K.D, static_cast<int64_t>(p)) == 1;
}

namespace {

// closure of `members` under multiplication by g mod q
void insert_generator(std::set<uint64_t>& members, uint64_t g, uint64_t q) {
    if (members.count(g)) return;
    std::vector<uint64_t> orbit;
    uint64_t cur = g;
    while (!members.count(cur)) {
        orbit.push_back(cur);
        cur = cur * g % q;
    }
    std::set<uint64_t> grown;
    for (uint64_t m : members)
        for (uint64_t o : orbit) grown.insert(m * o % q);
    members.insert(grown.begin(), grown.end());
}

}  // namespace

NormResidueGroup phi1(uint64_t q, const QuadField& K) {
    if (q < 1) throw std::invalid_argument("phi1: q >= 1");
    K.require_h1("phi1");
    NormResidueGroup g;
    g.q = q;
    if (q == 1) {
        g.members = {0};
        g.order = 1;
        return g;
    }
    std::set<uint64_t> members{1};
    // No effective bound available: iterate prime norms until the subgroup is
    // unchanged over a window of consecutive primes past q.
    uint64_t window = std::max<uint64_t>(20, static_cast<uint64_t>(10.0 * std::log(double(q))));
    uint64_t unchanged = 0;
    uint64_t p = 2;
    while (true) {
        while (!is_prime_u64(p)) ++p;
        if (q % p != 0) {
            int chi = kronecker(K.D, static_cast<int64_t>(p));
            uint64_t norm = chi >= 0 ? p % q : (p % q) * (p % q) % q;
            size_t before = members.size();
            insert_generator(members, norm, q);
            if (members.size() != before) {
                g.generators_found.push_back(norm);
                unchanged = 0;
            } else if (p > q) {
                ++unchanged;
            }
        } else if (p > q) {
            ++unchanged;
        }
        g.stabilization_bound = p;
        if (p > q && unchanged >= window) break;
        ++p;
    }
    g.members.assign(members.begin(), members.end());
    g.order = g.members.size();
    return g;
}

namespace {

double simpson(double a, double b) {
    auto f = [](double t) { return 1.0 / std::log(t); };
    double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

double adaptive_simpson(double a, double b, double whole, double eps, int depth) {
    double c = 0.5 * (a + b);
    double left = simpson(a, c), right = simpson(c, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson(a, c, left, eps / 2.0, depth - 1) +
           adaptive_simpson(c, b, right, eps / 2.0, depth - 1);
}

}  // namespace

double li(double x) {
    if (x < 2.0) throw std::domain_error("li: x >= 2");
    if (x == 2.0) return 0.0;
    return adaptive_simpson(2.0, x, simpson(2.0, x), 1e-10, 60);
}

uint64_t pi_star(uint64_t x, uint64_t q, uint64_t a, const QuadField& K) {
    if (q >= 2 && std::gcd(a, q) != 1)
        throw std::invalid_argument("pi_star: requires gcd(a,q)=1");
    K.require_h1("pi_star");
    uint64_t count = 0;
    PrimeStore store = sieve_segment(x + 1, 2 * x + 1);
    store.for_each_prime([&](uint64_t p) {
        if (p % q == a % q && kronecker(K.D, static_cast<int64_t>(p)) == 1) ++count;
    });
    return count;
}

double fogels_error(uint64_t x, uint64_t q, const QuadField& K) {
    K.require_h1("fogels_error");
    NormResidueGroup group = phi1(q, K);
    double phi1_q = static_cast<double>(group.order);

    std::set<uint64_t> classes(group.members.begin(), group.members.end());
    if (q == 1) classes = {0};

    // split primes <= x, ascending, with an incrementally accumulated Li
    std::vector<uint64_t> counts(q == 1 ? 1 : q, 0);
    std::vector<double> best(q == 1 ? 1 : q, 0.0);
    PrimeStore store = sieve_segment(2, x + 1);
    double li_at = 0.0, prev = 2.0;
    store.for_each_prime([&](uint64_t p) {
        if (kronecker(K.D, static_cast<int64_t>(p)) != 1) return;
        uint64_t a = p % q;
        if (!classes.count(a)) return;  // p | q, or outside the norm residues
        double pd = static_cast<double>(p);
        if (pd > prev) {
            li_at += adaptive_simpson(prev, pd, simpson(prev, pd), 1e-12, 40);
            prev = pd;
        }
        double line = li_at / phi1_q;
        best[a] = std::max(best[a], std::abs(double(counts[a]) - line));
        counts[a] += 1;
        best[a] = std::max(best[a], std::abs(double(counts[a]) - line));
    });
    double xd = static_cast<double>(x);
    double li_x = li_at + (xd > prev ? adaptive_simpson(prev, xd, simpson(prev, xd), 1e-12, 40) : 0.0);
    double E = 0.0;
    for (uint64_t a : classes) {
        best[a] = std::max(best[a], std::abs(double(counts[a]) - li_x / phi1_q));
        E = std::max(E, best[a]);
    }
    return E;
}

SingularSeriesResult rho_prime_series(const Tuple& H, int64_t h0, const QuadField& K,
                                      uint64_t P) {
    K.require_h1("rho_prime_series");
    uint64_t absD = static_cast<uint64_t>(K.D < 0 ? -K.D : K.D);
    for (int64_t h : H.elements())
        if (static_cast<uint64_t>(h) % absD != 0)
            throw std::invalid_argument("rho_prime_series: requires H = {0} (mod D)");
    if (h0 < 0 || static_cast<uint64_t>(h0) % absD != 0)
        throw std::invalid_argument("rho_prime_series: requires h0 = 0 (mod D)");
    if (H.contains(h0))
        throw std::invalid_argument("rho_prime_series: requires h0 not in H");
    return singular_series(RhoSpec::make_rho_prime(H, h0, K.D), H.k(), P);
}

}  // namespace gpylab
