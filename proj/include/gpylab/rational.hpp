#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace gpylab {

// Exact rational over int64 with 128-bit intermediates. Used for the
// per-prime local-factor identities, which must hold with zero tolerance.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t n) : num_(n), den_(1) {}
    Rational(int64_t n, int64_t d) : num_(n), den_(d) { normalize(); }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow after reduction");
        Rational r;
        r.num_ = static_cast<int64_t>(n);
        r.den_ = static_cast<int64_t>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    void normalize() {
        Rational r = from128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    int64_t num_, den_;
};

}  // namespace gpylab
