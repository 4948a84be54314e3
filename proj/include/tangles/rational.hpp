#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tangles {

// Exact rational with canonical form (reduced, positive denominator).
// Mixture ratios must be tested for integrality exactly, so they are never
// stored as floating point.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }
    // Implicit from integers so `Rational(1,2) + 1` style code works.
    constexpr Rational(long long n) : num_(n), den_(1) {}  // NOLINT

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const long long g = std::gcd(a.den_, b.den_);
        return Rational(checked(a.num_, b.den_ / g) + checked(b.num_, a.den_ / g),
                        checked(a.den_ / g, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational(-b.num_, b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const long long g1 = std::gcd(std::abs(a.num_), b.den_);
        const long long g2 = std::gcd(std::abs(b.num_), a.den_);
        return Rational(checked(a.num_ / g1, b.num_ / g2),
                        checked(a.den_ / g2, b.den_ / g1));
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }

    bool positive() const { return num_ > 0; }

    // True iff this * n is an integer.
    bool times_is_integral(long long n) const {
        return (static_cast<__int128>(n) * num_) % den_ == 0;
    }
    long long times(long long n) const {
        const __int128 v = static_cast<__int128>(n) * num_;
        return static_cast<long long>(v / den_);
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const long long g = std::gcd(std::abs(num_), den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
    static long long checked(long long a, long long b) {
        const __int128 v = static_cast<__int128>(a) * b;
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("Rational: overflow");
        return static_cast<long long>(v);
    }

    long long num_;
    long long den_;
};

}  // namespace tangles
