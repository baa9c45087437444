#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <triadic/bigint.hpp>

namespace triadic {

// Exact fraction, always reduced: gcd(numerator, denominator) = 1 and the
// denominator is positive. Zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}

    Rational(long long value) : num_(value), den_(1) {}

    Rational(BigInt numerator, BigInt denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
        normalize();
    }

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }

    // 3-adic valuation; nonzero only. After reduction at most one of the two
    // parts is divisible by 3.
    long long valuation3() const {
        if (is_zero()) throw std::domain_error("valuation of zero");
        return BigInt::extract_pow3(num_).first - BigInt::extract_pow3(den_).first;
    }

    // (gamma, n, m) with value = 3^gamma * n/m, both n and m coprime to 3, m > 0.
    struct Pow3Split {
        long long gamma;
        BigInt unit_num;
        BigInt unit_den;
    };

    Pow3Split split_pow3() const {
        if (is_zero()) throw std::domain_error("valuation of zero");
        auto [kn, un] = BigInt::extract_pow3(num_);
        auto [kd, ud] = BigInt::extract_pow3(den_);
        return {kn - kd, std::move(un), std::move(ud)};
    }

    Rational times_pow3(long long k) const {
        BigInt p(1);
        const BigInt three(3);
        for (long long i = 0; i < (k < 0 ? -k : k); ++i) p *= three;
        return k >= 0 ? Rational(num_ * p, den_) : Rational(num_, den_ * p);
    }

    std::string to_string() const {
        std::string s = num_.to_string();
        if (!(den_ == BigInt(1))) s += "/" + den_.to_string();
        return s;
    }

private:
    BigInt num_;
    BigInt den_;

    void normalize() {
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = gcd(num_, den_);
        if (!(g == BigInt(1))) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace triadic
