#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <triadic/bigint.hpp>
#include <triadic/digit.hpp>
#include <triadic/expansion.hpp>
#include <triadic/rational.hpp>

namespace triadic {

/*
 * 3-adic numbers at finite precision.
 *
 * A nonzero value is 3^valuation * (d_0 + d_1*3 + d_2*9 + ...) with digits in
 * {0,1,2} and d_0 != 0; `precision` counts the known unit digits. Zero is a
 * distinguished flag since the canonical form excludes it.
 *
 * Values born from rationals keep the rational alongside the digits. Digit
 * arithmetic never consults it except when addition cancels every known
 * digit, where the exact inputs let us certify a true zero (or re-expand the
 * exact sum) instead of giving up.
 *
 * Everything is immutable after construction; operations are pure functions
 * and values can be shared freely across threads.
 */

// Raised when cancellation consumes all known digits of an inexact sum: the
// result can be certified neither zero nor nonzero.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PadicInt {
public:
    static PadicInt zero() {
        PadicInt z;
        z.is_zero_ = true;
        z.exact_ = Rational(0);
        return z;
    }

    // The unique expansion with `precision` digits agreeing with r.
    static PadicInt from_rational(const Rational& r, std::size_t precision) {
        if (precision == 0) throw std::invalid_argument("precision must be positive");
        if (r.is_zero()) return zero();
        auto [gamma, n, m] = r.split_pow3();
        PadicInt out;
        out.valuation_ = gamma;
        out.digits_.reserve(precision);
        const int inv_m = m.mod3();  // 1 and 2 are self-inverse mod 3
        BigInt num = n;
        for (std::size_t i = 0; i < precision; ++i) {
            int d = num.mod3() * inv_m % 3;
            out.digits_.push_back(Digit(static_cast<unsigned>(d)));
            num = div3_exact(num - BigInt(d) * m);
        }
        out.exact_ = r;
        return out;
    }

    static PadicInt from_digits(long long valuation, std::vector<Digit> digits,
                                std::optional<Rational> exact = std::nullopt) {
        if (digits.empty()) throw std::invalid_argument("a nonzero value needs at least one digit");
        if (digits[0].is_zero()) throw std::invalid_argument("leading digit of a unit must be nonzero");
        PadicInt out;
        out.valuation_ = valuation;
        out.digits_ = std::move(digits);
        out.exact_ = std::move(exact);
        return out;
    }

    bool is_zero() const noexcept { return is_zero_; }
    long long valuation() const noexcept { return valuation_; }
    std::size_t precision() const noexcept { return digits_.size(); }
    const std::vector<Digit>& digits() const noexcept { return digits_; }
    Digit digit(std::size_t i) const { return digits_.at(i); }

    bool is_exact() const noexcept { return exact_.has_value(); }
    const Rational& exact_value() const { return exact_.value(); }

    // Fewer known digits of the same value: the exactness tag survives, a
    // digit truncation is still partial knowledge of the identical number.
    PadicInt truncated(std::size_t n) const {
        if (is_zero_) return *this;
        if (n == 0 || n > digits_.size()) throw std::invalid_argument("bad truncation length");
        PadicInt out;
        out.valuation_ = valuation_;
        out.digits_.assign(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(n));
        out.exact_ = exact_;
        return out;
    }

    // Same unit digits at a shifted exponent, i.e. multiplication by a power of 3.
    PadicInt shifted(long long delta) const {
        if (is_zero_) return *this;
        PadicInt out = *this;
        out.valuation_ += delta;
        if (out.exact_) out.exact_ = out.exact_->times_pow3(delta);
        return out;
    }

    // Digit at absolute exponent e; zero below the valuation, caller keeps e
    // inside the known window above it.
    unsigned digit_at_exponent(long long e) const noexcept {
        if (is_zero_ || e < valuation_) return 0;
        std::size_t i = static_cast<std::size_t>(e - valuation_);
        return i < digits_.size() ? digits_[i].value() : 0;
    }

private:
    long long valuation_ = 0;
    std::vector<Digit> digits_;
    bool is_zero_ = false;
    std::optional<Rational> exact_;
};

// Value of the known digits as an exact rational (the truncation itself).
inline Rational truncation_value(const PadicInt& x) {
    if (x.is_zero()) return Rational(0);
    BigInt acc(0);
    for (std::size_t i = x.precision(); i-- > 0;)
        acc = acc * BigInt(3) + BigInt(static_cast<long long>(x.digit(i).value()));
    return Rational(acc, BigInt(1)).times_pow3(x.valuation());
}

// e with |x|_3 = 3^e, or nullopt for zero (whose norm is 0).
inline std::optional<long long> norm_exponent(const PadicInt& x) {
    if (x.is_zero()) return std::nullopt;
    return -x.valuation();
}

inline PadicInt neg(const PadicInt& x) {
    if (x.is_zero()) return x;
    std::vector<Digit> d;
    d.reserve(x.precision());
    d.push_back(Digit(3 - x.digit(0).value()));
    for (std::size_t i = 1; i < x.precision(); ++i)
        d.push_back(Digit(2 - x.digit(i).value()));
    return PadicInt::from_digits(x.valuation(), std::move(d),
                                 x.is_exact() ? std::optional<Rational>(-x.exact_value()) : std::nullopt);
}

inline PadicInt add(const PadicInt& x, const PadicInt& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;

    const long long v = std::min(x.valuation(), y.valuation());
    const long long end = std::min(x.valuation() + static_cast<long long>(x.precision()),
                                   y.valuation() + static_cast<long long>(y.precision()));
    const std::size_t len = static_cast<std::size_t>(end - v);

    std::vector<Digit> sum(len);
    unsigned carry = 0;
    for (std::size_t i = 0; i < len; ++i) {
        unsigned s = x.digit_at_exponent(v + static_cast<long long>(i)) +
                     y.digit_at_exponent(v + static_cast<long long>(i)) + carry;
        sum[i] = Digit(s % 3);
        carry = s / 3;
    }

    std::size_t cancelled = 0;
    while (cancelled < len && sum[cancelled].is_zero()) ++cancelled;

    std::optional<Rational> exact;
    if (x.is_exact() && y.is_exact()) exact = x.exact_value() + y.exact_value();

    if (cancelled == len) {
        // Every known digit cancelled. Exact inputs settle it; otherwise the
        // result cannot be certified at this precision.
        if (!exact)
            throw PrecisionExhausted("cancellation consumed all known digits");
        if (exact->is_zero()) return PadicInt::zero();
        return PadicInt::from_rational(*exact, len);
    }

    sum.erase(sum.begin(), sum.begin() + static_cast<std::ptrdiff_t>(cancelled));
    return PadicInt::from_digits(v + static_cast<long long>(cancelled), std::move(sum), std::move(exact));
}

inline PadicInt sub(const PadicInt& x, const PadicInt& y) { return add(x, neg(y)); }

// Digit convolution followed by carry renormalization.
inline PadicInt mul(const PadicInt& x, const PadicInt& y) {
    if (x.is_zero() || y.is_zero()) return PadicInt::zero();
    const std::size_t n = std::min(x.precision(), y.precision());
    std::vector<Digit> out(n);
    long long carry = 0;
    for (std::size_t k = 0; k < n; ++k) {
        long long s = carry;
        for (std::size_t i = 0; i <= k; ++i)
            s += static_cast<long long>(x.digit(i).value()) * y.digit(k - i).value();
        out[k] = Digit(static_cast<unsigned>(s % 3));
        carry = s / 3;
    }
    std::optional<Rational> exact;
    if (x.is_exact() && y.is_exact()) exact = x.exact_value() * y.exact_value();
    return PadicInt::from_digits(x.valuation() + y.valuation(), std::move(out), std::move(exact));
}

// Cube via the level-by-level expansion (x_0^3, then 3*x_0^2*x_k plus the
// weight-k cross terms), renormalized to digits. Matches mul(mul(x,x),x)
// digit for digit; the two routes cross-check each other.
inline PadicInt cube(const PadicInt& x) {
    if (x.is_zero()) throw std::domain_error("cube of zero is outside the canonical form");
    const std::size_t n = x.precision();
    const DigitPrefix prefix(x.digits());
    const long long x0 = x.digit(0).value();

    std::vector<Digit> out(n);
    BigInt carry(0);
    for (std::size_t k = 0; k < n; ++k) {
        BigInt level = (k == 0)
            ? BigInt(x0 * x0 * x0)
            : BigInt(3 * x0 * x0 * static_cast<long long>(x.digit(k).value())) + cube_cross_term(prefix, k);
        level += carry;
        int d = level.mod3();
        out[k] = Digit(static_cast<unsigned>(d));
        carry = div3_exact(level - BigInt(d));
    }
    std::optional<Rational> exact;
    if (x.is_exact()) {
        const Rational& r = x.exact_value();
        exact = r * r * r;
    }
    return PadicInt::from_digits(3 * x.valuation(), std::move(out), std::move(exact));
}

}  // namespace triadic
