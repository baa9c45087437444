#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace triadic {

// Arbitrary-precision signed integer: sign + little-endian base 2^32 magnitude.
// Sized for this library's needs (exact rational coefficients and carry
// chains); schoolbook algorithms throughout.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long value) {
        if (value == 0) return;
        negative_ = value < 0;
        unsigned long long mag = negative_
            ? ~static_cast<unsigned long long>(value) + 1ULL
            : static_cast<unsigned long long>(value);
        while (mag != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffULL));
            mag >>= 32;
        }
    }

    static BigInt from_string(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("empty integer literal");
        bool neg = false;
        std::size_t i = 0;
        if (text[0] == '+' || text[0] == '-') {
            neg = text[0] == '-';
            i = 1;
        }
        if (i == text.size()) throw std::invalid_argument("integer literal has no digits");
        BigInt out;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9') throw std::invalid_argument("invalid digit in integer literal");
            out.mul_small_inplace(10);
            out.add_small_inplace(static_cast<std::uint32_t>(c - '0'));
        }
        out.negative_ = neg && !out.limbs_.empty();
        return out;
    }

    bool is_zero() const noexcept { return limbs_.empty(); }
    bool is_negative() const noexcept { return negative_; }
    int signum() const noexcept { return is_zero() ? 0 : negative_ ? -1 : 1; }

    BigInt abs() const {
        BigInt r = *this;
        r.negative_ = false;
        return r;
    }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) noexcept {
        return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) noexcept {
        if (a.negative_ != b.negative_)
            return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
        int c = compare_mag(a.limbs_, b.limbs_);
        if (a.negative_) c = -c;
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    BigInt& operator+=(const BigInt& rhs) {
        if (rhs.is_zero()) return *this;
        if (is_zero()) { *this = rhs; return *this; }
        if (negative_ == rhs.negative_) {
            add_mag(limbs_, rhs.limbs_);
        } else {
            int c = compare_mag(limbs_, rhs.limbs_);
            if (c == 0) { limbs_.clear(); negative_ = false; return *this; }
            if (c > 0) {
                sub_mag(limbs_, rhs.limbs_);
            } else {
                std::vector<std::uint32_t> tmp = rhs.limbs_;
                sub_mag(tmp, limbs_);
                limbs_ = std::move(tmp);
                negative_ = rhs.negative_;
            }
        }
        trim();
        return *this;
    }

    BigInt& operator-=(const BigInt& rhs) { return *this += -rhs; }

    BigInt& operator*=(const BigInt& rhs) { *this = *this * rhs; return *this; }

    friend BigInt operator+(BigInt a, const BigInt& b) { a += b; return a; }
    friend BigInt operator-(BigInt a, const BigInt& b) { a -= b; return a; }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt out;
        out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = out.limbs_[i + j] +
                                    static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
                out.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry != 0) {
                std::uint64_t cur = out.limbs_[k] + carry;
                out.limbs_[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        out.negative_ = a.negative_ != b.negative_;
        out.trim();
        return out;
    }

    // Quotient truncated toward zero; remainder carries the dividend's sign.
    static std::pair<BigInt, BigInt> divmod(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw std::domain_error("division by zero");
        BigInt q, r;
        if (den.limbs_.size() == 1) {
            q = num;
            std::uint32_t rem = q.divmod_small_mag(den.limbs_[0]);
            r = BigInt(static_cast<long long>(rem));
            if (num.negative_ && !r.is_zero()) r.negative_ = true;
        } else {
            divmod_mag(num.limbs_, den.limbs_, q.limbs_, r.limbs_);
            q.trim();
            r.trim();
            r.negative_ = num.negative_ && !r.is_zero();
        }
        q.negative_ = (num.negative_ != den.negative_) && !q.is_zero();
        return {q, r};
    }

    BigInt operator/(const BigInt& rhs) const { return divmod(*this, rhs).first; }
    BigInt operator%(const BigInt& rhs) const { return divmod(*this, rhs).second; }

    // Mathematical residue in {0, 1, 2}; 2^32 = 1 (mod 3) so limbs sum directly.
    int mod3() const noexcept {
        unsigned s = 0;
        for (std::uint32_t l : limbs_) s += l % 3u;
        int r = static_cast<int>(s % 3u);
        if (negative_ && r != 0) r = 3 - r;
        return r;
    }

    // v != 0 required: returns (k, u) with v = 3^k * u and 3 does not divide u.
    static std::pair<long long, BigInt> extract_pow3(const BigInt& v) {
        if (v.is_zero()) throw std::domain_error("extract_pow3 called on zero");
        long long k = 0;
        BigInt u = v;
        while (u.mod3() == 0) {
            u.divmod_small_mag(3);
            ++k;
        }
        return {k, u};
    }

    long long to_ll() const {
        if (limbs_.size() > 2) throw std::overflow_error("BigInt does not fit in long long");
        unsigned long long mag = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
        if (!negative_) {
            if (mag > 0x7fffffffffffffffULL) throw std::overflow_error("BigInt does not fit in long long");
            return static_cast<long long>(mag);
        }
        if (mag > 0x8000000000000000ULL) throw std::overflow_error("BigInt does not fit in long long");
        return -static_cast<long long>(mag - 1) - 1;
    }

    bool fits_ll() const noexcept {
        if (limbs_.size() < 2) return true;
        if (limbs_.size() > 2) return false;
        unsigned long long mag = (static_cast<unsigned long long>(limbs_[1]) << 32) | limbs_[0];
        return negative_ ? mag <= 0x8000000000000000ULL : mag <= 0x7fffffffffffffffULL;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        BigInt t = *this;
        while (!t.is_zero()) {
            std::uint32_t chunk = t.divmod_small_mag(1000000000u);
            std::string part = std::to_string(chunk);
            if (!t.is_zero())
                part.insert(part.begin(), 9 - part.size(), '0');
            out.insert(0, part);
        }
        if (negative_) out.insert(out.begin(), '-');
        return out;
    }

private:
    std::vector<std::uint32_t> limbs_;  // little-endian, no trailing zero limbs
    bool negative_ = false;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) negative_ = false;
    }

    void mul_small_inplace(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& l : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(l) * m + carry;
            l = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    void add_small_inplace(std::uint32_t a) {
        std::uint64_t carry = a;
        for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
            std::uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    // Divides the magnitude in place, returns the remainder. Sign untouched.
    std::uint32_t divmod_small_mag(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    static int compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) noexcept {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static void add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(a[i]) + (i < b.size() ? b[i] : 0) + carry;
            a[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) a.push_back(static_cast<std::uint32_t>(carry));
    }

    // Requires |a| >= |b|.
    static void sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(a[i]) - (i < b.size() ? b[i] : 0) - borrow;
            if (cur < 0) {
                cur += 1LL << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            a[i] = static_cast<std::uint32_t>(cur);
        }
    }

    static std::size_t bit_length(const std::vector<std::uint32_t>& v) noexcept {
        if (v.empty()) return 0;
        std::uint32_t top = v.back();
        std::size_t bits = (v.size() - 1) * 32;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    // Binary long division on magnitudes.
    static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        q.assign(a.size(), 0);
        r.clear();
        for (std::size_t i = bit_length(a); i-- > 0;) {
            // r = (r << 1) | bit i of a
            std::uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
            for (auto& l : r) {
                std::uint32_t next = l >> 31;
                l = (l << 1) | carry;
                carry = next;
            }
            if (carry) r.push_back(carry);
            if (compare_mag(r, b) >= 0) {
                sub_mag(r, b);
                while (!r.empty() && r.back() == 0) r.pop_back();
                q[i / 32] |= 1u << (i % 32);
            }
        }
    }
};

inline BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Exact division by 3: the quantities this library divides are divisible by
// construction, so a nonzero remainder signals an upstream inconsistency.
struct NonIntegralDivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt div3_exact(const BigInt& v) {
    auto [q, r] = BigInt::divmod(v, BigInt(3));
    if (!r.is_zero()) throw NonIntegralDivision("quantity is not divisible by 3");
    return q;
}

}  // namespace triadic
