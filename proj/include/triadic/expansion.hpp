#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <triadic/bigint.hpp>
#include <triadic/digit.hpp>

namespace triadic {

/*
 * Combinatorial terms of the cube of a digit series.
 *
 * Writing x = x_0 + x_1*3 + x_2*9 + ... with digits in {0,1,2} and x_0 != 0,
 * the cube expands level by level as
 *
 *     x^3 = x_0^3 + sum_{k>=1} (3*x_0^2*x_k + cross_k) * 3^k,
 *
 * where cross_k collects the weight-k products of three lower digits. The
 * solver's digit congruences are written in these terms, together with their
 * "lifted" (divided-by-3, cube-corrected) variants used when the leading
 * linear coefficient degenerates.
 *
 * All evaluators treat the prefix as a complete expansion: digits beyond the
 * stored length are zero. Divisions are exact by construction; a non-integral
 * division raises NonIntegralDivision and signals an upstream inconsistency.
 */

// The known digits x_0 ... x_{t} of a unit, immutable once built.
class DigitPrefix {
public:
    explicit DigitPrefix(std::vector<Digit> digits) : digits_(std::move(digits)) {
        if (digits_.empty()) throw std::invalid_argument("empty digit prefix");
        if (digits_[0].is_zero()) throw std::invalid_argument("digit prefix must start with a unit digit");
    }

    std::size_t size() const noexcept { return digits_.size(); }
    const std::vector<Digit>& digits() const noexcept { return digits_; }

    // Zero beyond the stored digits.
    unsigned at(std::size_t i) const noexcept {
        return i < digits_.size() ? digits_[i].value() : 0u;
    }

private:
    std::vector<Digit> digits_;
};

// Sum of x_{i1} x_{i2} x_{i3} over i1 + i2 + i3 = k with every index below j,
// each product weighted by its number of orderings (6, 3 or 1).
inline BigInt cube_cross_term_below(const DigitPrefix& x, std::size_t k, std::size_t j) {
    if (j == 0) throw std::invalid_argument("support bound must be positive");
    if (3 * (j - 1) < k) return BigInt(0);
    long long cap = static_cast<long long>(j) - 1;
    long long weight = static_cast<long long>(k);
    long long total = 0;
    for (long long i1 = 0; 3 * i1 <= weight && i1 <= cap; ++i1) {
        for (long long i2 = i1; i1 + 2 * i2 <= weight && i2 <= cap; ++i2) {
            long long i3 = weight - i1 - i2;
            if (i3 < i2 || i3 > cap) continue;
            long long prod = static_cast<long long>(x.at(i1)) * x.at(i2) * x.at(i3);
            if (prod == 0) continue;
            long long coeff = (i1 == i2 && i2 == i3) ? 1 : (i1 == i2 || i2 == i3) ? 3 : 6;
            total += coeff * prod;
        }
    }
    return BigInt(total);
}

// Weight-k cross terms of the cube, not involving x_k itself.
inline BigInt cube_cross_term(const DigitPrefix& x, std::size_t k) {
    if (k == 0) throw std::invalid_argument("cross terms start at level 1");
    return cube_cross_term_below(x, k, k);
}

namespace detail {

inline BigInt digit_cube(unsigned d) { return BigInt(static_cast<long long>(d) * d * d); }

// The three residues of j mod 3 pick up different cube corrections: pure cube
// terms x_s^3 are the only summands not divisible by 3, and they enter the
// congruences one level later than the rest.
template <typename Base>
BigInt lift_term(const DigitPrefix& x, std::size_t j, Base base) {
    if (j < 2) throw std::invalid_argument("lifted terms start at index 2");
    switch (j % 3) {
        case 2: return div3_exact(base());                                  // j = 3s - 1
        case 0: return div3_exact(base()) + digit_cube(x.at(j / 3));        // j = 3s
        default: return div3_exact(base() - digit_cube(x.at((j - 1) / 3))); // j = 3s + 1
    }
}

}  // namespace detail

inline BigInt lifted_cube_cross_term(const DigitPrefix& x, std::size_t j) {
    return detail::lift_term(x, j, [&] { return cube_cross_term(x, j - 1); });
}

inline BigInt lifted_cube_cross_term_below(const DigitPrefix& x, std::size_t j, std::size_t i) {
    return detail::lift_term(x, j, [&] { return cube_cross_term_below(x, j - 1, i); });
}

// sum_{t=0..k} x_t * x_{k-t}
inline BigInt digit_self_convolution(const DigitPrefix& x, std::size_t k) {
    long long total = 0;
    for (std::size_t t = 0; t <= k; ++t)
        total += static_cast<long long>(x.at(t)) * x.at(k - t);
    return BigInt(total);
}

struct LiftChainBroken : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient chain governing digit lifting when the coefficient of the
// linear term has valuation one: start with x_0^2 + a_0 and, while the chain
// stays divisible by 3, advance by prev/3 + a_k + (digit self-convolution).
inline BigInt lift_coefficient_start(Digit x0, Digit a0) {
    return BigInt(static_cast<long long>(x0.value()) * x0.value() + a0.value());
}

inline BigInt lift_coefficient_next(const BigInt& prev, Digit a_k, const BigInt& conv_k) {
    if (prev.mod3() != 0) throw LiftChainBroken("lift coefficient chain advanced past a unit entry");
    return div3_exact(prev) + BigInt(static_cast<long long>(a_k.value())) + conv_k;
}

// Memo for repeated cross-term evaluations along one solver branch. Entries
// are deterministic, so replaying a key always stores the same value.
class TermCache {
public:
    const BigInt& cross_below(const DigitPrefix& x, std::size_t k, std::size_t j) {
        auto key = (static_cast<std::uint64_t>(k) << 32) | j;
        auto it = memo_.find(key);
        if (it == memo_.end())
            it = memo_.emplace(key, cube_cross_term_below(x, k, j)).first;
        return it->second;
    }

private:
    std::unordered_map<std::uint64_t, BigInt> memo_;
};

}  // namespace triadic
