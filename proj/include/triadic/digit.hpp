#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace triadic {

// A base-3 digit.
class Digit {
public:
    constexpr Digit() = default;

    constexpr explicit Digit(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
        if (value > 2) throw std::invalid_argument("digit out of range");
    }

    constexpr unsigned value() const noexcept { return value_; }
    constexpr bool is_zero() const noexcept { return value_ == 0; }

    friend constexpr bool operator==(Digit, Digit) noexcept = default;
    friend constexpr auto operator<=>(Digit, Digit) noexcept = default;

private:
    std::uint8_t value_ = 0;
};

constexpr int mod3(long long v) noexcept {
    int r = static_cast<int>(v % 3);
    return r < 0 ? r + 3 : r;
}

// The unique digit x with alpha * x = beta (mod 3). Needs alpha coprime to 3;
// 1 and 2 are their own inverses mod 3.
inline Digit solve_linear_digit(Digit alpha, Digit beta) {
    if (alpha.is_zero()) throw std::domain_error("linear digit congruence with coefficient 0");
    return Digit(static_cast<unsigned>(alpha.value() * beta.value() % 3));
}

inline std::vector<Digit> to_digits(std::initializer_list<unsigned> values) {
    std::vector<Digit> out;
    out.reserve(values.size());
    for (unsigned v : values) out.push_back(Digit(v));
    return out;
}

inline bool digits_less(const std::vector<Digit>& a, const std::vector<Digit>& b) noexcept {
    return a < b;
}

}  // namespace triadic
