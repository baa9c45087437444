#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <triadic/padic.hpp>
#include <triadic/rational.hpp>

namespace triadic {

// Parse failure with the offending position (0-based).
struct ParseError : std::invalid_argument {
    ParseError(const std::string& message, std::size_t position)
        : std::invalid_argument(message + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

namespace detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const noexcept { return pos >= text.size(); }
    char peek() const noexcept { return done() ? '\0' : text[pos]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    long long integer(const char* what) {
        bool neg = eat('-');
        if (!neg) eat('+');
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(std::string("expected ") + what, pos);
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text[pos] - '0');
            if (v > (1LL << 40)) throw ParseError("integer out of range", pos);
            ++pos;
        }
        return neg ? -v : v;
    }

    BigInt big_integer(const char* what) {
        std::size_t start = pos;
        eat('-') || eat('+');
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(std::string("expected ") + what, pos);
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        return BigInt::from_string(text.substr(start, pos - start));
    }
};

}  // namespace detail

// Rational literal: `[-]n[/m]` or `3^k*[-]n[/m]`.
inline Rational parse_rational(std::string_view text) {
    detail::Cursor c{text};
    long long pow = 0;
    if (text.size() >= 2 && text[0] == '3' && text[1] == '^') {
        c.pos = 2;
        pow = c.integer("exponent");
        c.expect('*', "'*' after power prefix");
    }
    BigInt num = c.big_integer("numerator");
    BigInt den(1);
    if (c.eat('/')) {
        std::size_t den_pos = c.pos;
        den = c.big_integer("denominator");
        if (den.is_zero()) throw ParseError("zero denominator", den_pos);
    }
    if (!c.done()) throw ParseError("trailing input", c.pos);
    return Rational(std::move(num), std::move(den)).times_pow3(pow);
}

// Digit-string form of a nonzero value: `v:<valuation>;d:<d0>,<d1>,...`
// little-endian, leading digit nonzero.
inline std::string render_digits(const PadicInt& x) {
    if (x.is_zero()) return "0";
    std::string out = "v:" + std::to_string(x.valuation()) + ";d:";
    for (std::size_t i = 0; i < x.precision(); ++i) {
        if (i) out += ',';
        out += static_cast<char>('0' + x.digit(i).value());
    }
    return out;
}

inline PadicInt parse_digits(std::string_view text) {
    detail::Cursor c{text};
    c.expect('v', "'v'");
    c.expect(':', "':'");
    long long valuation = c.integer("valuation");
    c.expect(';', "';'");
    c.expect('d', "'d'");
    c.expect(':', "':'");
    std::vector<Digit> digits;
    while (true) {
        std::size_t at = c.pos;
        long long d = c.integer("digit");
        if (d < 0 || d > 2) throw ParseError("digit must be 0, 1 or 2", at);
        digits.push_back(Digit(static_cast<unsigned>(d)));
        if (!c.eat(',')) break;
    }
    if (!c.done()) throw ParseError("trailing input", c.pos);
    if (digits[0].is_zero()) throw ParseError("leading digit must be nonzero", 0);
    return PadicInt::from_digits(valuation, std::move(digits));
}

}  // namespace triadic
