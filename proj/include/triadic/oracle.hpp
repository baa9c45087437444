#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <triadic/padic.hpp>
#include <triadic/rational.hpp>

namespace triadic::oracle {

/*
 * Ground truth by brute force, independent of the digit solvers: enumerate
 * unit residues of the (denominator-cleared) congruence and evaluate
 * residuals in exact rational arithmetic. Desk-size moduli only.
 */

struct UnenumerablePrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Residues mod 3^modulus_exponent that may extend to a unit solution. The
// set can over-approximate: a viable prefix need not extend to a root, so
// callers compare survival across two exponents rather than trusting one.
struct ViableSet {
    std::size_t modulus_exponent;
    std::vector<long long> residues;  // sorted, each in [1, 3^exp), coprime to 3
};

inline std::size_t max_enumeration_digits() {
    if (const char* env = std::getenv("TRIADIC_MAX_ORACLE_N")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return 12;
}

namespace detail {

inline long long pow3_ll(std::size_t e) {
    long long v = 1;
    for (std::size_t i = 0; i < e; ++i) v *= 3;
    return v;
}

inline long long mulmod(long long a, long long b, long long m) {
    return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

// Inverse of a unit mod m (m a power of 3) by extended Euclid.
inline long long invmod(long long a, long long m) {
    long long r0 = m, r1 = ((a % m) + m) % m;
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("not invertible");
    return ((t0 % m) + m) % m;
}

inline long long rational_mod(const Rational& r, long long m) {
    long long num = ((BigInt::divmod(r.numerator(), BigInt(m)).second).to_ll() + m) % m;
    long long den = ((BigInt::divmod(r.denominator(), BigInt(m)).second).to_ll()) % m;
    return mulmod(num, invmod(den, m), m);
}

}  // namespace detail

// All unit residues r with 3^s (r^3 + a r - b) = 0 mod 3^(n+s), where
// s = max(0, -gamma(a), -gamma(b)) clears denominators, projected down to
// [1, 3^n). Raising the modulus by s preserves n digits of information about
// the root after the scaling.
inline ViableSet enumerate_viable(const Rational& a, const Rational& b, std::size_t n,
                                  std::size_t max_n = max_enumeration_digits()) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("zero coefficient unsupported");
    if (n < 1) throw std::invalid_argument("need at least one digit");
    if (n > max_n) throw UnenumerablePrecision("requested exponent exceeds the enumeration bound");

    const long long ga = a.valuation3();
    const long long gb = b.valuation3();
    const std::size_t s = static_cast<std::size_t>(std::max<long long>({0, -ga, -gb}));
    if (n + s > 38) throw UnenumerablePrecision("cleared modulus exceeds 64-bit range");

    const long long big_mod = detail::pow3_ll(n + s);
    const long long out_mod = detail::pow3_ll(n);
    const long long cube_coeff = detail::pow3_ll(s);
    const long long ca = detail::rational_mod(a.times_pow3(static_cast<long long>(s)), big_mod);
    const long long cb = detail::rational_mod(b.times_pow3(static_cast<long long>(s)), big_mod);

    std::vector<long long> survivors;
    for (long long r = 1; r < big_mod; ++r) {
        if (r % 3 == 0) continue;
        long long v = detail::mulmod(detail::mulmod(r, r, big_mod), r, big_mod);
        v = detail::mulmod(v, cube_coeff, big_mod);
        v = (v + detail::mulmod(ca, r, big_mod)) % big_mod;
        v = (v - cb) % big_mod;
        if (v < 0) v += big_mod;
        if (v == 0) survivors.push_back(r % out_mod);
    }
    std::sort(survivors.begin(), survivors.end());
    survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());
    return {n, std::move(survivors)};
}

// Certified residual norm: |x^3 + a x - b|_3 <= 3^(-exponent), computed in
// exact rational arithmetic on the value x stands for (its exact rational
// when known, otherwise the truncation itself).
struct ResidualNorm {
    bool exact_zero;
    long long exponent;  // meaningful when not exact_zero
};

inline ResidualNorm verify(const PadicInt& x, const Rational& a, const Rational& b) {
    if (x.is_zero()) throw std::invalid_argument("candidate must be nonzero");
    if (x.valuation() != 0) throw std::invalid_argument("candidate must be a unit");
    const Rational v = x.is_exact() ? x.exact_value() : truncation_value(x);
    const Rational residual = v * v * v + a * v - b;
    if (residual.is_zero()) return {true, 0};
    return {false, residual.valuation3()};
}

}  // namespace triadic::oracle
