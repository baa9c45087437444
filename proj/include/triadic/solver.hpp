#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <triadic/bigint.hpp>
#include <triadic/digit.hpp>
#include <triadic/expansion.hpp>
#include <triadic/oracle.hpp>
#include <triadic/padic.hpp>
#include <triadic/rational.hpp>

namespace triadic {

/*
 * Solver for x^3 + a x = b over the units of the 3-adic integers.
 *
 * The pair of valuations (gamma(a), gamma(b)) splits into five provably
 * unsolvable families, one derived unsolvable family, and four solvable
 * regimes. Each solvable regime has a digit-by-digit recurrence that solves
 * one congruence mod 3 per level while maintaining the exact integer carries;
 * a generic depth-first digit search over the residual provides a second,
 * independent engine that must agree with it.
 */

// ---------------------------------------------------------------------------
// classification

enum class CaseTag {
    NoSol1,           // gamma(a) = 0, gamma(b) < 0
    NoSol2,           // gamma(a) > 0, gamma(b) > 0
    NoSol3,           // gamma(a) > 0, gamma(b) < 0
    NoSol4,           // gamma(a) < 0, gamma(b) = 0
    NoSol5,           // gamma(a) < 0, gamma(b) > 0
    NoSolUnequalNeg,  // gamma(a) < 0, gamma(b) < 0, gamma(a) != gamma(b)
    CaseI,            // gamma(a) = gamma(b) = 0
    CaseII,           // gamma(a) = 0, gamma(b) = m > 0
    CaseIII,          // gamma(a) = gamma(b) = -m < 0
    CaseIV,           // gamma(a) = m >= 2, gamma(b) = 0
    CaseA1,           // gamma(a) = 1, gamma(b) = 0
};

struct CaseLabel {
    CaseTag tag = CaseTag::NoSol1;
    long long m = 0;  // the positive parameter of Case II/III/IV
};

inline CaseLabel classify(long long ga, long long gb) {
    if (ga == 0) {
        if (gb < 0) return {CaseTag::NoSol1, 0};
        if (gb == 0) return {CaseTag::CaseI, 0};
        return {CaseTag::CaseII, gb};
    }
    if (ga > 0) {
        if (gb > 0) return {CaseTag::NoSol2, 0};
        if (gb < 0) return {CaseTag::NoSol3, 0};
        return ga == 1 ? CaseLabel{CaseTag::CaseA1, 0} : CaseLabel{CaseTag::CaseIV, ga};
    }
    if (gb == 0) return {CaseTag::NoSol4, 0};
    if (gb > 0) return {CaseTag::NoSol5, 0};
    return ga == gb ? CaseLabel{CaseTag::CaseIII, -ga} : CaseLabel{CaseTag::NoSolUnequalNeg, 0};
}

inline bool solvable(CaseTag tag) {
    switch (tag) {
        case CaseTag::CaseI:
        case CaseTag::CaseII:
        case CaseTag::CaseIII:
        case CaseTag::CaseIV:
        case CaseTag::CaseA1: return true;
        default: return false;
    }
}

inline std::string to_string(const CaseLabel& label) {
    switch (label.tag) {
        case CaseTag::NoSol1: return "NoSol_1";
        case CaseTag::NoSol2: return "NoSol_2";
        case CaseTag::NoSol3: return "NoSol_3";
        case CaseTag::NoSol4: return "NoSol_4";
        case CaseTag::NoSol5: return "NoSol_5";
        case CaseTag::NoSolUnequalNeg: return "NoSol_UnequalNeg";
        case CaseTag::CaseI: return "Case_I";
        case CaseTag::CaseII: return "Case_II(m=" + std::to_string(label.m) + ")";
        case CaseTag::CaseIII: return "Case_III(m=" + std::to_string(label.m) + ")";
        case CaseTag::CaseIV: return "Case_IV(m=" + std::to_string(label.m) + ")";
        case CaseTag::CaseA1: return "Case_A1";
    }
    return "?";
}

inline std::string no_solution_reason(CaseTag tag) {
    switch (tag) {
        case CaseTag::NoSol1:
            return "gamma(a) = 0 with gamma(b) < 0: clearing the norm of b forces b_0 = 0 (mod 3)";
        case CaseTag::NoSol2:
            return "gamma(a) > 0 with gamma(b) > 0: the unit level forces x_0^3 = 0 (mod 3)";
        case CaseTag::NoSol3:
            return "gamma(a) > 0 with gamma(b) < 0: clearing the norm of b forces b_0 = 0 (mod 3)";
        case CaseTag::NoSol4:
            return "gamma(a) < 0 with gamma(b) = 0: the dominant level forces a_0 x_0 = 0 (mod 3)";
        case CaseTag::NoSol5:
            return "gamma(a) < 0 with gamma(b) > 0: the dominant level forces a_0 x_0 = 0 (mod 3)";
        case CaseTag::NoSolUnequalNeg:
            return "gamma(a) and gamma(b) both negative but unequal: |x^3 + ax| = |a| != |b| for units";
        default: return "";
    }
}

// ---------------------------------------------------------------------------
// reports

enum class Method { Theorem, Dfs, Both };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::Theorem: return "theorem";
        case Method::Dfs: return "dfs";
        default: return "both";
    }
}

struct TraceRow {
    std::size_t level;    // exponent of the congruence
    BigInt lhs;           // exact integer value of the left side
    Digit target;         // right-hand digit
    bool pins_digit;      // false for pure consistency checks
    Digit chosen;         // meaningful when pins_digit
};

// Exact integer carries maintained while solving, plus the lifting
// coefficient chain in the gamma(a) = 1 regime. carries[q] holds the carry
// produced by congruence level q.
struct CarryLedger {
    std::vector<BigInt> carries;
    std::vector<BigInt> lift_coefficients;
    bool lift_chain_open = false;  // coefficient chain still = 0 (mod 3) at depth N
    std::vector<TraceRow> trace;
};

struct SolveReport {
    CaseLabel label;
    Method method = Method::Theorem;
    std::vector<PadicInt> solutions;                   // units, precision N, sorted by digits
    std::vector<CarryLedger> ledgers;                  // one per solution
    std::vector<oracle::ResidualNorm> residual_checks; // one per solution (filled by solve())
    std::optional<std::string> rejected_reason;
};

// The two engines returned different solution sets: a bug, never resolved
// silently.
struct EngineDisagreement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A supplied digit sequence violates the governing congruences.
struct CongruenceViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// shared machinery

namespace detail {

inline long long cube_ll(unsigned d) { return static_cast<long long>(d) * d * d; }

struct Coeffs {
    std::vector<Digit> a, b;

    unsigned da(std::size_t i) const {
        if (i >= a.size()) throw std::invalid_argument("coefficient a has too few known digits");
        return a[i].value();
    }
    unsigned db(std::size_t i) const {
        if (i >= b.size()) throw std::invalid_argument("coefficient b has too few known digits");
        return b[i].value();
    }
};

inline Coeffs make_coeffs(const PadicInt& a, const PadicInt& b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("zero coefficient unsupported");
    return Coeffs{a.digits(), b.digits()};
}

inline void expect_valuations(const PadicInt& a, const PadicInt& b, long long ga, long long gb) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("zero coefficient unsupported");
    if (a.valuation() != ga || b.valuation() != gb)
        throw std::invalid_argument("input valuation mismatch for this case");
}

inline Digit given_or(const std::vector<Digit>* given, std::size_t index, Digit solved) {
    if (!given) return solved;
    Digit g = (*given)[index];
    if (g != solved)
        throw CongruenceViolation("digit " + std::to_string(index) + " violates its congruence");
    return g;
}

// Shared recurrence for the three regimes whose level-k congruence carries
// the newest digit with unit coefficient a_0: level targets are the digits of
// b (shifted for gamma(b) = m > 0) and the cube enters at level `sigma`
// (0, or m when both valuations are -m).
inline std::pair<std::vector<Digit>, CarryLedger>
unit_case_core(const Coeffs& c, std::size_t sigma, const std::vector<Digit>& targets, Digit x0,
               std::size_t n, const std::vector<Digit>* given) {
    const unsigned a0 = c.da(0);
    std::vector<Digit> x{x0};
    CarryLedger ledger;

    BigInt level0 = BigInt(sigma == 0 ? cube_ll(x0.value()) : 0) +
                    BigInt(static_cast<long long>(a0) * x0.value());
    if (level0.mod3() != static_cast<int>(targets[0].value()))
        throw CongruenceViolation("level-0 congruence fails");
    BigInt carry = div3_exact(level0 - BigInt(static_cast<long long>(targets[0].value())));
    ledger.trace.push_back({0, level0, targets[0], true, x0});
    ledger.carries.push_back(carry);

    for (std::size_t k = 1; k < n; ++k) {
        BigInt known(0);
        for (std::size_t s = 0; s < k; ++s)
            known += BigInt(static_cast<long long>(x[s].value()) * c.da(k - s));
        if (k >= sigma + 2) {
            const std::size_t kk = k - sigma;
            known += BigInt(static_cast<long long>(x0.value()) * x0.value() * x[kk - 1].value());
            known += cube_cross_term(DigitPrefix(x), kk);
        } else if (sigma > 0 && k == sigma) {
            known += BigInt(cube_ll(x0.value()));
        }
        const Digit t = targets[k];
        const int rhs = mod3(static_cast<long long>(t.value()) - known.mod3() - carry.mod3());
        Digit xk = given_or(given, k,
                            solve_linear_digit(Digit(a0), Digit(static_cast<unsigned>(rhs))));
        BigInt lhs = known + BigInt(static_cast<long long>(a0) * xk.value());
        BigInt next = div3_exact(lhs + carry - BigInt(static_cast<long long>(t.value())));
        x.push_back(xk);
        ledger.trace.push_back({k, lhs, t, true, xk});
        ledger.carries.push_back(next);
        carry = std::move(next);
    }
    return {std::move(x), std::move(ledger)};
}

inline std::vector<Digit> shifted_targets(const Coeffs& c, std::size_t m, std::size_t n) {
    std::vector<Digit> t(n, Digit(0));
    for (std::size_t k = m >= n ? n : m; k < n; ++k) t[k] = Digit(c.db(k - m));
    return t;
}

inline std::vector<Digit> plain_targets(const Coeffs& c, std::size_t n) {
    std::vector<Digit> t;
    t.reserve(n);
    for (std::size_t k = 0; k < n; ++k) t.push_back(Digit(c.db(k)));
    return t;
}

// gamma(a) = m >= 2, gamma(b) = 0. Levels 0 and 1 collapse into the mod-9
// cube gate; from level 2 on, the newest digit carries coefficient x_0^2.
inline std::pair<std::vector<Digit>, CarryLedger>
large_shift_core(const Coeffs& c, std::size_t m, Digit x0, std::size_t n,
                 const std::vector<Digit>* given) {
    const long long x0sq = static_cast<long long>(x0.value()) * x0.value();
    std::vector<Digit> x{x0};
    CarryLedger ledger;

    BigInt gate = BigInt(cube_ll(x0.value())) -
                  BigInt(static_cast<long long>(c.db(0)) + 3LL * c.db(1));
    auto [m1, rem] = BigInt::divmod(gate, BigInt(9));
    if (!rem.is_zero()) throw CongruenceViolation("mod-9 cube gate fails");
    ledger.trace.push_back({0, BigInt(cube_ll(x0.value())), Digit(c.db(0)), true, x0});
    ledger.trace.push_back({1, div3_exact(BigInt(cube_ll(x0.value())) - BigInt((long long)c.db(0))),
                            Digit(c.db(1)), false, Digit(0)});
    ledger.carries.push_back(m1);
    BigInt carry = std::move(m1);

    for (std::size_t k = 2; k <= n; ++k) {
        BigInt known(0);
        if (k == 3) {
            known += cube_cross_term_below(DigitPrefix(x), 3, 2);
            known += BigInt(static_cast<long long>(x0.value()) * x[1].value() * x[1].value());
        } else if (k >= 4) {
            known += cube_cross_term_below(DigitPrefix(x), k, k - 1);
            known += BigInt(2LL * x0.value() * x[1].value() * x[k - 2].value());
        }
        if (k >= m)
            for (std::size_t s = 0; s + m <= k; ++s)
                known += BigInt(static_cast<long long>(x[s].value()) * c.da(k - m - s));
        const Digit t = Digit(c.db(k));
        const int rhs = mod3(static_cast<long long>(t.value()) - known.mod3() - carry.mod3());
        Digit xk = given_or(given, k - 1, Digit(static_cast<unsigned>(rhs)));  // x_0^2 = 1 (mod 3)
        BigInt lhs = known + BigInt(x0sq * xk.value());
        BigInt next = div3_exact(lhs + carry - BigInt(static_cast<long long>(t.value())));
        x.push_back(xk);
        ledger.trace.push_back({k, lhs, t, true, xk});
        ledger.carries.push_back(next);
        carry = std::move(next);
    }
    return {std::move(x), std::move(ledger)};
}

// gamma(a) = 1, gamma(b) = 0. Digit 0 is forced, level 1 is a pure
// consistency check, and the lifting coefficient chain A_0 = x_0^2 + a_0,
// A_k = A_{k-1}/3 + a_k + R_k decides between unique lifting and branching.
struct A1State {
    std::vector<Digit> x;
    std::vector<BigInt> carries;
    std::vector<BigInt> lift;
    std::vector<TraceRow> trace;
    std::optional<std::size_t> unit_at;
    TermCache cache;
};

template <typename Sink>
void a1_descend(const Coeffs& c, std::size_t n, A1State st, const std::vector<Digit>* given,
                Sink&& sink) {
    const unsigned x0 = st.x[0].value();
    while (st.x.size() < n) {
        if (st.unit_at) {
            // unique tail: coefficient A_kappa is a unit
            const std::size_t kappa = *st.unit_at;
            const std::size_t i = st.x.size() - kappa;
            const std::size_t level = 2 * kappa + 1 + i;
            BigInt known(0);
            for (std::size_t t2 = 1; t2 <= kappa + i; ++t2)
                known += BigInt(static_cast<long long>(st.x[kappa + i - t2].value()) * c.da(kappa + t2));
            known += lifted_cube_cross_term_below(DigitPrefix(st.x), level, kappa + i);
            known += st.carries[level - 1];
            const BigInt& coeff = st.lift[kappa];
            const Digit t = Digit(c.db(level));
            const int rhs = mod3(static_cast<long long>(t.value()) - known.mod3());
            Digit xk = given_or(given, st.x.size(),
                                solve_linear_digit(Digit(static_cast<unsigned>(coeff.mod3())),
                                                   Digit(static_cast<unsigned>(rhs))));
            BigInt lhs = known + coeff * BigInt(static_cast<long long>(xk.value()));
            if (lhs.mod3() != static_cast<int>(t.value()))
                throw CongruenceViolation("tail congruence fails");
            st.carries.push_back(div3_exact(lhs - BigInt(static_cast<long long>(t.value()))));
            st.trace.push_back({level, lhs, t, true, xk});
            st.x.push_back(xk);
            continue;
        }

        const std::size_t j = st.x.size();

        // level 2j: consistency, no unknown digit
        {
            const std::size_t level = 2 * j;
            BigInt known(0);
            for (std::size_t t2 = 0; t2 < j; ++t2)
                known += BigInt(static_cast<long long>(st.x[t2].value()) * c.da(level - 1 - t2));
            known += lifted_cube_cross_term_below(DigitPrefix(st.x), level, j);
            known += st.carries[level - 1];
            const Digit t = Digit(c.db(level));
            st.trace.push_back({level, known, t, false, Digit(0)});
            if (known.mod3() != static_cast<int>(t.value())) {
                if (given) throw CongruenceViolation("consistency level fails");
                return;  // branch dies
            }
            st.carries.push_back(div3_exact(known - BigInt(static_cast<long long>(t.value()))));
        }

        // level 2j+1: quadratic in the new digit; every consistent value branches
        const std::size_t level = 2 * j + 1;
        BigInt base(0);
        for (std::size_t t2 = 0; t2 < j; ++t2)
            base += BigInt(static_cast<long long>(st.x[t2].value()) * c.da(level - 1 - t2));
        base += st.carries[level - 1];
        const Digit t = Digit(c.db(level));

        bool branched = false;
        for (unsigned cand = 0; cand < 3; ++cand) {
            if (given && (*given)[j].value() != cand) continue;
            std::vector<Digit> ext = st.x;
            ext.push_back(Digit(cand));
            const DigitPrefix p(ext);
            BigInt conv = digit_self_convolution(p, j);
            BigInt aj = lift_coefficient_next(st.lift[j - 1], Digit(c.da(j)), conv);
            BigInt lhs = (aj - BigInt(static_cast<long long>(x0) * cand)) *
                             BigInt(static_cast<long long>(cand)) +
                         base + lifted_cube_cross_term_below(p, level, j);
            if (lhs.mod3() != static_cast<int>(t.value())) {
                if (given) throw CongruenceViolation("branch congruence fails");
                continue;
            }
            A1State child = st;
            child.x = std::move(ext);
            child.lift.push_back(aj);
            child.carries.push_back(div3_exact(lhs - BigInt(static_cast<long long>(t.value()))));
            child.trace.push_back({level, lhs, t, true, Digit(cand)});
            if (aj.mod3() != 0) child.unit_at = j;
            branched = true;
            a1_descend(c, n, std::move(child), given, sink);
        }
        if (!branched && given) throw CongruenceViolation("branch congruence fails");
        return;
    }
    sink(std::move(st));
}

// Prologue shared by solving and verification. Returns nullopt (or throws in
// verify mode) when the level-1 consistency check rules out any solution.
inline std::optional<A1State> a1_prologue(const Coeffs& c, const std::vector<Digit>* given) {
    const Digit x0(c.db(0));  // x_0^3 = x_0 (mod 3) forces x_0 = b_0
    if (given && (*given)[0] != x0) throw CongruenceViolation("digit 0 violates its congruence");
    A1State st;
    st.x.push_back(x0);
    BigInt m1 = div3_exact(BigInt(cube_ll(x0.value())) - BigInt(static_cast<long long>(c.db(0))));
    st.trace.push_back({0, BigInt(cube_ll(x0.value())), Digit(c.db(0)), true, x0});
    st.carries.push_back(m1);

    BigInt level1 = BigInt(static_cast<long long>(x0.value()) * c.da(0)) + m1;
    st.trace.push_back({1, level1, Digit(c.db(1)), false, Digit(0)});
    if (level1.mod3() != static_cast<int>(c.db(1))) {
        if (given) throw CongruenceViolation("level-1 consistency fails");
        return std::nullopt;
    }
    st.carries.push_back(div3_exact(level1 - BigInt(static_cast<long long>(c.db(1)))));
    st.lift.push_back(lift_coefficient_start(x0, Digit(c.da(0))));
    return st;
}

// Unique-lifting loop when A_0 is already a unit.
inline std::pair<std::vector<Digit>, CarryLedger>
a1_unit_core(const Coeffs& c, A1State st, std::size_t n, const std::vector<Digit>* given) {
    const BigInt a_coeff = st.lift[0];
    for (std::size_t k = 2; k <= n && st.x.size() < n; ++k) {
        BigInt known(0);
        for (std::size_t i2 = 1; i2 < k; ++i2)
            known += BigInt(static_cast<long long>(st.x[k - 1 - i2].value()) * c.da(i2));
        known += lifted_cube_cross_term(DigitPrefix(st.x), k);
        known += st.carries[k - 1];
        const Digit t = Digit(c.db(k));
        const int rhs = mod3(static_cast<long long>(t.value()) - known.mod3());
        Digit xk = given_or(given, k - 1,
                            solve_linear_digit(Digit(static_cast<unsigned>(a_coeff.mod3())),
                                               Digit(static_cast<unsigned>(rhs))));
        BigInt lhs = known + a_coeff * BigInt(static_cast<long long>(xk.value()));
        if (lhs.mod3() != static_cast<int>(t.value()))
            throw CongruenceViolation("unique-lifting congruence fails");
        st.carries.push_back(div3_exact(lhs - BigInt(static_cast<long long>(t.value()))));
        st.trace.push_back({k, lhs, t, true, xk});
        st.x.push_back(xk);
    }
    CarryLedger ledger{std::move(st.carries), std::move(st.lift), false, std::move(st.trace)};
    return {std::move(st.x), std::move(ledger)};
}

inline void sort_solutions(SolveReport& report) {
    std::vector<std::size_t> order(report.solutions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return report.solutions[i].digits() < report.solutions[j].digits();
    });
    std::vector<PadicInt> sols;
    std::vector<CarryLedger> ledgers;
    for (std::size_t i : order) {
        if (!sols.empty() && sols.back().digits() == report.solutions[i].digits()) continue;
        sols.push_back(report.solutions[i]);
        ledgers.push_back(report.ledgers[i]);
    }
    report.solutions = std::move(sols);
    report.ledgers = std::move(ledgers);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// theorem-driven case solvers

inline SolveReport solve_case_I(const PadicInt& a, const PadicInt& b, std::size_t n) {
    detail::expect_valuations(a, b, 0, 0);
    auto c = detail::make_coeffs(a, b);
    SolveReport report;
    report.label = {CaseTag::CaseI, 0};
    auto targets = detail::plain_targets(c, n);
    for (unsigned d0 = 1; d0 <= 2; ++d0) {
        if (mod3(detail::cube_ll(d0) + static_cast<long long>(c.da(0)) * d0) !=
            static_cast<int>(c.db(0)))
            continue;
        auto [digits, ledger] = detail::unit_case_core(c, 0, targets, Digit(d0), n, nullptr);
        report.solutions.push_back(PadicInt::from_digits(0, std::move(digits)));
        report.ledgers.push_back(std::move(ledger));
    }
    if (report.solutions.empty())
        report.rejected_reason = "x^3 + a x vanishes mod 3 for every unit digit (a = 2 mod 3), "
                                 "but b is a unit";
    detail::sort_solutions(report);
    return report;
}

inline SolveReport solve_case_II(const PadicInt& a, const PadicInt& b, std::size_t n) {
    if (b.is_zero() || b.valuation() <= 0) throw std::invalid_argument("input valuation mismatch for this case");
    detail::expect_valuations(a, b, 0, b.valuation());
    const std::size_t m = static_cast<std::size_t>(b.valuation());
    auto c = detail::make_coeffs(a, b);
    SolveReport report;
    report.label = {CaseTag::CaseII, static_cast<long long>(m)};
    auto targets = detail::shifted_targets(c, m, n);
    for (unsigned d0 = 1; d0 <= 2; ++d0) {
        if (mod3(detail::cube_ll(d0) + static_cast<long long>(c.da(0)) * d0) != 0) continue;
        auto [digits, ledger] = detail::unit_case_core(c, 0, targets, Digit(d0), n, nullptr);
        report.solutions.push_back(PadicInt::from_digits(0, std::move(digits)));
        report.ledgers.push_back(std::move(ledger));
    }
    if (report.solutions.empty())
        report.rejected_reason = "x^3 + a x = (1 + a_0) x != 0 (mod 3) for units "
                                 "(a = 1 mod 3), but b = 0 (mod 3)";
    detail::sort_solutions(report);
    return report;
}

inline SolveReport solve_case_III(const PadicInt& a, const PadicInt& b, std::size_t n) {
    if (a.is_zero() || a.valuation() >= 0) throw std::invalid_argument("input valuation mismatch for this case");
    detail::expect_valuations(a, b, a.valuation(), a.valuation());
    const std::size_t m = static_cast<std::size_t>(-a.valuation());
    auto c = detail::make_coeffs(a, b);
    SolveReport report;
    report.label = {CaseTag::CaseIII, static_cast<long long>(m)};
    Digit x0 = solve_linear_digit(Digit(c.da(0)), Digit(c.db(0)));
    auto [digits, ledger] = detail::unit_case_core(c, m, detail::plain_targets(c, n), x0, n, nullptr);
    report.solutions.push_back(PadicInt::from_digits(0, std::move(digits)));
    report.ledgers.push_back(std::move(ledger));
    return report;
}

inline SolveReport solve_case_IV(const PadicInt& a, const PadicInt& b, std::size_t n) {
    if (a.is_zero() || a.valuation() < 2) throw std::invalid_argument("input valuation mismatch for this case");
    detail::expect_valuations(a, b, a.valuation(), 0);
    const std::size_t m = static_cast<std::size_t>(a.valuation());
    auto c = detail::make_coeffs(a, b);
    SolveReport report;
    report.label = {CaseTag::CaseIV, static_cast<long long>(m)};
    const unsigned b0 = c.db(0), b1 = c.db(1);
    unsigned x0;
    if (b0 == 1 && b1 == 0) x0 = 1;
    else if (b0 == 2 && b1 == 2) x0 = 2;
    else {
        report.rejected_reason = "cube non-residue mod 9: unit cubes are 1 and 8 only";
        return report;
    }
    auto [digits, ledger] = detail::large_shift_core(c, m, Digit(x0), n, nullptr);
    report.solutions.push_back(PadicInt::from_digits(0, std::move(digits)));
    report.ledgers.push_back(std::move(ledger));
    return report;
}

inline SolveReport solve_case_A1(const PadicInt& a, const PadicInt& b, std::size_t n) {
    detail::expect_valuations(a, b, 1, 0);
    auto c = detail::make_coeffs(a, b);
    SolveReport report;
    report.label = {CaseTag::CaseA1, 0};
    auto st = detail::a1_prologue(c, nullptr);
    if (!st) {
        report.rejected_reason = "digit-1 consistency congruence x_0 a_0 + carry = b_1 (mod 3) fails";
        return report;
    }
    if (st->lift[0].mod3() != 0) {
        auto [digits, ledger] = detail::a1_unit_core(c, std::move(*st), n, nullptr);
        report.solutions.push_back(PadicInt::from_digits(0, std::move(digits)));
        report.ledgers.push_back(std::move(ledger));
    } else {
        detail::a1_descend(c, n, std::move(*st), nullptr, [&](detail::A1State done) {
            CarryLedger ledger{std::move(done.carries), std::move(done.lift),
                               !done.unit_at.has_value(), std::move(done.trace)};
            report.solutions.push_back(PadicInt::from_digits(0, std::move(done.x)));
            report.ledgers.push_back(std::move(ledger));
        });
        if (report.solutions.empty())
            report.rejected_reason = "every branch of the lifting chain dies on a consistency level";
    }
    detail::sort_solutions(report);
    return report;
}

// Replays the governing recurrence on known digits, re-deriving every carry
// by exact division and checking every congruence. Used to audit returned
// solutions and to attach ledgers to search results.
inline CarryLedger derive_ledger(const CaseLabel& label, const std::vector<Digit>& digits,
                                 const PadicInt& a, const PadicInt& b, std::size_t n) {
    if (digits.size() != n) throw std::invalid_argument("digit count does not match precision");
    auto c = detail::make_coeffs(a, b);
    switch (label.tag) {
        case CaseTag::CaseI:
            return detail::unit_case_core(c, 0, detail::plain_targets(c, n), digits[0], n, &digits).second;
        case CaseTag::CaseII:
            return detail::unit_case_core(c, 0,
                                          detail::shifted_targets(c, static_cast<std::size_t>(label.m), n),
                                          digits[0], n, &digits)
                .second;
        case CaseTag::CaseIII:
            return detail::unit_case_core(c, static_cast<std::size_t>(label.m),
                                          detail::plain_targets(c, n), digits[0], n, &digits)
                .second;
        case CaseTag::CaseIV:
            return detail::large_shift_core(c, static_cast<std::size_t>(label.m), digits[0], n, &digits)
                .second;
        case CaseTag::CaseA1: {
            auto st = detail::a1_prologue(c, &digits);
            if (st->lift[0].mod3() != 0)
                return detail::a1_unit_core(c, std::move(*st), n, &digits).second;
            std::optional<CarryLedger> out;
            detail::a1_descend(c, n, std::move(*st), &digits, [&](detail::A1State done) {
                out = CarryLedger{std::move(done.carries), std::move(done.lift),
                                  !done.unit_at.has_value(), std::move(done.trace)};
            });
            if (!out) throw CongruenceViolation("digits do not satisfy the chain congruences");
            return std::move(*out);
        }
        default: throw std::invalid_argument("not a solvable case");
    }
}

// ---------------------------------------------------------------------------
// generic digit search

// Depth-first search over digit prefixes of the residual form: a prefix
// survives while the scaled residual 3^s (x^3 + a x - b) keeps the valuation
// a true solution's prefix must reach. Search depth and the final certified
// level are chosen per case so the survivor set, truncated to N digits,
// coincides with the theorem engine's.
inline SolveReport digit_dfs(const PadicInt& a, const PadicInt& b, std::size_t n) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("zero coefficient unsupported");
    const long long ga = a.valuation(), gb = b.valuation();
    const CaseLabel label = classify(ga, gb);
    if (!solvable(label.tag)) throw std::invalid_argument("not a solvable case");

    const long long s = std::max<long long>({0, -ga, -gb});
    std::size_t depth = n;        // digits explored
    long long certified = 0;      // required valuation of the scaled residual at full depth
    bool deep = false;            // thresholds run one ahead of the depth
    switch (label.tag) {
        case CaseTag::CaseI:
        case CaseTag::CaseII:
        case CaseTag::CaseIII: certified = static_cast<long long>(n); break;
        case CaseTag::CaseIV: certified = static_cast<long long>(n) + 1; deep = true; break;
        default: depth = 2 * n - 1; certified = 2 * static_cast<long long>(n); deep = true; break;
    }

    const std::size_t w = static_cast<std::size_t>(certified) + 4;
    if (a.precision() < w || b.precision() < w)
        throw std::invalid_argument("coefficients need more known digits for this search");
    const PadicInt a_s = a.truncated(w).shifted(s);
    const PadicInt b_s = b.truncated(w).shifted(s);

    std::vector<std::vector<Digit>> survivors;
    std::vector<Digit> prefix;
    prefix.reserve(depth);

    auto residual_ok = [&](long long threshold) {
        std::vector<Digit> padded = prefix;
        padded.resize(w, Digit(0));
        BigInt value(0);
        for (std::size_t i = prefix.size(); i-- > 0;)
            value = value * BigInt(3) + BigInt(static_cast<long long>(prefix[i].value()));
        PadicInt xp = PadicInt::from_digits(0, std::move(padded), Rational(value, BigInt(1)));
        PadicInt res = sub(add(cube(xp).shifted(s), mul(a_s, xp)), b_s);
        return res.is_zero() || res.valuation() >= threshold;
    };

    auto descend = [&](auto&& self) -> void {
        const std::size_t d = prefix.size();
        if (d > 0) {
            long long threshold = static_cast<long long>(d) + (deep ? 1 : 0);
            if (d == depth) threshold = certified;
            if (!residual_ok(threshold)) return;
            if (d == depth) {
                survivors.emplace_back(prefix.begin(),
                                       prefix.begin() + static_cast<std::ptrdiff_t>(n));
                return;
            }
        }
        for (unsigned next = d == 0 ? 1 : 0; next < 3; ++next) {
            prefix.push_back(Digit(next));
            self(self);
            prefix.pop_back();
        }
    };
    descend(descend);

    std::sort(survivors.begin(), survivors.end());
    survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());

    SolveReport report;
    report.label = label;
    report.method = Method::Dfs;
    for (auto& digits : survivors) {
        report.ledgers.push_back(derive_ledger(label, digits, a, b, n));
        report.solutions.push_back(PadicInt::from_digits(0, std::move(digits)));
    }
    if (report.solutions.empty())
        report.rejected_reason = "no digit prefix survives the residual search to the required level";
    return report;
}

// ---------------------------------------------------------------------------
// front door

inline SolveReport solve(const Rational& a, const Rational& b, std::size_t n,
                         Method method = Method::Both) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("zero coefficient unsupported");
    if (n == 0) throw std::invalid_argument("precision must be positive");

    const long long ga = a.valuation3(), gb = b.valuation3();
    const CaseLabel label = classify(ga, gb);
    if (!solvable(label.tag)) {
        SolveReport report;
        report.label = label;
        report.method = method;
        report.rejected_reason = no_solution_reason(label.tag);
        return report;
    }

    const std::size_t w = 2 * n + 6;
    const PadicInt pa = PadicInt::from_rational(a, w);
    const PadicInt pb = PadicInt::from_rational(b, w);

    auto theorem = [&] {
        switch (label.tag) {
            case CaseTag::CaseI: return solve_case_I(pa, pb, n);
            case CaseTag::CaseII: return solve_case_II(pa, pb, n);
            case CaseTag::CaseIII: return solve_case_III(pa, pb, n);
            case CaseTag::CaseIV: return solve_case_IV(pa, pb, n);
            default: return solve_case_A1(pa, pb, n);
        }
    };

    SolveReport report;
    if (method == Method::Theorem) {
        report = theorem();
        report.method = Method::Theorem;
    } else if (method == Method::Dfs) {
        report = digit_dfs(pa, pb, n);
    } else {
        SolveReport lhs = theorem();
        SolveReport rhs = digit_dfs(pa, pb, n);
        bool same = lhs.solutions.size() == rhs.solutions.size();
        for (std::size_t i = 0; same && i < lhs.solutions.size(); ++i)
            same = lhs.solutions[i].digits() == rhs.solutions[i].digits();
        if (!same)
            throw EngineDisagreement("theorem and search engines returned different solution sets "
                                     "for a=" + a.to_string() + " b=" + b.to_string());
        report = std::move(lhs);
        report.method = Method::Both;
    }

    const long long s = std::max<long long>({0, -ga, -gb});
    for (const PadicInt& x : report.solutions) {
        oracle::ResidualNorm rn = oracle::verify(x, a, b);
        if (!rn.exact_zero && rn.exponent + s < static_cast<long long>(n))
            throw std::logic_error("returned solution fails its residual certification");
        report.residual_checks.push_back(rn);
    }
    return report;
}

}  // namespace triadic
