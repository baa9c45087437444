#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include <triadic/oracle.hpp>
#include <triadic/solver.hpp>

using namespace triadic;

namespace {

std::vector<unsigned> digit_values(const PadicInt& x) {
    std::vector<unsigned> out;
    for (const Digit& d : x.digits()) out.push_back(d.value());
    return out;
}

std::vector<std::vector<unsigned>> solution_digits(const SolveReport& r) {
    std::vector<std::vector<unsigned>> out;
    for (const auto& s : r.solutions) out.push_back(digit_values(s));
    return out;
}

long long pow3(std::size_t e) {
    long long v = 1;
    while (e--) v *= 3;
    return v;
}

long long residue_of(const PadicInt& x, std::size_t n) {
    long long v = 0;
    for (std::size_t i = std::min(n, x.precision()); i-- > 0;) v = v * 3 + x.digit(i).value();
    return v;
}

// Residues mod 3^n of the solver's solutions, for comparison with the oracle.
std::set<long long> solver_residues(const SolveReport& r, std::size_t n) {
    std::set<long long> out;
    for (const auto& s : r.solutions) out.insert(residue_of(s, n));
    return out;
}

std::set<long long> stabilized(const Rational& a, const Rational& b, std::size_t n) {
    auto low = oracle::enumerate_viable(a, b, n);
    auto high = oracle::enumerate_viable(a, b, n + 2);
    std::set<long long> out;
    long long mod = pow3(n);
    for (long long r : low.residues)
        for (long long h : high.residues)
            if (h % mod == r) { out.insert(r); break; }
    return out;
}

}  // namespace

TEST_CASE("classification covers the valuation plane") {
    CHECK(classify(0, -1).tag == CaseTag::NoSol1);
    CHECK(classify(1, 2).tag == CaseTag::NoSol2);
    CHECK(classify(1, -1).tag == CaseTag::NoSol3);
    CHECK(classify(-1, 0).tag == CaseTag::NoSol4);
    CHECK(classify(-1, 1).tag == CaseTag::NoSol5);
    CHECK(classify(-1, -2).tag == CaseTag::NoSolUnequalNeg);
    CHECK(classify(0, 0).tag == CaseTag::CaseI);
    CHECK(classify(0, 3).tag == CaseTag::CaseII);
    CHECK(classify(0, 3).m == 3);
    CHECK(classify(-3, -3).tag == CaseTag::CaseIII);
    CHECK(classify(-3, -3).m == 3);
    CHECK(classify(2, 0).tag == CaseTag::CaseIV);
    CHECK(classify(2, 0).m == 2);
    CHECK(classify(1, 0).tag == CaseTag::CaseA1);

    // exactly one label per pair over a grid
    for (long long ga = -4; ga <= 4; ++ga)
        for (long long gb = -4; gb <= 4; ++gb) CHECK(to_string(classify(ga, gb)) != "?");
}

TEST_CASE("unit coefficient, unit target") {
    SolveReport r = solve(Rational(1), Rational(2), 4, Method::Both);
    CHECK(r.label.tag == CaseTag::CaseI);
    REQUIRE(r.solutions.size() == 1);
    CHECK(digit_values(r.solutions[0]) == std::vector<unsigned>{1, 0, 0, 0});
    CHECK(stabilized(Rational(1), Rational(2), 4) == solver_residues(r, 4));

    SolveReport r2 = solve(Rational(1), Rational(1), 2, Method::Both);
    REQUIRE(r2.solutions.size() == 1);
    CHECK(digit_values(r2.solutions[0]) == std::vector<unsigned>{2, 0});

    SolveReport r3 = solve(Rational(4), Rational(2), 2, Method::Both);
    REQUIRE(r3.solutions.size() == 1);
    CHECK(digit_values(r3.solutions[0]) == std::vector<unsigned>{1, 2});  // 7: 343 + 28 = 2 mod 9

    SolveReport r4 = solve(Rational(2), Rational(1), 4, Method::Both);
    CHECK(r4.solutions.empty());
    CHECK(r4.rejected_reason.has_value());
    CHECK(oracle::enumerate_viable(Rational(2), Rational(1), 6).residues.empty());
}

TEST_CASE("unit coefficient, divisible target") {
    SolveReport r = solve(Rational(2), Rational(3), 6, Method::Both);
    CHECK(r.label.tag == CaseTag::CaseII);
    REQUIRE(r.solutions.size() == 2);  // x^3 + 2x - 3 = (x - 1)(x^2 + x + 3)
    CHECK(digit_values(r.solutions[0]) == std::vector<unsigned>{1, 0, 0, 0, 0, 0});
    CHECK(r.solutions[1].digit(0).value() == 2);
    CHECK(stabilized(Rational(2), Rational(3), 6) == solver_residues(r, 6));

    SolveReport r2 = solve(Rational(2), Rational(6), 2, Method::Both);
    std::set<long long> res = solver_residues(r2, 2);
    CHECK(res.count(7) == 1);  // 343 + 14 = 6 mod 9

    SolveReport r3 = solve(Rational(1), Rational(3), 4, Method::Both);
    CHECK(r3.solutions.empty());
    CHECK(oracle::enumerate_viable(Rational(1), Rational(3), 6).residues.empty());
}

TEST_CASE("matching negative valuations") {
    SolveReport r = solve(Rational(1, 3), Rational(4, 3), 4, Method::Both);
    CHECK(r.label.tag == CaseTag::CaseIII);
    CHECK(r.label.m == 1);
    REQUIRE(r.solutions.size() == 1);
    CHECK(digit_values(r.solutions[0]) == std::vector<unsigned>{1, 0, 0, 0});  // x = 1 exactly

    SolveReport r2 = solve(Rational(2, 3), Rational(2, 3), 2, Method::Both);
    REQUIRE(r2.solutions.size() == 1);
    CHECK(digit_values(r2.solutions[0]) == std::vector<unsigned>{1, 1});
    CHECK(stabilized(Rational(2, 3), Rational(2, 3), 2) == solver_residues(r2, 2));

    SolveReport r3 = solve(Rational(1, 3), Rational(1, 3), 2, Method::Both);
    REQUIRE(r3.solutions.size() == 1);
    CHECK(digit_values(r3.solutions[0]) == std::vector<unsigned>{1, 2});

    // deeper shift still yields exactly one solution
    SolveReport r4 = solve(Rational(5, 27), Rational(7, 27), 5, Method::Both);
    CHECK(r4.label.m == 3);
    CHECK(r4.solutions.size() == 1);
}

TEST_CASE("coefficient valuation at least two") {
    SolveReport r = solve(Rational(9), Rational(1), 2, Method::Both);
    CHECK(r.label.tag == CaseTag::CaseIV);
    REQUIRE(r.solutions.size() == 1);
    CHECK(digit_values(r.solutions[0]) == std::vector<unsigned>{1, 2});  // x = 7 mod 9

    SolveReport r2 = solve(Rational(27), Rational(8), 3, Method::Both);
    REQUIRE(r2.solutions.size() == 1);
    CHECK(digit_values(r2.solutions[0]) == std::vector<unsigned>{2, 0, 1});  // x = 11 mod 27

    SolveReport r3 = solve(Rational(9), Rational(2), 3, Method::Both);
    CHECK(r3.solutions.empty());
    CHECK(r3.rejected_reason.value().find("cube non-residue") != std::string::npos);
    CHECK(oracle::enumerate_viable(Rational(9), Rational(2), 6).residues.empty());
}

TEST_CASE("coefficient valuation exactly one") {
    SolveReport r = solve(Rational(3), Rational(4), 4, Method::Both);
    CHECK(r.label.tag == CaseTag::CaseA1);
    REQUIRE(r.solutions.size() == 1);
    CHECK(digit_values(r.solutions[0]) == std::vector<unsigned>{1, 0, 0, 0});
    REQUIRE(r.ledgers[0].lift_coefficients.size() >= 1);
    CHECK(r.ledgers[0].lift_coefficients[0].to_ll() == 2);  // unit chain head
    CHECK(!r.ledgers[0].lift_chain_open);

    SolveReport r2 = solve(Rational(3), Rational(2), 4, Method::Both);
    CHECK(r2.solutions.empty());
    CHECK(oracle::enumerate_viable(Rational(3), Rational(2), 6).residues.empty());

    SolveReport r3 = solve(Rational(6), Rational(7), 4, Method::Both);
    REQUIRE(r3.solutions.size() == 1);
    CHECK(digit_values(r3.solutions[0]) == std::vector<unsigned>{1, 0, 0, 0});
    CHECK(r3.ledgers[0].lift_coefficients[0].to_ll() == 3);  // chain head divisible once
    CHECK(r3.ledgers[0].lift_coefficients[1].to_ll() == 1);
}

TEST_CASE("repeated root keeps its chain open") {
    // x^3 - 3x - 2 = (x + 1)^2 (x - 2): unit roots -1 (double) and 2
    SolveReport r = solve(Rational(-3), Rational(2), 5, Method::Both);
    REQUIRE(r.solutions.size() == 2);
    CHECK(digit_values(r.solutions[0]) == std::vector<unsigned>{2, 0, 0, 0, 0});  // 2
    CHECK(digit_values(r.solutions[1]) == std::vector<unsigned>{2, 2, 2, 2, 2});  // -1
    CHECK(!r.ledgers[0].lift_chain_open);
    CHECK(r.ledgers[1].lift_chain_open);  // derivative vanishes at the double root
}

TEST_CASE("search engine alone matches the recurrences") {
    const std::size_t n = 5;
    const std::size_t w = 2 * n + 6;
    auto run_both_ways = [&](const Rational& a, const Rational& b) {
        PadicInt pa = PadicInt::from_rational(a, w);
        PadicInt pb = PadicInt::from_rational(b, w);
        SolveReport dfs = digit_dfs(pa, pb, n);
        SolveReport thm = solve(a, b, n, Method::Theorem);
        CHECK(solution_digits(dfs) == solution_digits(thm));
    };
    run_both_ways(Rational(1), Rational(2));
    run_both_ways(Rational(2), Rational(3));
    run_both_ways(Rational(1, 3), Rational(4, 3));
    run_both_ways(Rational(9), Rational(1));
    run_both_ways(Rational(27), Rational(8));
    run_both_ways(Rational(3), Rational(4));
    run_both_ways(Rational(6), Rational(7));
    run_both_ways(Rational(-3), Rational(2));
}

TEST_CASE("search engine preconditions and empty outcomes") {
    const std::size_t w = 18;
    // not a solvable pair
    CHECK_THROWS_AS(digit_dfs(PadicInt::from_rational(Rational(1), w),
                              PadicInt::from_rational(Rational(1, 3), w), 4),
                    std::invalid_argument);
    // solvable pair, empty survivor set
    SolveReport r = digit_dfs(PadicInt::from_rational(Rational(9), w),
                              PadicInt::from_rational(Rational(2), w), 3);
    CHECK(r.solutions.empty());
    CHECK(r.rejected_reason.has_value());
    // coefficients too shallow for the required certification depth
    CHECK_THROWS_AS(digit_dfs(PadicInt::from_rational(Rational(1), 3),
                              PadicInt::from_rational(Rational(2), 3), 4),
                    std::invalid_argument);
}

TEST_CASE("returned solutions carry certified residuals") {
    auto scaled_exponent = [](const Rational& a, const Rational& b, std::size_t n) {
        SolveReport r = solve(a, b, n, Method::Both);
        REQUIRE(!r.solutions.empty());
        const long long s = std::max<long long>({0, -a.valuation3(), -b.valuation3()});
        long long worst = 1 << 20;
        for (const auto& rn : r.residual_checks)
            if (!rn.exact_zero) worst = std::min(worst, rn.exponent + s);
        return worst;
    };
    CHECK(scaled_exponent(Rational(4), Rational(2), 8) >= 8);
    CHECK(scaled_exponent(Rational(2), Rational(6), 8) >= 8);
    // the unscaled residual of a matching-negative instance loses exactly m digits
    SolveReport r = solve(Rational(5, 27), Rational(7, 27), 6, Method::Both);
    REQUIRE(r.solutions.size() == 1);
    CHECK(!r.residual_checks[0].exact_zero);
    CHECK(r.residual_checks[0].exponent >= 6 - 3);
    CHECK(scaled_exponent(Rational(5, 27), Rational(7, 27), 6) >= 6);
}

TEST_CASE("solve dispatches no-solution classifications") {
    SolveReport r = solve(Rational(1), Rational(1, 3), 4, Method::Both);
    CHECK(r.label.tag == CaseTag::NoSol1);
    CHECK(r.solutions.empty());
    CHECK(r.rejected_reason.has_value());

    CHECK(solve(Rational(1, 3), Rational(1, 9), 4, Method::Both).label.tag ==
          CaseTag::NoSolUnequalNeg);
    CHECK_THROWS_AS(solve(Rational(0), Rational(1), 4, Method::Both), std::invalid_argument);
    CHECK_THROWS_AS(solve(Rational(1), Rational(0), 4, Method::Both), std::invalid_argument);
}

TEST_CASE("case solvers reject mismatched valuations") {
    PadicInt a = PadicInt::from_rational(Rational(3), 16);
    PadicInt b = PadicInt::from_rational(Rational(2), 16);
    CHECK_THROWS_AS(solve_case_I(a, b, 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_case_II(a, b, 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_case_III(a, b, 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_case_IV(a, b, 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_case_A1(b, a, 4), std::invalid_argument);
}

TEST_CASE("ledgers replay exactly") {
    auto audit = [&](const Rational& a, const Rational& b, std::size_t n) {
        SolveReport r = solve(a, b, n, Method::Both);
        const std::size_t w = 2 * n + 6;
        PadicInt pa = PadicInt::from_rational(a, w);
        PadicInt pb = PadicInt::from_rational(b, w);
        for (std::size_t i = 0; i < r.solutions.size(); ++i) {
            CarryLedger replayed = derive_ledger(r.label, r.solutions[i].digits(), pa, pb, n);
            CHECK(replayed.carries == r.ledgers[i].carries);
            CHECK(replayed.lift_coefficients == r.ledgers[i].lift_coefficients);
            CHECK(replayed.lift_chain_open == r.ledgers[i].lift_chain_open);
        }
        return r;
    };
    audit(Rational(1), Rational(2), 6);
    audit(Rational(2), Rational(3), 6);
    audit(Rational(1, 3), Rational(4, 3), 6);
    audit(Rational(9), Rational(1), 5);
    audit(Rational(3), Rational(4), 6);
    audit(Rational(6), Rational(7), 6);
    audit(Rational(-3), Rational(2), 5);

    // a wrong digit string is rejected by the replay
    SolveReport r = solve(Rational(1), Rational(2), 4, Method::Both);
    std::vector<Digit> tampered = r.solutions[0].digits();
    tampered[2] = Digit((tampered[2].value() + 1) % 3);
    PadicInt pa = PadicInt::from_rational(Rational(1), 14);
    PadicInt pb = PadicInt::from_rational(Rational(2), 14);
    CHECK_THROWS_AS(derive_ledger(r.label, tampered, pa, pb, 4), CongruenceViolation);
}

TEST_CASE("monotone refinement") {
    auto truncations_contained = [&](const Rational& a, const Rational& b, std::size_t big,
                                     std::size_t small) {
        SolveReport rb = solve(a, b, big, Method::Both);
        SolveReport rs = solve(a, b, small, Method::Both);
        for (const auto& sol : rb.solutions) {
            std::set<long long> small_res = solver_residues(rs, small);
            CHECK(small_res.count(residue_of(sol, small)) == 1);
        }
    };
    truncations_contained(Rational(1), Rational(2), 8, 4);
    truncations_contained(Rational(2), Rational(3), 8, 3);
    truncations_contained(Rational(6), Rational(7), 6, 2);
    truncations_contained(Rational(-3), Rational(2), 7, 3);
}

TEST_CASE("every matching-negative instance has exactly one solution") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long long> unit(1, 2000);
    for (int i = 0; i < 60; ++i) {
        long long m = 1 + static_cast<long long>(i % 3);
        long long na = unit(rng), nb = unit(rng);
        while (na % 3 == 0) ++na;
        while (nb % 3 == 0) ++nb;
        Rational a(BigInt(na), BigInt(pow3(static_cast<std::size_t>(m))));
        Rational b(BigInt(nb), BigInt(pow3(static_cast<std::size_t>(m))));
        SolveReport r = solve(a, b, 5, Method::Both);
        CHECK(r.label.tag == CaseTag::CaseIII);
        CHECK(r.solutions.size() == 1);
    }
}

TEST_CASE("root count never exceeds the degree") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long long> coeff(-80, 80);
    int solvable_seen = 0;
    for (int i = 0; i < 400; ++i) {
        long long av = coeff(rng), bv = coeff(rng);
        if (av == 0 || bv == 0) continue;
        SolveReport r = solve(Rational(av), Rational(bv), 6, Method::Both);
        CHECK(r.solutions.size() <= 3);
        if (!r.solutions.empty()) ++solvable_seen;
    }
    CHECK(solvable_seen > 50);
}
