#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include <triadic/format.hpp>
#include <triadic/oracle.hpp>
#include <triadic/padic.hpp>
#include <triadic/solver.hpp>

namespace triadic::cli {

/*
 * Command front end. Exit codes: 0 success (including a proven no-solution),
 * 1 input error, 2 engine disagreement under method "both".
 *
 * JSON output is schema-stable: every verb emits the same key set, with
 * empty arrays / nulls where a field does not apply.
 */

enum class Verb { Solve, Expand, Classify, Verify, Oracle };

struct Command {
    Verb verb = Verb::Solve;
    std::optional<std::string> a, b, x;
    std::size_t precision = 12;
    Method method = Method::Both;
    bool json = false;
};

namespace detail {

inline nlohmann::json empty_payload(const char* verb, std::size_t precision) {
    return {
        {"verb", verb},
        {"precision", precision},
        {"case", nullptr},
        {"method", nullptr},
        {"reason", nullptr},
        {"solutions", nlohmann::json::array()},
        {"ledgers", nlohmann::json::array()},
        {"verification", nlohmann::json::array()},
        {"result", nullptr},
        {"residues", nlohmann::json::array()},
        {"modulus_exponent", nullptr},
    };
}

inline nlohmann::json ledger_json(const CarryLedger& ledger) {
    nlohmann::json carries = nlohmann::json::array();
    for (const BigInt& m : ledger.carries) carries.push_back(m.to_string());
    nlohmann::json lifts = nlohmann::json::array();
    for (const BigInt& a : ledger.lift_coefficients) lifts.push_back(a.to_string());
    nlohmann::json trace = nlohmann::json::array();
    for (const TraceRow& row : ledger.trace) {
        trace.push_back({{"level", row.level},
                         {"lhs", row.lhs.to_string()},
                         {"target", row.target.value()},
                         {"chosen", row.pins_digit ? nlohmann::json(row.chosen.value())
                                                   : nlohmann::json(nullptr)}});
    }
    return {{"carries", carries},
            {"lift_coefficients", lifts},
            {"lift_chain_open", ledger.lift_chain_open},
            {"trace", trace}};
}

inline nlohmann::json verification_json(const oracle::ResidualNorm& rn) {
    return {{"exact_zero", rn.exact_zero},
            {"exponent", rn.exact_zero ? nlohmann::json(nullptr) : nlohmann::json(rn.exponent)}};
}

inline std::string value_mod_3n(const PadicInt& x) {
    BigInt acc(0);
    for (std::size_t i = x.precision(); i-- > 0;)
        acc = acc * BigInt(3) + BigInt(static_cast<long long>(x.digit(i).value()));
    return acc.to_string();
}

inline Rational rational_arg(const std::optional<std::string>& s, const char* name) {
    if (!s) throw std::invalid_argument(std::string("missing required operand --") + name);
    return parse_rational(*s);
}

}  // namespace detail

inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (cmd.precision < 1) throw std::invalid_argument("precision must be at least 1");
        switch (cmd.verb) {
            case Verb::Solve: {
                Rational a = detail::rational_arg(cmd.a, "a");
                Rational b = detail::rational_arg(cmd.b, "b");
                SolveReport report = solve(a, b, cmd.precision, cmd.method);
                nlohmann::json payload = detail::empty_payload("solve", cmd.precision);
                payload["case"] = to_string(report.label);
                payload["method"] = to_string(report.method);
                if (report.rejected_reason) payload["reason"] = *report.rejected_reason;
                for (std::size_t i = 0; i < report.solutions.size(); ++i) {
                    const PadicInt& sol = report.solutions[i];
                    nlohmann::json digits = nlohmann::json::array();
                    for (const Digit& d : sol.digits()) digits.push_back(d.value());
                    payload["solutions"].push_back({{"repr", render_digits(sol)},
                                                    {"valuation", sol.valuation()},
                                                    {"digits", digits},
                                                    {"value_mod_3N", detail::value_mod_3n(sol)}});
                    payload["ledgers"].push_back(detail::ledger_json(report.ledgers[i]));
                    payload["verification"].push_back(
                        detail::verification_json(report.residual_checks[i]));
                }
                if (cmd.json) {
                    out << payload.dump(2) << "\n";
                } else {
                    out << "case: " << to_string(report.label) << "\n";
                    if (report.solutions.empty()) {
                        out << "no solution in the 3-adic units";
                        if (report.rejected_reason) out << ": " << *report.rejected_reason;
                        out << "\n";
                    }
                    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
                        out << "solution: " << render_digits(report.solutions[i]) << "  = "
                            << detail::value_mod_3n(report.solutions[i]) << " (mod 3^"
                            << cmd.precision << ")";
                        if (report.ledgers[i].lift_chain_open) out << "  [A-chain open]";
                        out << "\n";
                    }
                }
                return 0;
            }
            case Verb::Classify: {
                Rational a = detail::rational_arg(cmd.a, "a");
                Rational b = detail::rational_arg(cmd.b, "b");
                if (a.is_zero() || b.is_zero())
                    throw std::invalid_argument("zero coefficient unsupported");
                CaseLabel label = classify(a.valuation3(), b.valuation3());
                nlohmann::json payload = detail::empty_payload("classify", cmd.precision);
                payload["case"] = to_string(label);
                if (!solvable(label.tag)) payload["reason"] = no_solution_reason(label.tag);
                if (cmd.json) {
                    out << payload.dump(2) << "\n";
                } else {
                    out << to_string(label);
                    if (!solvable(label.tag)) out << ": " << no_solution_reason(label.tag);
                    out << "\n";
                }
                return 0;
            }
            case Verb::Expand: {
                if (!cmd.x) throw std::invalid_argument("missing required operand --x");
                Rational r = parse_rational(*cmd.x);
                PadicInt expanded = PadicInt::from_rational(r, cmd.precision);
                nlohmann::json payload = detail::empty_payload("expand", cmd.precision);
                payload["result"] = render_digits(expanded);
                if (cmd.json) out << payload.dump(2) << "\n";
                else out << render_digits(expanded) << "\n";
                return 0;
            }
            case Verb::Verify: {
                if (!cmd.x) throw std::invalid_argument("missing required operand --x");
                Rational a = detail::rational_arg(cmd.a, "a");
                Rational b = detail::rational_arg(cmd.b, "b");
                PadicInt x = cmd.x->rfind("v:", 0) == 0
                                 ? parse_digits(*cmd.x)
                                 : PadicInt::from_rational(parse_rational(*cmd.x), cmd.precision);
                oracle::ResidualNorm rn = oracle::verify(x, a, b);
                nlohmann::json payload = detail::empty_payload("verify", cmd.precision);
                payload["verification"].push_back(detail::verification_json(rn));
                payload["result"] = rn.exact_zero ? std::string("exact-zero")
                                                  : "norm <= 3^-" + std::to_string(rn.exponent);
                if (cmd.json) out << payload.dump(2) << "\n";
                else out << payload["result"].get<std::string>() << "\n";
                return 0;
            }
            case Verb::Oracle: {
                Rational a = detail::rational_arg(cmd.a, "a");
                Rational b = detail::rational_arg(cmd.b, "b");
                oracle::ViableSet viable = oracle::enumerate_viable(a, b, cmd.precision);
                nlohmann::json payload = detail::empty_payload("oracle", cmd.precision);
                payload["modulus_exponent"] = viable.modulus_exponent;
                for (long long r : viable.residues) payload["residues"].push_back(r);
                if (cmd.json) {
                    out << payload.dump(2) << "\n";
                } else {
                    out << "viable residues mod 3^" << viable.modulus_exponent << ":";
                    for (long long r : viable.residues) out << " " << r;
                    out << "\n";
                }
                return 0;
            }
        }
        return 1;
    } catch (const EngineDisagreement& e) {
        err << "engine disagreement: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace triadic::cli
