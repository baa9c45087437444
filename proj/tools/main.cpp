#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <triadic/cli.hpp>

namespace {

struct CommonOpts {
    std::string a, b, x, format = "text", method = "both";
    std::size_t precision = 12;
};

void add_common(CLI::App* sub, CommonOpts& opts, bool wants_a, bool wants_b, bool wants_x) {
    if (wants_a) sub->add_option("--a", opts.a, "coefficient a, rational: [-]n[/m] or 3^k*[-]n[/m]")->required();
    if (wants_b) sub->add_option("--b", opts.b, "coefficient b, rational")->required();
    if (wants_x) sub->add_option("--x", opts.x, "value: rational, or digit string v:<val>;d:...")->required();
    sub->add_option("--precision", opts.precision, "number of unit digits (default 12)");
    sub->add_option("--format", opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

triadic::cli::Command build(triadic::cli::Verb verb, const CommonOpts& opts) {
    triadic::cli::Command cmd;
    cmd.verb = verb;
    if (!opts.a.empty()) cmd.a = opts.a;
    if (!opts.b.empty()) cmd.b = opts.b;
    if (!opts.x.empty()) cmd.x = opts.x;
    cmd.precision = opts.precision;
    cmd.json = opts.format == "json";
    cmd.method = opts.method == "theorem" ? triadic::Method::Theorem
                 : opts.method == "dfs"   ? triadic::Method::Dfs
                                          : triadic::Method::Both;
    return cmd;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 3-adic arithmetic and unit solutions of x^3 + a x = b"};
    app.require_subcommand(1);

    CommonOpts solve_opts, expand_opts, classify_opts, verify_opts, oracle_opts;

    CLI::App* solve = app.add_subcommand("solve", "find all unit solutions of x^3 + a x = b");
    add_common(solve, solve_opts, true, true, false);
    solve->add_option("--method", solve_opts.method, "theorem, dfs or both (default both)")
        ->check(CLI::IsMember({"theorem", "dfs", "both"}));

    CLI::App* expand = app.add_subcommand("expand", "3-adic digit expansion of a rational");
    add_common(expand, expand_opts, false, false, true);

    CLI::App* classify = app.add_subcommand("classify", "classify (gamma(a), gamma(b))");
    add_common(classify, classify_opts, true, true, false);

    CLI::App* verify = app.add_subcommand("verify", "certified residual norm of a candidate");
    add_common(verify, verify_opts, true, true, true);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force viable residues");
    add_common(oracle, oracle_opts, true, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    triadic::cli::Command cmd;
    if (solve->parsed()) cmd = build(triadic::cli::Verb::Solve, solve_opts);
    else if (expand->parsed()) cmd = build(triadic::cli::Verb::Expand, expand_opts);
    else if (classify->parsed()) cmd = build(triadic::cli::Verb::Classify, classify_opts);
    else if (verify->parsed()) cmd = build(triadic::cli::Verb::Verify, verify_opts);
    else cmd = build(triadic::cli::Verb::Oracle, oracle_opts);

    return triadic::cli::run(cmd, std::cout, std::cerr);
}
