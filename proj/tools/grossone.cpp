// Command-line front end: lp solve | lp compare | nlp penalty | gross eval.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "grossone/cli.hpp"

namespace {

using grossone::cli::RunConfig;

void add_arith_flags(CLI::App* cmd, RunConfig& cfg) {
    static const std::map<std::string, grossone::DigitMode> arith_map{
        {"rational", grossone::DigitMode::exact_rational}, {"float", grossone::DigitMode::floating}};
    cmd->add_option("--trunc", cfg.truncation_order, "Series terms kept by division")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--arith", cfg.arith, "Digit arithmetic")->transform(CLI::CheckedTransformer(arith_map));
    cmd->add_option("--max-iter", cfg.max_iter, "Iteration limit");
}

void add_lp_flags(CLI::App* cmd, RunConfig& cfg) {
    static const std::map<std::string, grossone::lp::EnteringKind> entering_map{
        {"dantzig", grossone::lp::EnteringKind::dantzig},
        {"bland", grossone::lp::EnteringKind::bland},
        {"fixed", grossone::lp::EnteringKind::fixed_order}};
    static const std::map<std::string, grossone::lp::LeavingRule> leaving_map{
        {"plain", grossone::lp::LeavingRule::plain},
        {"grossone", grossone::lp::LeavingRule::grossone},
        {"lexicographic", grossone::lp::LeavingRule::lexicographic}};
    cmd->add_option("input", cfg.input, "LP instance file ('-' for stdin)")->required();
    cmd->add_option("--entering", cfg.entering, "Entering rule")->transform(CLI::CheckedTransformer(entering_map));
    cmd->add_option("--leaving", cfg.leaving, "Leaving rule")->transform(CLI::CheckedTransformer(leaving_map));
    cmd->add_option("--seed", cfg.seed, "Seed for the fixed entering order");
    add_arith_flags(cmd, cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grossone arithmetic, anti-cycling simplex and exact penalty solver"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* lp = app.add_subcommand("lp", "Linear programs in standard form");
    lp->require_subcommand(1);
    auto* lp_solve = lp->add_subcommand("solve", "Solve an LP with the selected pivot rules");
    add_lp_flags(lp_solve, cfg);
    lp_solve->add_flag("--trace", cfg.trace, "Print one line per pivot");
    auto* lp_compare = lp->add_subcommand("compare", "Compare grossone and lexicographic pivot sequences");
    add_lp_flags(lp_compare, cfg);

    auto* nlp = app.add_subcommand("nlp", "Nonlinear programs");
    nlp->require_subcommand(1);
    auto* nlp_penalty = nlp->add_subcommand("penalty", "Grossone exact penalty and KKT certificate");
    nlp_penalty->add_option("input", cfg.input, "NLP problem file ('-' for stdin)")->required();
    add_arith_flags(nlp_penalty, cfg);

    auto* gross = app.add_subcommand("gross", "Gross-number arithmetic");
    gross->require_subcommand(1);
    auto* gross_eval = gross->add_subcommand("eval", "Evaluate an expression such as \"G / (1 + 4*G)\"");
    gross_eval->add_option("expression", cfg.expression, "Expression over G and rationals")->required();
    add_arith_flags(gross_eval, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return grossone::cli::exit_code::usage;
    }

    if (lp_solve->parsed()) return grossone::cli::cmd_lp_solve(cfg, std::cout, std::cerr);
    if (lp_compare->parsed()) return grossone::cli::cmd_lp_compare(cfg, std::cout, std::cerr);
    if (nlp_penalty->parsed()) return grossone::cli::cmd_nlp_penalty(cfg, std::cout, std::cerr);
    if (gross_eval->parsed()) return grossone::cli::cmd_gross_eval(cfg, std::cout, std::cerr);
    return grossone::cli::exit_code::usage;
}
