#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/gross_eval.hpp"
#include "grossone/gross_number.hpp"
#include "grossone/lp_io.hpp"
#include "grossone/nlp_io.hpp"
#include "grossone/penalty.hpp"
#include "grossone/simplex.hpp"

namespace grossone::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int infeasible = 1;
inline constexpr int unbounded = 2;
inline constexpr int cycle_detected = 3;
inline constexpr int iteration_limit = 4;
inline constexpr int divergence = 5;
inline constexpr int not_verified = 6;
inline constexpr int usage = 64;
inline constexpr int parse = 65;
inline constexpr int software = 70;
} // namespace exit_code

/// Also used by `lp compare`, which exits 1 on divergence.
inline int status_exit_code(lp::SolveStatus s) {
    switch (s) {
        case lp::SolveStatus::optimal: return exit_code::ok;
        case lp::SolveStatus::infeasible: return exit_code::infeasible;
        case lp::SolveStatus::unbounded: return exit_code::unbounded;
        case lp::SolveStatus::cycle_detected: return exit_code::cycle_detected;
        case lp::SolveStatus::iteration_limit: return exit_code::iteration_limit;
    }
    return exit_code::usage;
}

struct RunConfig {
    std::string input;       // file path, "-" for stdin
    std::string expression;  // gross eval
    lp::EnteringKind entering = lp::EnteringKind::dantzig;
    lp::LeavingRule leaving = lp::LeavingRule::grossone;
    int truncation_order = 8;
    DigitMode arith = DigitMode::exact_rational;
    std::size_t max_iter = 10000;
    bool trace = false;
    std::uint64_t seed = 0;

    [[nodiscard]] ArithConfig arith_config() const {
        ArithConfig cfg;
        cfg.truncation_order = truncation_order;
        cfg.digit_mode = arith;
        cfg.float_zero_tol = arith == DigitMode::floating ? 1e-12 : 0.0;
        return cfg;
    }
};

/// fixed_order uses a permutation of the columns drawn from --seed.
inline lp::EnteringRule entering_rule(const RunConfig& cfg, std::size_t n) {
    switch (cfg.entering) {
        case lp::EnteringKind::dantzig: return lp::EnteringRule::dantzig();
        case lp::EnteringKind::bland: return lp::EnteringRule::bland();
        case lp::EnteringKind::fixed_order: {
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::mt19937_64 rng(cfg.seed);
            std::shuffle(order.begin(), order.end(), rng);
            return lp::EnteringRule::fixed(std::move(order));
        }
    }
    return lp::EnteringRule::dantzig();
}

namespace detail {

inline std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs `body`, mapping input and parse failures to exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const invalid_problem& e) {
        err << "invalid problem: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const shape_mismatch& e) {
        err << "invalid problem: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::software;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
}

} // namespace detail

inline int cmd_lp_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.arith != DigitMode::exact_rational) {
        err << "error: the simplex path runs in exact rational arithmetic only\n";
        return exit_code::usage;
    }
    return detail::guarded(err, [&] {
        const auto problem = lp::parse_lp(detail::read_input(cfg.input));
        const auto outcome =
            lp::solve(problem, entering_rule(cfg, problem.n()), cfg.leaving, cfg.max_iter, cfg.arith_config());
        if (cfg.trace) {
            for (const auto& e : outcome.phase1_trace.events) out << "phase1 " << lp::format_event(e) << "\n";
            for (const auto& e : outcome.trace.events) out << lp::format_event(e) << "\n";
        }
        out << "status: " << lp::to_string(outcome.status) << "\n";
        if (outcome.status == lp::SolveStatus::optimal) {
            out << "x = " << format_vector(outcome.x) << "\n";
            out << "value = " << to_string(outcome.value) << "\n";
        }
        out << "pivots = " << outcome.phase1_trace.events.size() + outcome.trace.events.size() << "\n";
        return status_exit_code(outcome.status);
    });
}

struct CompareResult {
    bool identical;
    std::size_t pivots;
    std::string report;
};

/// Runs the grossone and lexicographic leaving rules under the same entering rule
/// and compares both phases pivot by pivot.
inline CompareResult compare_leaving_rules(const lp::LpStandardForm& problem, const lp::EnteringRule& entering,
                                           std::size_t max_iter, const ArithConfig& arith) {
    const auto g = lp::solve(problem, entering, lp::LeavingRule::grossone, max_iter, arith);
    const auto x = lp::solve(problem, entering, lp::LeavingRule::lexicographic, max_iter, arith);

    auto flatten = [](const lp::SolveOutcome& o) {
        std::vector<std::pair<std::string, const lp::PivotEvent*>> all;
        for (const auto& e : o.phase1_trace.events) all.emplace_back("phase1 ", &e);
        for (const auto& e : o.trace.events) all.emplace_back("", &e);
        return all;
    };
    const auto ga = flatten(g);
    const auto xa = flatten(x);
    const std::size_t common = std::min(ga.size(), xa.size());
    for (std::size_t k = 0; k < common; ++k) {
        if (ga[k].first == xa[k].first && *ga[k].second == *xa[k].second) continue;
        return {false, k,
                "DIVERGED at pivot " + std::to_string(k + 1) + ": grossone " + ga[k].first +
                    lp::format_event(*ga[k].second) + " | lexicographic " + xa[k].first +
                    lp::format_event(*xa[k].second)};
    }
    if (ga.size() != xa.size() || g.status != x.status)
        return {false, common,
                "DIVERGED after " + std::to_string(common) + " pivots: grossone " + lp::to_string(g.status) + " (" +
                    std::to_string(ga.size()) + " pivots) | lexicographic " + lp::to_string(x.status) + " (" +
                    std::to_string(xa.size()) + " pivots)"};
    return {true, ga.size(), "IDENTICAL (" + std::to_string(ga.size()) + " pivots)"};
}

inline int cmd_lp_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.arith != DigitMode::exact_rational) {
        err << "error: the simplex path runs in exact rational arithmetic only\n";
        return exit_code::usage;
    }
    return detail::guarded(err, [&] {
        const auto problem = lp::parse_lp(detail::read_input(cfg.input));
        const auto result =
            compare_leaving_rules(problem, entering_rule(cfg, problem.n()), cfg.max_iter, cfg.arith_config());
        out << result.report << "\n";
        return result.identical ? exit_code::ok : 1;
    });
}

namespace detail {

template <class Digit>
int run_penalty(const nlp::NlpProblem& problem, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    nlp::PenaltyConfig pcfg;
    pcfg.arith = cfg.arith_config();
    pcfg.newton_max_iter = static_cast<int>(std::min<std::size_t>(cfg.max_iter, 1000));
    if constexpr (!digit_traits<Digit>::exact) pcfg.newton_tol = Rational(1, 1000000000);

    BasicGrossVector<Digit> xstar;
    try {
        xstar = nlp::stationary_solve<Digit>(problem, pcfg);
    } catch (const newton_divergence& e) {
        err << "divergence: " << e.what() << "\n";
        return exit_code::divergence;
    } catch (const singular_matrix& e) {
        err << "divergence: singular Newton matrix (" << e.what() << ")\n";
        return exit_code::divergence;
    }

    out << "stationary point (to G^-2):\n";
    for (std::size_t k = 0; k < xstar.size(); ++k)
        out << "  x" << k + 1 << " = " << format(xstar[k].truncated(-2)) << "\n";

    nlp::KktCertificate cert;
    try {
        cert = nlp::extract_certificate(problem, xstar, pcfg.arith);
    } catch (const positivity_violation& e) {
        err << "certificate: " << e.what() << "\n";
        out << "KKT NOT VERIFIED\n";
        return exit_code::not_verified;
    }
    out << "x0 = " << format_vector(cert.x0) << "\n";
    out << "mu = " << format_vector(cert.mu) << "\n";
    out << "pi = " << format_vector(cert.pi) << "\n";
    out << "mu_tail = " << format_vector(cert.mu_tail) << "\n";

    const Rational tol = digit_traits<Digit>::exact ? Rational(0) : Rational(1, 1000000);
    const auto report = nlp::verify_kkt(problem, cert, tol);
    out << "residual stationarity = " << to_string(report.residuals.stationarity) << "\n";
    out << "residual feasibility_h = " << to_string(report.residuals.feasibility_h) << "\n";
    out << "residual feasibility_g = " << to_string(report.residuals.feasibility_g) << "\n";
    out << "residual dual_feasibility = " << to_string(report.residuals.dual_feasibility) << "\n";
    out << "residual complementarity = " << to_string(report.residuals.complementarity) << "\n";

    const auto cq = nlp::check_constraint_qualification(problem, cert.x0);
    out << (cq.holds ? "CQ HOLDS" : "CQ FAILS") << " (rank " << cq.rank << " of " << cq.size << ")\n";
    out << (report.pass ? "KKT VERIFIED" : "KKT NOT VERIFIED") << "\n";
    return report.pass ? exit_code::ok : exit_code::not_verified;
}

} // namespace detail

inline int cmd_nlp_penalty(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        cfg.arith_config().validate();
        const auto problem = nlp::parse_nlp(detail::read_input(cfg.input));
        problem.validate();
        if (cfg.arith == DigitMode::floating) return detail::run_penalty<double>(problem, cfg, out, err);
        return detail::run_penalty<Rational>(problem, cfg, out, err);
    });
}

inline int cmd_gross_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto arith = cfg.arith_config();
        if (cfg.arith == DigitMode::floating)
            out << format(evaluate_gross_expression<double>(cfg.expression, arith)) << "\n";
        else
            out << format(evaluate_gross_expression<Rational>(cfg.expression, arith)) << "\n";
        return exit_code::ok;
    });
}

} // namespace grossone::cli
