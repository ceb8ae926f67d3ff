#include <gtest/gtest.h>

#include <random>

#include "grossone/grossone.hpp"
#include "support/instances.hpp"

using namespace grossone;
using namespace grossone::nlp;
using testsupport::equality_example;
using testsupport::inequality_example;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

Rational squared_distance(const RationalVector& a, const RationalVector& b) {
    Rational d(0);
    for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
    return d;
}

} // namespace

TEST(PenaltyGradient, EqualityExampleSystem) {
    const auto p = equality_example();
    GrossVector x{GrossNumber(R(1, 2)), GrossNumber(R(1, 3))};
    const auto g = penalty_gradient(p, x);
    // x1 + G (x1 + x2 - 1), x2/3 + G (x1 + x2 - 1)
    EXPECT_EQ(g[0], parse_gross("1/2 - 1/6G"));
    EXPECT_EQ(g[1], parse_gross("1/9 - 1/6G"));
}

TEST(PenaltyGradient, InequalityActiveBelowOne) {
    const auto p = inequality_example();
    EXPECT_EQ(penalty_gradient(p, GrossVector{GrossNumber(R(1, 2))})[0], parse_gross("1 - 1/2G"));
    EXPECT_EQ(penalty_gradient(p, GrossVector{GrossNumber(R(2))})[0], GrossNumber(1));
    // activity follows the full gross sign: 1 - x = G^-1 > 0 counts as active
    EXPECT_EQ(penalty_gradient(p, GrossVector{parse_gross("1 - G^-1")})[0], GrossNumber(0));
}

TEST(PenaltyGradient, ZeroAtFeasibleStationary) {
    const auto p = parse_nlp("n 2\nf: x1^2 + x2^2\nh: x1 - x2\n");
    const auto g = penalty_gradient(p, GrossVector(2));
    EXPECT_TRUE(g[0].is_zero() && g[1].is_zero());
}

TEST(StationarySolve, EqualityExampleSeries) {
    const auto x = stationary_solve(equality_example());
    EXPECT_EQ(x[0].coefficient(0), R(1, 4));
    EXPECT_EQ(x[0].coefficient(-1), R(-1, 16));
    EXPECT_EQ(x[0].coefficient(-2), R(1, 64));
    EXPECT_EQ(x[1].coefficient(0), R(3, 4));
    EXPECT_EQ(x[1].coefficient(-1), R(-3, 16));
    EXPECT_EQ(x[1].coefficient(-2), R(3, 64));
}

TEST(StationarySolve, InequalityExampleExact) {
    const auto x = stationary_solve(inequality_example());
    EXPECT_EQ(x[0], parse_gross("1 - G^-1"));
}

TEST(StationarySolve, Unconstrained) {
    const auto p = parse_nlp("n 3\nf: 1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2\n");
    PenaltyConfig cfg;
    cfg.start = {5, -2, R(1, 3)};
    const auto x = stationary_solve(p, cfg);
    for (const auto& e : x) EXPECT_TRUE(e.is_zero());
    const auto cert = extract_certificate(p, x);
    EXPECT_TRUE(cert.mu.empty());
    EXPECT_TRUE(cert.pi.empty());
    EXPECT_TRUE(verify_kkt(p, cert).pass);
}

TEST(StationarySolve, InactiveInequalityGivesZeroMultiplier) {
    const auto p = parse_nlp("n 1\nf: 1/2*x1^2\ng: x1 - 5\n");
    const auto x = stationary_solve(p);
    const auto cert = extract_certificate(p, x);
    EXPECT_EQ(cert.x0, (RationalVector{0}));
    EXPECT_EQ(cert.mu, (RationalVector{0}));
    EXPECT_TRUE(verify_kkt(p, cert).pass);
}

TEST(StationarySolve, OneStepExactForQuadratics) {
    // one Newton step: after it every gradient coefficient at powers >= -K+1 vanishes.
    // The inequality starts where it is active, so the first Jacobian already has the right active set.
    for (const auto& p : {equality_example(), inequality_example()}) {
        PenaltyConfig cfg;
        cfg.newton_max_iter = 1;
        cfg.start = RationalVector(p.n, p.n == 2 ? R(2) : R(-3));
        const auto x = stationary_solve(p, cfg);
        const auto g = penalty_gradient(p, x, cfg.arith);
        for (const auto& e : g)
            if (!e.is_zero()) {
                EXPECT_LE(*e.leading_power(), -cfg.arith.truncation_order);
            }
    }
}

TEST(StationarySolve, DivergenceReported) {
    // x^4 - x^2 has no gross stationary point reachable in two steps from 1/3
    const auto p = parse_nlp("n 1\nf: x1^4 - x1^2\n");
    PenaltyConfig cfg;
    cfg.start = {R(1, 3)};
    cfg.newton_max_iter = 2;
    EXPECT_THROW(stationary_solve(p, cfg), newton_divergence);
}

TEST(StationarySolve, SingularJacobianReported) {
    const auto p = parse_nlp("n 1\nf: x1^3 + x1\n");
    EXPECT_THROW(stationary_solve(p), singular_matrix);
}

TEST(StationarySolve, NonlinearConverges) {
    const auto p = parse_nlp("n 1\nf: 1/4*x1^4 - x1\n");  // stationary at x = 1
    PenaltyConfig cfg;
    cfg.start = {2};
    cfg.newton_max_iter = 50;
    cfg.newton_tol = R(1, 1000000000);
    const auto x = stationary_solve(p, cfg);
    EXPECT_LT(abs(x[0].finite_part() - 1), R(1, 1000000));
}

TEST(Certificate, EqualityExample) {
    const auto p = equality_example();
    const auto cert = extract_certificate(p, stationary_solve(p));
    EXPECT_EQ(cert.x0, (RationalVector{R(1, 4), R(3, 4)}));
    EXPECT_EQ(cert.pi, (RationalVector{R(-1, 4)}));
    EXPECT_TRUE(cert.mu.empty());
    EXPECT_TRUE(verify_kkt(p, cert, 0).pass);
}

TEST(Certificate, InequalityExample) {
    const auto p = inequality_example();
    const auto cert = extract_certificate(p, stationary_solve(p));
    EXPECT_EQ(cert.x0, (RationalVector{1}));
    EXPECT_EQ(cert.mu, (RationalVector{1}));
    EXPECT_TRUE(verify_kkt(p, cert, 0).pass);
}

TEST(Certificate, PositiveFinitePartRejected) {
    const auto p = inequality_example();
    EXPECT_THROW(extract_certificate(p, GrossVector{GrossNumber(R(1, 2))}), positivity_violation);
}

TEST(Certificate, InfiniteComponentRejected) {
    EXPECT_THROW(extract_certificate(inequality_example(), GrossVector{parse_gross("G")}), error);
}

TEST(Certificate, PerturbedPointFails) {
    const auto p = equality_example();
    auto cert = extract_certificate(p, stationary_solve(p));
    cert.x0[0] += R(1, 10);
    const auto rep = verify_kkt(p, cert, 0);
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.stationarity_ok);
    EXPECT_FALSE(rep.feasibility_h_ok);
    EXPECT_GT(rep.residuals.stationarity, 0);
    EXPECT_GT(rep.residuals.feasibility_h, 0);
}

TEST(Certificate, NegativeMultiplierFailsDualFeasibility) {
    const auto p = inequality_example();
    auto cert = extract_certificate(p, stationary_solve(p));
    cert.mu[0] = -1;
    const auto rep = verify_kkt(p, cert);
    EXPECT_FALSE(rep.dual_feasibility_ok);
    EXPECT_FALSE(rep.pass);
}

TEST(Certificate, ShapeChecked) {
    EXPECT_THROW(kkt_residuals(equality_example(), {1}, {}, {0}), shape_mismatch);
}

TEST(ConstraintQualification, Examples) {
    EXPECT_TRUE(check_constraint_qualification(equality_example(), {R(1, 4), R(3, 4)}).holds);
    const auto ineq = check_constraint_qualification(inequality_example(), {1});
    EXPECT_TRUE(ineq.holds);
    EXPECT_EQ(ineq.counted_g, (std::vector<std::size_t>{0}));
    const auto dup = parse_nlp("n 2\nf: x1^2\nh: x1 + x2 - 1\nh: x1 + x2 - 1\n");
    const auto rep = check_constraint_qualification(dup, {R(1, 4), R(3, 4)});
    EXPECT_FALSE(rep.holds);
    EXPECT_EQ(rep.rank, 1u);
    EXPECT_EQ(rep.size, 2u);
    // strictly satisfied inequalities are not counted
    EXPECT_EQ(check_constraint_qualification(inequality_example(), {2}).size, 0u);
}

TEST(Baseline, FirstMinimizer) {
    const auto pts = sequential_penalty_baseline(equality_example(), {R(1, 100)});
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].x, (RationalVector{R(100, 401), R(300, 401)}));
    EXPECT_EQ(pts[0].phi, R(1, 401 * 401));
}

TEST(Baseline, MonotoneSequences) {
    const std::vector<Rational> eps{R(1, 100), R(1, 10000), R(1, 1000000)};
    for (const auto& p : {equality_example(), inequality_example()}) {
        const auto pts = sequential_penalty_baseline(p, eps);
        ASSERT_EQ(pts.size(), 3u);
        const RationalVector target = p.n == 2 ? RationalVector{R(1, 4), R(3, 4)} : RationalVector{1};
        for (std::size_t k = 1; k < pts.size(); ++k) {
            EXPECT_LE(pts[k].phi, pts[k - 1].phi);
            EXPECT_GE(pts[k].f, pts[k - 1].f);
            EXPECT_GE(pts[k].penalty, pts[k - 1].penalty);
            EXPECT_LT(squared_distance(pts[k].x, target), squared_distance(pts[k - 1].x, target));
        }
    }
}

TEST(Baseline, RejectsBadSequence) {
    EXPECT_THROW(sequential_penalty_baseline(equality_example(), {R(1, 100), R(1, 10)}), error);
    EXPECT_THROW(sequential_penalty_baseline(equality_example(), {R(0)}), error);
}

// ---- randomized properties ----

TEST(PenaltyProperty, MultiplierIdentityOnFeasibleSeries) {
    std::mt19937_64 rng(51);
    const auto h = parse_expr("x1^2 + x2 - 1", 2);
    for (int i = 0; i < 50; ++i) {
        // x0 on h = 0, arbitrary infinitesimal tail
        const Rational a = make_rational(std::uniform_int_distribution<int>(-9, 9)(rng), 4);
        GrossVector x{GrossNumber::make({{0, a}, {-1, testsupport::small_int(rng, -5, 5)},
                                         {-2, testsupport::small_int(rng, -5, 5)}}),
                      GrossNumber::make({{0, 1 - a * a}, {-1, testsupport::small_int(rng, -5, 5)}})};
        const auto v = eval_gross(h, x);
        ASSERT_EQ(v.finite_part(), 0);
        EXPECT_EQ(v.coefficient(-1), (grossone_power(1) * v).finite_part());
    }
}

TEST(PenaltyProperty, CertificateSoundOnRandomConvexQuadratics) {
    std::mt19937_64 rng(61);
    int verified = 0;
    for (int i = 0; i < 25; ++i) {
        // f = sum d_k x_k^2 / 2 + q_k x_k, one affine equality, one affine inequality
        std::string f, h = "0", g = "0";
        for (int k = 1; k <= 3; ++k) {
            const auto d = testsupport::small_int(rng, 1, 4);
            const auto q = testsupport::small_int(rng, -3, 3);
            f += (k > 1 ? " + " : "") + to_string(d) + "/2*x" + std::to_string(k) + "^2 + (" + to_string(q) +
                 ")*x" + std::to_string(k);
            h += " + (" + to_string(testsupport::small_int(rng, -2, 2)) + ")*x" + std::to_string(k);
            g += " + (" + to_string(testsupport::small_int(rng, -2, 2)) + ")*x" + std::to_string(k);
        }
        h += " - 1";
        g += " + 1";
        const auto p = parse_nlp("n 3\nf: " + f + "\ng: " + g + "\nh: " + h + "\n");
        KktCertificate cert;
        try {
            cert = extract_certificate(p, stationary_solve(p));
        } catch (const error&) {
            continue;  // constant-zero constraint rows can make the problem degenerate
        }
        if (!check_constraint_qualification(p, cert.x0).holds) continue;
        EXPECT_TRUE(verify_kkt(p, cert, 0).pass) << "f: " << f << " g: " << g << " h: " << h;
        ++verified;
    }
    EXPECT_GE(verified, 10);
}

TEST(StationarySolve, IrrationalStationaryPointStopsOnDigitBudget) {
    // f' = x^2 - 2 has the irrational root sqrt(2)
    const auto p = parse_nlp("n 1\nf: 1/3*x1^3 - 2*x1\n");
    PenaltyConfig cfg;
    cfg.start = {1};
    cfg.newton_max_iter = 1000;
    EXPECT_THROW(stationary_solve(p, cfg), newton_divergence);
}
