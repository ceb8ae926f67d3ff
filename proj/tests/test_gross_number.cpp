#include <gtest/gtest.h>

#include <random>

#include "grossone/grossone.hpp"
#include "support/instances.hpp"

using namespace grossone;
using testsupport::random_gross;
using testsupport::random_nonzero_gross;
using testsupport::sign_of;

namespace {

GrossNumber G(const char* text) { return parse_gross(text); }
Rational R(long p, long q = 1) { return make_rational(p, q); }

ArithConfig trunc(int k) {
    ArithConfig cfg;
    cfg.truncation_order = k;
    return cfg;
}

} // namespace

TEST(GrossNumber, MakeMergesAndDropsZeros) {
    auto g = GrossNumber::make({{1, R(1)}, {0, R(-1)}, {1, R(-1)}});
    EXPECT_EQ(format(g), "-1");
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g.terms()[0].power, 0);

    EXPECT_TRUE(GrossNumber::make({{3, R(2)}, {3, R(-2)}}).is_zero());
    EXPECT_EQ(GrossNumber::make({}), GrossNumber());
}

TEST(GrossNumber, MakeSortsDescending) {
    auto g = GrossNumber::make({{-2, R(1)}, {4, R(3)}, {0, R(5)}});
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g.terms()[0].power, 4);
    EXPECT_EQ(g.terms()[1].power, 0);
    EXPECT_EQ(g.terms()[2].power, -2);
    EXPECT_EQ(*g.leading_power(), 4);
    EXPECT_EQ(*g.trailing_power(), -2);
}

TEST(GrossNumber, AdditionCancelsInfiniteParts) {
    EXPECT_EQ(format(G("G + 1") + G("-G + 1")), "2");
    EXPECT_TRUE((G("G") - G("G")).is_zero());
    EXPECT_EQ(format(G("G^2 + 3") - G("3")), "G^2");
}

TEST(GrossNumber, MultiplicationCollectsPowers) {
    EXPECT_EQ(G("G^-1") * G("G"), GrossNumber(1));
    EXPECT_EQ(format(G("1 + G^-1") * G("1 - G^-1")), "1 - G^-2");
    EXPECT_EQ(format(G("2G + 3") * G("4G^-1")), "8 + 12G^-1");
    EXPECT_TRUE((G("G") * GrossNumber()).is_zero());
}

TEST(GrossNumber, DivisionByMonomialIsExact) {
    EXPECT_EQ(format(div(G("3G^2 + 1"), G("2G"), trunc(2))), "3/2G + 1/2G^-1");
    EXPECT_EQ(div(G("1"), G("G")), G("G^-1"));
}

TEST(GrossNumber, DivisionSeriesAtOrderThree) {
    EXPECT_EQ(format(div(G("G"), G("1 + 4G"), trunc(3))), "1/4 - 1/16G^-1 + 1/64G^-2");
}

TEST(GrossNumber, DivisionSeriesDefaultOrder) {
    const auto q = div(G("G"), G("1 + 4G"));
    EXPECT_EQ(q.size(), 8u);
    EXPECT_EQ(q.coefficient(0), R(1, 4));
    EXPECT_EQ(q.coefficient(-7), R(-1, 65536));
    EXPECT_EQ(*q.trailing_power(), -7);
}

TEST(GrossNumber, DivisionByZeroThrows) {
    EXPECT_THROW(div(G("1"), GrossNumber()), division_by_zero);
    EXPECT_THROW(div(GrossNumber(), GrossNumber()), division_by_zero);
    EXPECT_TRUE(div(GrossNumber(), G("G + 1")).is_zero());
}

TEST(GrossNumber, CompareByLeadingDifference) {
    EXPECT_GT(sign_of(cmp(G("1"), G("G^-1"))), 0);
    EXPECT_LT(sign_of(cmp(G("G^-1"), G("G^-2 + G^-1 + 0") + G("1/2"))), 0);
    EXPECT_LT(sign_of(cmp(G("-G^5"), G("-1000"))), 0);
    EXPECT_EQ(sign_of(cmp(G("2 + G^-3"), G("2 + G^-3"))), 0);
    EXPECT_GT(sign_of(cmp(G("G"), G("1000000"))), 0);
    EXPECT_TRUE(G("1 - G^-1") < G("1"));
    EXPECT_TRUE(G("-G^-4") < GrossNumber());
}

TEST(GrossNumber, FinitePartAndCoefficient) {
    const auto a = G("3G + 2 - 5G^-1");
    EXPECT_EQ(finite_part(a), R(2));
    EXPECT_EQ(coefficient(a, 1), R(3));
    EXPECT_EQ(coefficient(a, -1), R(-5));
    EXPECT_EQ(coefficient(a, 7), R(0));
    EXPECT_EQ(finite_part(G("G")), R(0));
}

TEST(GrossNumber, EvaluateAtSubstitutes) {
    EXPECT_EQ(evaluate_at(G("G - 1"), R(10)), R(9));
    EXPECT_EQ(evaluate_at(G("1/4 - 1/16G^-1"), R(2)), R(1, 4) - R(1, 32));
    EXPECT_EQ(evaluate_at(G("G^-2"), R(1, 3)), R(9));
    EXPECT_THROW(evaluate_at(G("G"), R(0)), error);
    EXPECT_THROW(evaluate_at(G("G"), R(-1)), error);
}

TEST(GrossNumber, PowAndGrossonePower) {
    EXPECT_EQ(pow(G("G + 1"), 2), G("G^2 + 2G + 1"));
    EXPECT_EQ(pow(G("G"), -3), grossone_power(-3));
    EXPECT_EQ(pow(G("5"), 0), GrossNumber(1));
    EXPECT_EQ(format(pow(G("1 + G^-1"), -1, trunc(3))), "1 - G^-1 + G^-2");
}

TEST(GrossNumber, FormatCanonical) {
    EXPECT_EQ(format(GrossNumber()), "0");
    EXPECT_EQ(format(G("G - 1")), "G - 1");
    EXPECT_EQ(format(G("-G")), "-G");
    EXPECT_EQ(format(G("1/4 - 1/16G^-1")), "1/4 - 1/16G^-1");
    EXPECT_EQ(format(G("2/4G^3")), "1/2G^3");
    EXPECT_EQ(format(G("G^1")), "G");
}

TEST(GrossNumber, ParseAcceptsCanonicalAndLooseForms) {
    EXPECT_EQ(G("1G^1 + -1G^0"), G("G - 1"));
    EXPECT_EQ(G("  3  "), GrossNumber(3));
    EXPECT_EQ(G("-G^-2"), GrossNumber::monomial(-2, R(-1)));
    EXPECT_EQ(G("G^+2"), grossone_power(2));
}

TEST(GrossNumber, ParseRejectsMalformed) {
    for (const char* bad : {"", "G^", "1/", "1//2", "abc", "G G", "1 +", "G^x", "1/0"})
        EXPECT_THROW(parse_gross(bad), parse_error) << bad;
}

TEST(GrossNumber, ParseErrorReportsPosition) {
    try {
        parse_gross("G + x");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(GrossNumber, FloatDigitsAgreeWithExact) {
    ArithConfig cfg;
    cfg.digit_mode = DigitMode::floating;
    cfg.float_zero_tol = 1e-12;
    const GrossFloat a = GrossFloat::make({{1, 1.0}});
    const GrossFloat b = GrossFloat::make({{1, 4.0}, {0, 1.0}});
    const auto q = div(a, b, cfg);
    EXPECT_DOUBLE_EQ(q.coefficient(0), 0.25);
    EXPECT_DOUBLE_EQ(q.coefficient(-1), -0.0625);
    EXPECT_DOUBLE_EQ(evaluate_at(GrossFloat::make({{1, 1.0}, {0, -1.0}}), 10.0), 9.0);
}

TEST(GrossNumber, FloatChopDropsNoise) {
    const auto a = GrossFloat::make({{0, 1.0}, {-1, 1e-15}});
    EXPECT_EQ(a.chopped(1e-12).size(), 1u);
}

TEST(GrossNumber, InvalidTruncationRejected) {
    EXPECT_THROW(div(G("1"), G("1 + G^-1"), trunc(0)), error);
}

// ---- randomized properties ----

TEST(GrossNumberProperty, FieldIdentities) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_gross(rng), b = random_gross(rng), c = random_gross(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + GrossNumber(), a);
        EXPECT_EQ(a * GrossNumber(1), a);
        EXPECT_TRUE((a + (-a)).is_zero());
    }
}

TEST(GrossNumberProperty, DivisionResidualBounded) {
    std::mt19937_64 rng(202);
    for (int K : {2, 8}) {
        for (int i = 0; i < 100; ++i) {
            const auto a = random_nonzero_gross(rng), b = random_nonzero_gross(rng);
            const auto r = a - div(a, b, trunc(K)) * b;
            if (b.size() == 1) {
                EXPECT_TRUE(r.is_zero());
            } else if (!r.is_zero()) {
                EXPECT_LE(*r.leading_power(), *a.leading_power() - K);
            }
        }
    }
}

TEST(GrossNumberProperty, OrderMatchesLargeSubstitution) {
    std::mt19937_64 rng(303);
    const Rational t(1000000000);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_gross(rng), b = random_gross(rng);
        EXPECT_EQ(sign_of(cmp(a, b)), sgn(evaluate_at(a - b, t)));
    }
}

TEST(GrossNumberProperty, TotalOrder) {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_gross(rng), b = random_gross(rng), c = random_gross(rng);
        EXPECT_EQ(sign_of(cmp(a, b)), -sign_of(cmp(b, a)));
        if (sign_of(cmp(a, b)) <= 0 && sign_of(cmp(b, c)) <= 0) {
            EXPECT_LE(sign_of(cmp(a, c)), 0);
        }
        if (sign_of(cmp(a, b)) < 0) {
            EXPECT_LT(sign_of(cmp(a + c, b + c)), 0);
        }
    }
}

TEST(GrossNumberProperty, NormalizationIdempotentAndFormatRoundTrips) {
    std::mt19937_64 rng(505);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_gross(rng, 6);
        std::vector<GrossNumber::Term> terms(a.terms().begin(), a.terms().end());
        EXPECT_EQ(GrossNumber::make(terms), a);
        EXPECT_EQ(parse_gross(format(a)), a);
        for (std::size_t k = 1; k < a.terms().size(); ++k) EXPECT_GT(a.terms()[k - 1].power, a.terms()[k].power);
    }
}

TEST(GrossNumber, ListedExamples) {
    EXPECT_EQ(GrossNumber::make({{0, R(1)}, {0, R(2)}}), GrossNumber(3));
    EXPECT_EQ(GrossNumber::make({{1, R(1)}, {-1, R(0)}}), grossone_power(1));
    EXPECT_EQ(format(GrossNumber::make({{-1, R(1, 4)}})), "1/4G^-1");
    EXPECT_EQ(G("2G + 3") + G("G - 3"), G("3G"));
    EXPECT_EQ(GrossNumber() + G("5G^-2"), G("5G^-2"));
    EXPECT_EQ(div(G("G"), G("G")), GrossNumber(1));
    EXPECT_EQ(div(G("6G + 2"), G("2")), G("3G + 1"));
    EXPECT_GT(sign_of(cmp(G("G"), G("1000000"))), 0);
    EXPECT_GT(sign_of(cmp(G("G^-1"), GrossNumber())), 0);
    EXPECT_EQ(finite_part(G("3G + 5 - 2G^-1")), R(5));
    EXPECT_EQ(finite_part(G("1 - G^-1")), R(1));
    EXPECT_EQ(coefficient(G("1 - G^-1"), -1), R(-1));
    EXPECT_EQ(coefficient(GrossNumber(), 3), R(0));
    EXPECT_EQ(coefficient(div(G("G"), G("1 + 4G")), -1), R(-1, 16));
    EXPECT_EQ(evaluate_at(G("G - 1"), R(1000)), R(999));
    EXPECT_EQ(evaluate_at(G("2G^-1"), R(4)), R(1, 2));
    EXPECT_EQ(G("3/4"), GrossNumber(R(3, 4)));
    EXPECT_EQ(pow(G("G"), 0), GrossNumber(1));
}
