#include <gtest/gtest.h>

#include "charp/random.hpp"
#include "charp/valuation.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace charp;
using testutil::rf;

TEST(RatFunc, ReducesToLowestTerms)
{
    RatFunc a = rf("(x1^2 - 1)/(x1 - 1)", 3, 2);
    EXPECT_TRUE(a.is_polynomial());
    EXPECT_EQ(a, rf("x1 + 1", 3, 2));
    RatFunc b = rf("(2*x1*x2)/(2*x2^2 + x2)", 5, 2);
    EXPECT_EQ(b.den().lead().c, 1);
    EXPECT_EQ(to_text(b), "x1/(x2 + 3)");
}

TEST(RatFunc, ZeroDenominator)
{
    FieldDesc f(2, 2);
    EXPECT_ERRC(RatFunc::normalize(Poly::var(f, 0), Poly(f)), Errc::ZeroDenominator);
    EXPECT_ERRC(RatFunc(f).inverse(), Errc::DivisionByZero);
}

class RatFuncField : public ::testing::TestWithParam<int>
{
};

TEST_P(RatFuncField, Axioms)
{
    FieldDesc f(GetParam(), 3);
    RandomSource rs(100 + GetParam());
    for (int i = 0; i < 30; ++i) {
        RatFunc a = rs.nonzero_ratfunc(f, 2), b = rs.ratfunc(f, 2), c = rs.ratfunc(f, 2);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((b + c) - c, b);
        EXPECT_TRUE((a * a.inverse()).is_one());
        EXPECT_EQ((b / a) * a, b);
        EXPECT_EQ(a.frobenius(), a.pow(f.p));
        EXPECT_EQ(*a.frobenius().pth_root(), a);
    }
}

// Univariate quotient rule checked against dense arithmetic.
TEST_P(RatFuncField, DerivativeMatchesDenseQuotientRule)
{
    const int p = GetParam();
    FieldDesc f(p, 1);
    RandomSource rs(200 + p);
    for (int i = 0; i < 30; ++i) {
        oracle::UPoly n(4), d(4);
        for (auto& c : n)
            c = static_cast<int>(rs.below(p));
        for (auto& c : d)
            c = static_cast<int>(rs.below(p));
        d[3] = 1;
        oracle::trim(n);
        RatFunc a = RatFunc::normalize(oracle::to_poly(n, f), oracle::to_poly(d, f));
        oracle::UPoly top = oracle::add(oracle::mul(oracle::derivative(n, p), d, p),
                                        oracle::mul(n, oracle::derivative(d, p), p), p, -1);
        RatFunc expect = RatFunc::normalize(oracle::to_poly(top, f), oracle::to_poly(oracle::mul(d, d, p), f));
        EXPECT_EQ(a.derivative(0), expect) << to_text(a);
    }
}

TEST_P(RatFuncField, PthRootAgreesWithExponentTest)
{
    FieldDesc f(GetParam(), 2);
    RandomSource rs(300 + GetParam());
    int roots = 0;
    for (int i = 0; i < 60; ++i) {
        RatFunc a = rs.nonzero_ratfunc(f, 2, 2);
        RatFunc c = (i % 2) ? a.frobenius() : a;
        EXPECT_EQ(c.pth_root().has_value(), oracle::is_pth_power(c)) << to_text(c);
        roots += c.pth_root().has_value();
    }
    EXPECT_GE(roots, 30);
}

INSTANTIATE_TEST_SUITE_P(Primes, RatFuncField, ::testing::Values(2, 3, 5, 7));

TEST(Valuation, OrderAndResidue)
{
    RatFunc a = rf("x1^3*(x2 + 1)/(x1 + x2)", 3, 2);
    EXPECT_EQ(order_at(a, DVal{0}), 3);
    EXPECT_EQ(order_at(a, DVal{1}), 0);
    auto v = valuation(a, DVal{1});
    ASSERT_TRUE(v.residue);
    EXPECT_EQ(*v.residue, rf("x1^2", 3, 2));
    EXPECT_ERRC(order_at(RatFunc(a.field()), DVal{0}), Errc::ZeroInput);
    EXPECT_ERRC(residue_of(rf("1/x1", 3, 2), DVal{0}), Errc::PreconditionViolated);
    EXPECT_TRUE(residue_of(rf("x1*x2", 3, 2), DVal{0}).is_zero());
}

TEST(Valuation, MultiplicativeOnRandomInputs)
{
    FieldDesc f(5, 2);
    RandomSource rs(7);
    for (int i = 0; i < 30; ++i) {
        RatFunc a = rs.nonzero_ratfunc(f, 3), b = rs.nonzero_ratfunc(f, 3);
        EXPECT_EQ(order_at(a * b, DVal{0}), order_at(a, DVal{0}) + order_at(b, DVal{0}));
    }
}
