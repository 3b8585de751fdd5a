#include <gtest/gtest.h>

#include "charp/gcd.hpp"
#include "charp/random.hpp"
#include "util.hpp"

using namespace charp;

namespace {

Poly P(const std::string& s, int p = 2, int n = 3) { return testutil::poly(s, p, n); }

} // namespace

TEST(Poly, CanonicalOrderAndCombining)
{
    Poly a = P("x2 + x1^2 + x1*x2 + x1^2");
    EXPECT_EQ(to_text(a), "x1*x2 + x2");
    EXPECT_EQ(a.degree(), 2);
    EXPECT_EQ(a.lead().m, mono_mul(Monomial::var(0), Monomial::var(1), kDefaultExponentCap));
}

TEST(Poly, Multiplication)
{
    EXPECT_EQ(P("(x1 + x2)^2"), P("x1^2 + x2^2"));
    EXPECT_EQ(P("(x1 + 1)^3", 3), P("x1^3 + 1", 3));
    EXPECT_EQ(P("(x1 + x2)*(x1 - x2)", 5), P("x1^2 - x2^2", 5));
}

TEST(Poly, ExactDivision)
{
    Poly a = P("x1^3 + x2^3", 3), b = P("x1 + x2", 3);
    auto q = Poly::exact_div(a, b);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, P("x1^2 - x1*x2 + x2^2", 3));
    EXPECT_EQ(*q * b, a);
    EXPECT_FALSE(Poly::exact_div(P("x1^2 + 1", 3), P("x1 + x2", 3)));
}

TEST(Poly, FrobeniusAndRoot)
{
    Poly a = P("x1*x2 + x3 + 1", 3);
    Poly fa = a.frobenius();
    EXPECT_EQ(fa, a.pow(3));
    auto r = fa.pth_root();
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, a);
    EXPECT_FALSE(P("x1*x2^3", 3).pth_root());
}

TEST(Gcd, KnownCommonFactor)
{
    Poly g = gcd(P("x1^3 + x1*x2^2"), P("x1^2 + x2^2"));
    EXPECT_EQ(g, P("x1^2 + x2^2"));
    EXPECT_TRUE(gcd(P("x1 + 1"), P("x2 + 1")).is_one());
    EXPECT_EQ(gcd(P("0"), P("x1*x2 + x2")), P("x1*x2 + x2"));
}

TEST(Gcd, MonomialContent)
{
    EXPECT_EQ(gcd(P("x1^3*x2"), P("x1*x2^4 + x1^2*x2")), P("x1*x2"));
}

// Property check by construction: g*a and g*b share g, so the gcd must be a
// multiple of monic(g) dividing both inputs with coprime cofactors.
class GcdByConstruction : public ::testing::TestWithParam<int>
{
};

TEST_P(GcdByConstruction, RandomCommonFactor)
{
    const int p = GetParam();
    FieldDesc f(p, 3);
    RandomSource rs(40 + p);
    for (int i = 0; i < 40; ++i) {
        Poly g = rs.nonzero_poly(f, 2, 3), a = rs.nonzero_poly(f, 3, 3), b = rs.nonzero_poly(f, 3, 3);
        Poly u = g * a, v = g * b;
        Poly h = gcd(u, v);
        ASSERT_TRUE(Poly::exact_div(h, g.monic())) << to_text(h) << " vs " << to_text(g);
        auto qu = Poly::exact_div(u, h), qv = Poly::exact_div(v, h);
        ASSERT_TRUE(qu && qv);
        EXPECT_TRUE(gcd(*qu, *qv).is_one());
        EXPECT_EQ(h.lead().c, 1);
    }
}

INSTANTIATE_TEST_SUITE_P(Primes, GcdByConstruction, ::testing::Values(2, 3, 5));
