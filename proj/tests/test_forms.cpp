#include <gtest/gtest.h>

#include "charp/forms.hpp"
#include "charp/random.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace charp;
using testutil::form;
using testutil::rf;

namespace {

DiffForm random_form(RandomSource& rs, const TowerDesc& t, int degree)
{
    DiffForm w(t, degree);
    const unsigned free = t.free_mask();
    for (unsigned s = 0; s <= free; ++s)
        if ((s & ~free) == 0 && std::popcount(s) == degree && rs.below(2))
            w.add_term(s, rs.ratfunc(t.field(), 2, 2));
    return w;
}

} // namespace

TEST(DiffForm, DlogOfProductsAndPowers)
{
    auto t = TowerDesc::absolute(FieldDesc(3, 2));
    RatFunc a = rf("x1 + x2", 3, 2), b = rf("x1*x2^2 + 1", 3, 2);
    EXPECT_EQ(DiffForm::dlog(t, a * b), DiffForm::dlog(t, a) + DiffForm::dlog(t, b));
    EXPECT_TRUE(DiffForm::dlog(t, a.pow(3)).is_zero());
    EXPECT_EQ(to_text(DiffForm::dlog(t, rf("x1*x2^2", 3, 2))), "dlog(x1) + 2*dlog(x2)");
    EXPECT_ERRC(DiffForm::dlog(t, RatFunc(t.field())), Errc::ZeroElement);
}

TEST(DiffForm, WedgeIsAlternating)
{
    auto w = form("dlog(x1)^dlog(x2)", 5, 3);
    EXPECT_EQ(form("dlog(x2)^dlog(x1)", 5, 3), -w);
    EXPECT_TRUE(form("dlog(x1 + x3)^dlog(x1 + x3)", 5, 3).is_zero());
    EXPECT_EQ(w.degree(), 2);
}

TEST(DiffForm, BaseIndicesAreDropped)
{
    auto w = form("dlog(x1*x2)", 2, 2, 0b10);
    EXPECT_EQ(to_text(w), "dlog(x1)");
    EXPECT_TRUE(form("dlog(x2)", 2, 2, 0b10).is_zero());
}

class FormIdentities : public ::testing::TestWithParam<int>
{
};

TEST_P(FormIdentities, DifferentialSquaresToZeroAndIsADerivation)
{
    const int p = GetParam();
    RandomSource rs(800 + p);
    for (unsigned base : {0u, 2u}) {
        auto t = TowerDesc::coordinate(FieldDesc(p, 3), base);
        for (int i = 0; i < 10; ++i) {
            DiffForm a = random_form(rs, t, 1), b = random_form(rs, t, 0);
            EXPECT_TRUE(differential(differential(a)).is_zero());
            EXPECT_TRUE(differential(differential(b)).is_zero());
            EXPECT_EQ(differential(wedge(b, a)), wedge(differential(b), a) + wedge(b, differential(a)));
        }
    }
}

TEST_P(FormIdentities, CartierInvertsGamma)
{
    const int p = GetParam();
    RandomSource rs(900 + p);
    auto t = TowerDesc::absolute(FieldDesc(p, 3));
    for (int deg = 0; deg <= 3; ++deg)
        for (int i = 0; i < 5; ++i) {
            DiffForm w = random_form(rs, t, deg);
            EXPECT_EQ(cartier(gamma(w)), w);
        }
}

TEST_P(FormIdentities, CartierKillsBoundaries)
{
    const int p = GetParam();
    RandomSource rs(1000 + p);
    auto t = TowerDesc::absolute(FieldDesc(p, 2));
    for (int i = 0; i < 10; ++i) {
        DiffForm eta = random_form(rs, t, 1);
        EXPECT_TRUE(cartier(differential(eta)).is_zero());
        auto r = is_boundary(differential(eta));
        ASSERT_TRUE(r.boundary);
        EXPECT_EQ(differential(*r.antiderivative), differential(eta));
    }
}

TEST_P(FormIdentities, DlogIsInNu)
{
    const int p = GetParam();
    RandomSource rs(1100 + p);
    auto t = TowerDesc::absolute(FieldDesc(p, 3));
    for (int i = 0; i < 8; ++i) {
        DiffForm w = wedge(DiffForm::dlog(t, rs.nonzero_ratfunc(t.field(), 2, 2)),
                           DiffForm::dlog(t, rs.nonzero_ratfunc(t.field(), 2, 2)));
        auto r = nu_member(w);
        EXPECT_TRUE(r.member) << to_text(w);
        EXPECT_EQ(differential(r.witness), gamma(w) - w);
    }
}

INSTANTIATE_TEST_SUITE_P(Primes, FormIdentities, ::testing::Values(2, 3, 5));

// One variable: a/D dx is exact iff the dense linear system for an
// antiderivative b/D' has a solution.
TEST(Boundary, UnivariateAgreesWithLinearAlgebra)
{
    for (int p : {2, 3, 5}) {
        FieldDesc f(p, 1);
        auto t = TowerDesc::absolute(f);
        RandomSource rs(1200 + p);
        int exact = 0, inexact = 0;
        for (int i = 0; i < 40; ++i) {
            oracle::UPoly a(4), D(3);
            for (auto& c : a)
                c = static_cast<int>(rs.below(p));
            for (auto& c : D)
                c = static_cast<int>(rs.below(p));
            D[2] = 1;
            if (i % 2 == 0) {
                // d(b/D) = (b'D - bD')/D^2 dx
                oracle::UPoly b = a;
                a = oracle::add(oracle::mul(oracle::derivative(b, p), D, p),
                                oracle::mul(b, oracle::derivative(D, p), p), p, -1);
                D = oracle::mul(D, D, p);
            }
            oracle::trim(a);
            RatFunc coeff = RatFunc::normalize(oracle::to_poly(a, f), oracle::to_poly(D, f)) * RatFunc::var(f, 0);
            DiffForm w(t, 1);
            w.add_term(1, coeff);
            bool expect = oracle::antiderivative(a, D, p).has_value();
            auto r = is_boundary(w);
            ASSERT_EQ(r.boundary, expect) << "p=" << p << " w=" << to_text(w);
            if (r.boundary) {
                EXPECT_EQ(differential(*r.antiderivative), w);
            }
            (expect ? exact : inexact)++;
        }
        EXPECT_GT(exact, 0);
        EXPECT_GT(inexact, 0);
    }
}

TEST(Cartier, RejectsNonCycles)
{
    EXPECT_ERRC(cartier(form("x1*dlog(x2)", 3, 2)), Errc::NotACycle);
}

TEST(Cartier, KnownValues)
{
    EXPECT_EQ(to_text(cartier(form("x1^3*dlog(x2)", 3, 2))), "x1*dlog(x2)");
    EXPECT_EQ(to_text(cartier(form("x1^2*dlog(x1)", 3, 2))), "0");
    EXPECT_EQ(to_text(cartier(form("x1^4*x2^2*dlog(x1)^dlog(x2)", 2, 2))), "x1^2*x2*dlog(x1)^dlog(x2)");
}

TEST(Nu, NonMemberWitness)
{
    auto r = nu_member(form("x1*dlog(x1)^dlog(x2)", 2, 2));
    EXPECT_FALSE(r.member);
    EXPECT_FALSE(r.witness.is_zero());
}

TEST(DlogSolve, SolvableAndUnsolvable)
{
    auto t = TowerDesc::coordinate(FieldDesc(3, 2), 0b10);
    DiffForm w = DiffForm::dlog(t, rf("x1^2 + x2", 3, 2));
    auto y = dlog_solve(w);
    ASSERT_TRUE(y);
    EXPECT_EQ(DiffForm::dlog(t, *y), w);
    DiffForm v(t, 1);
    v.add_term(1, rf("x1", 3, 2));
    EXPECT_FALSE(dlog_solve(v));
    EXPECT_ERRC(dlog_solve(DiffForm::dlog(TowerDesc::absolute(FieldDesc(3, 2)), rf("x1", 3, 2))), Errc::RankNotOne);
}
