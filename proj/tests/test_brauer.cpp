#include <gtest/gtest.h>

#include "charp/brauer.hpp"
#include "charp/random.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace charp;
using testutil::rf;

TEST(SymbolAlgebra, IsCentralSimpleOfDegreeP)
{
    for (int p : {2, 3}) {
        auto A = build_symbol_algebra(rf("x1 + 1", p, 2), rf("x2", p, 2));
        EXPECT_EQ(A.dim(), static_cast<std::size_t>(p * p));
        auto r = verify_csa(A);
        EXPECT_TRUE(r.associative);
        EXPECT_TRUE(r.exhaustive);
        EXPECT_TRUE(r.relations_hold);
        EXPECT_EQ(r.center_dimension, 1);
        EXPECT_TRUE(r.ok());
    }
    EXPECT_ERRC(build_symbol_algebra(rf("x1", 2, 2), rf("0", 2, 2)), Errc::ZeroB);
}

TEST(SymbolAlgebra, GeneratorRelations)
{
    const int p = 3;
    RatFunc a = rf("x1", p, 2), b = rf("x2 + 1", p, 2);
    auto A = build_symbol_algebra(a, b);
    auto X = algebra_basis(A, A.generator(0, 0)), Y = algebra_basis(A, A.generator(0, 1));
    EXPECT_TRUE(algebra_is_zero(algebra_sub(algebra_sub(detail::power(A, X, p), X), algebra_scalar(A, a))));
    EXPECT_TRUE(algebra_is_zero(algebra_sub(detail::power(A, Y, p), algebra_scalar(A, b))));
    auto YX = algebra_mul(A, Y, X);
    auto XYpY = algebra_mul(A, X, Y);
    for (std::size_t i = 0; i < XYpY.size(); ++i)
        XYpY[i] += Y[i];
    EXPECT_TRUE(algebra_is_zero(algebra_sub(YX, XYpY)));
}

// Nrd restricted to F_p[X] with a = c constant is the field norm of
// F_p[t]/(t^p - t - c), computed here as a dense determinant.
TEST(ReducedNorm, MatchesDenseFieldNorm)
{
    for (int p : {2, 3}) {
        FieldDesc f(p, 1);
        for (int c = 0; c < p; ++c) {
            auto A = build_symbol_algebra(RatFunc::constant(f, c), RatFunc::var(f, 0));
            oracle::UPoly modulus(p + 1, 0);
            modulus[0] = oracle::md(-c, p);
            modulus[1] = oracle::md(-1, p);
            modulus[p] = 1;
            int total = 1;
            for (int i = 0; i < p; ++i)
                total *= p;
            for (int code = 1; code < total; ++code) {
                oracle::UPoly u(p);
                AlgebraElement z = algebra_scalar(A, RatFunc(f));
                int k = code;
                std::vector<std::uint8_t> e(2, 0);
                for (int i = 0; i < p; ++i, k /= p) {
                    u[i] = k % p;
                    e[0] = static_cast<std::uint8_t>(i);
                    z[A.index_of(e)] += RatFunc::constant(f, u[i]);
                }
                EXPECT_EQ(reduced_norm(z, A), RatFunc::constant(f, oracle::norm(u, modulus, p)))
                    << "p=" << p << " c=" << c << " code=" << code;
            }
        }
    }
}

TEST(ReducedNorm, Generators)
{
    auto A = build_symbol_algebra(rf("x1", 3, 2), rf("x2", 3, 2));
    EXPECT_EQ(reduced_norm(algebra_basis(A, A.generator(0, 0)), A), rf("x1", 3, 2));
    EXPECT_EQ(reduced_norm(algebra_basis(A, A.generator(0, 1)), A), rf("x2", 3, 2));
}

TEST(SplitTest, ConstantAgainstIrreducibility)
{
    for (int p : {2, 3, 5}) {
        FieldDesc f(p, 1);
        for (int c = 1; c < p; ++c) {
            oracle::UPoly modulus(p + 1, 0);
            modulus[0] = oracle::md(-c, p);
            modulus[1] = oracle::md(-1, p);
            modulus[p] = 1;
            ASSERT_TRUE(oracle::irreducible(modulus, p));
            auto v = split_test_norm(RatFunc::constant(f, c), RatFunc::var(f, 0), DVal{0}, 0);
            EXPECT_EQ(v.kind, SplitKind::NonSplit);
            ASSERT_TRUE(v.certificate);
            EXPECT_TRUE(check_nonsplit_certificate(RatFunc::constant(f, c), RatFunc::var(f, 0), *v.certificate));
        }
        auto v = split_test_norm(RatFunc(f), RatFunc::var(f, 0), DVal{0}, 0);
        EXPECT_EQ(v.kind, SplitKind::Split);
    }
}

// N(c - t) = c^p - c - a, so [a, c^p - c - a) always splits.
TEST(SplitTest, NormsSplit)
{
    for (int p : {2, 3}) {
        FieldDesc f(p, 2);
        RandomSource rs(1500 + p);
        for (int i = 0; i < 10; ++i) {
            RatFunc a = RatFunc(rs.nonzero_poly(f, 2, 2)), c = RatFunc(rs.nonzero_poly(f, 1, 2));
            RatFunc b = c.frobenius() - c - a;
            if (b.is_zero())
                continue;
            auto v = split_test_norm(a, b, DVal{0}, 1);
            ASSERT_EQ(v.kind, SplitKind::Split) << to_text(a) << ", " << to_text(b) << ": " << v.reason;
            EXPECT_TRUE(check_split_witness(a, b, v.witness));
        }
    }
}

TEST(SplitTest, PthPowerB)
{
    auto v = split_test_norm(rf("x1", 2, 2), rf("x2^2", 2, 2), DVal{0}, 0);
    EXPECT_EQ(v.kind, SplitKind::Split);
    EXPECT_ERRC(split_test_norm(rf("x1", 2, 2), rf("0", 2, 2), DVal{0}, 0), Errc::ZeroB);
}

TEST(Hensel, RootsSatisfyTheEquation)
{
    for (int p : {2, 3, 5, 7}) {
        const int prec = 24;
        LaurentModel a(p, prec);
        a.set(1, 1);
        a.set(4, static_cast<std::uint8_t>(p - 1));
        a.set(7, 2 % p);
        auto h = hensel_artin_schreier(a, prec);
        ASSERT_EQ(h.roots.size(), static_cast<std::size_t>(p));
        EXPECT_TRUE(h.residuals_vanish);
        EXPECT_TRUE(h.distinct_mod_t);
        for (const auto& r : h.roots) {
            std::vector<int> rc(prec), ac(prec);
            for (int e = 0; e < prec; ++e) {
                rc[e] = r.coeff(e);
                ac[e] = a.coeff(e);
            }
            std::vector<int> pw(prec, 0);
            pw[0] = 1;
            for (int k = 0; k < p; ++k)
                pw = oracle::series_mul(pw, rc, p, prec);
            for (int e = 0; e < prec; ++e)
                EXPECT_EQ(oracle::md(pw[e] - rc[e] - ac[e], p), 0) << "p=" << p << " e=" << e;
        }
    }
}

TEST(Hensel, ResidueMustSplit)
{
    EXPECT_ERRC(hensel_artin_schreier(LaurentModel::constant(3, 16, 1), 16), Errc::ResidueNotSplit);
    EXPECT_ERRC(hensel_artin_schreier(LaurentModel::monomial(3, 16, -1), 16), Errc::PreconditionViolated);
}

TEST(Dn, SmallCases)
{
    auto d1 = construct_Dn(1, 2);
    EXPECT_EQ(d1.algebra.dim(), 4u);
    EXPECT_TRUE(d1.csa.ok());
    EXPECT_EQ(d1.base_case.kind, SplitKind::NonSplit);
    EXPECT_TRUE(d1.hensel.residuals_vanish);

    auto d2 = construct_Dn(2, 2);
    EXPECT_EQ(d2.algebra.dim(), 16u);
    EXPECT_TRUE(d2.csa.ok());
    ASSERT_EQ(d2.unramified.size(), 1u);
    EXPECT_TRUE(d2.unramified[0].entries_are_units);
    EXPECT_TRUE(d2.unramified[0].extension_nonsplit);

    EXPECT_ERRC(construct_Dn(3, 3), Errc::UnsupportedN);
    EXPECT_ERRC(construct_Dn(0, 2), Errc::UnsupportedN);
}
