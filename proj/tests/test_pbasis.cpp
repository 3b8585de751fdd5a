#include <gtest/gtest.h>

#include "charp/pbasis.hpp"
#include "charp/random.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace charp;
using testutil::rf;

TEST(PIndependence, Coordinates)
{
    EXPECT_TRUE(p_independent({rf("x1", 2, 3), rf("x2", 2, 3)}).independent);
    EXPECT_TRUE(p_independent({rf("x1 + x2^2", 2, 3), rf("x2", 2, 3), rf("x3", 2, 3)}).independent);
    EXPECT_FALSE(p_independent({rf("x1", 3, 2), rf("x1^2", 3, 2)}).independent);
    EXPECT_FALSE(p_independent({rf("x1^3*x2^3 + 1", 3, 2)}).independent);
    EXPECT_FALSE(p_independent({rf("x1", 2, 2), rf("x2", 2, 2), rf("x1*x2", 2, 2)}).independent);
}

TEST(PIndependence, CertificateIsTheWedge)
{
    auto r = p_independent({rf("x1*x2", 2, 2), rf("x2", 2, 2)});
    ASSERT_TRUE(r.independent);
    EXPECT_EQ(to_text(r.certificate), "dlog(x1)^dlog(x2)");
}

TEST(PIndependence, ZeroIsRejected)
{
    EXPECT_ERRC(p_independent({rf("0", 2, 2)}), Errc::ZeroElement);
    EXPECT_ERRC(p_independent({}), Errc::DimensionMismatch);
}

TEST(CompletePBasis, AppendsMissingCoordinates)
{
    PBasis b = complete_pbasis({rf("x2 + x3", 3, 3)});
    ASSERT_EQ(b.elems.size(), 3u);
    EXPECT_EQ(b.elems[0], rf("x2 + x3", 3, 3));
    EXPECT_EQ(b.elems[1], rf("x1", 3, 3));
    EXPECT_EQ(b.elems[2], rf("x2", 3, 3));
    EXPECT_TRUE(p_independent(b.elems).independent);
    EXPECT_ERRC(complete_pbasis({rf("x1", 3, 3), rf("x1^4", 3, 3)}), Errc::NotIndependent);
}

TEST(MonomialDecompose, ReconstructsRandomInputs)
{
    for (int p : {2, 3, 5}) {
        FieldDesc f(p, 3);
        RandomSource rs(500 + p);
        for (unsigned base : {0u, 1u, 5u}) {
            auto t = TowerDesc::coordinate(f, base);
            for (int i = 0; i < 15; ++i) {
                RatFunc c = rs.ratfunc(f, 3);
                auto d = monomial_decompose(c, t);
                EXPECT_EQ(reconstruct(d), c) << to_text(c);
                for (const auto& [mu, part] : d.parts) {
                    EXPECT_EQ(mu.size(), static_cast<std::size_t>(t.relative_rank()));
                    for (int v : t.free_indices())
                        EXPECT_TRUE(part.derivative(v).is_zero());
                }
            }
        }
    }
}

TEST(MonomialDecompose, NonCoordinateBasis)
{
    FieldDesc f(2, 2);
    PBasis b = complete_pbasis({rf("x1 + x2^2", 2, 2)});
    TowerDesc t{b, 0};
    for (auto s : {"x1", "x1*x2 + 1", "x2^3/(x1 + 1)"}) {
        RatFunc c = rf(s, 2, 2);
        EXPECT_EQ(reconstruct(monomial_decompose(c, t)), c) << s;
    }
}

// The rank-2 criterion never extracts a root; compare it with the exponent test.
class PPowerCriterion : public ::testing::TestWithParam<int>
{
};

TEST_P(PPowerCriterion, MatchesExponentTest)
{
    const int p = GetParam();
    FieldDesc f(p, 2);
    RatFunc a = rf("x1", p, 2), b = rf("x2 + x1^2", p, 2);
    RandomSource rs(600 + p);
    for (int i = 0; i < 40; ++i) {
        RatFunc c = rs.nonzero_ratfunc(f, 2, 2);
        if (i % 2)
            c = c.frobenius();
        EXPECT_EQ(ppower_by_criterion(c, a, b), oracle::is_pth_power(c)) << to_text(c);
    }
    EXPECT_TRUE(ppower_by_criterion(RatFunc(f), a, b));
    EXPECT_ERRC(ppower_by_criterion(a, a, a), Errc::NotIndependent);
    EXPECT_ERRC(ppower_by_criterion(rf("x1", p, 3), rf("x1", p, 3), rf("x2", p, 3)), Errc::RankMismatch);
}

INSTANTIATE_TEST_SUITE_P(Primes, PPowerCriterion, ::testing::Values(2, 3, 5));

// Every polynomial of degree <= 3 in F_2[x, y] against brute-force enumeration.
TEST(Sab, ExhaustiveCubicsOverF2)
{
    FieldDesc f(2, 2);
    std::vector<Monomial> monos;
    for (std::uint32_t i = 0; i <= 3; ++i)
        for (std::uint32_t j = 0; i + j <= 3; ++j)
            monos.push_back(mono_mul(Monomial::var(0, i), Monomial::var(1, j), kDefaultExponentCap));
    ASSERT_EQ(monos.size(), 10u);
    RatFunc x = rf("x", 2, 2), y = rf("y", 2, 2);
    int members = 0;
    for (unsigned code = 0; code < (1u << monos.size()); ++code) {
        std::vector<Term> ts;
        for (std::size_t k = 0; k < monos.size(); ++k)
            if (code & (1u << k))
                ts.push_back({monos[k], 1});
        Poly c = Poly::from_terms(f, ts);
        bool member = sab_test(RatFunc(c), x, y).member;
        ASSERT_EQ(member, oracle::sab_brute(c)) << to_text(c);
        members += member;
    }
    EXPECT_GT(members, 0);
}

TEST(Sab, NeedsIndependentPair)
{
    EXPECT_ERRC(sab_test(rf("x1", 2, 2), rf("x1", 2, 2), rf("x1^2", 2, 2)), Errc::NotIndependent);
}
