#include <gtest/gtest.h>

#include "charp/gfq.hpp"

using namespace charp;

TEST(FieldDesc, RejectsUnsupportedPrimes)
{
    for (int p : {0, 1, 4, 6, 9, 11}) {
        try {
            FieldDesc f(p, 2);
            FAIL() << "accepted p = " << p;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::UnsupportedPrime);
        }
    }
    for (int p : {2, 3, 5, 7})
        EXPECT_NO_THROW(FieldDesc(p, 3));
}

TEST(FieldDesc, RejectsTooManyVariables)
{
    try {
        FieldDesc f(2, kMaxVars + 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DimensionMismatch);
    }
}

TEST(FieldDesc, MismatchIsReported)
{
    try {
        require_same_field(FieldDesc(2, 2), FieldDesc(3, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::FieldMismatch);
        EXPECT_EQ(e.name(), "FieldMismatch");
    }
}

TEST(PrimeField, InverseTable)
{
    for (int p : {2, 3, 5, 7})
        for (int a = 1; a < p; ++a)
            EXPECT_EQ(fp::mul(static_cast<std::uint8_t>(a), fp::inv(static_cast<std::uint8_t>(a), p), p), 1)
                << "p=" << p << " a=" << a;
}

TEST(PrimeField, ReduceHandlesNegatives)
{
    EXPECT_EQ(fp::reduce(-1, 5), 4);
    EXPECT_EQ(fp::reduce(-10, 7), 4);
    EXPECT_EQ(fp::reduce(14, 7), 0);
}

TEST(FpScalar, Arithmetic)
{
    FpScalar a(3, 5), b(4, 5);
    EXPECT_EQ((a + b).value(), 2);
    EXPECT_EQ((a - b).value(), 4);
    EXPECT_EQ((a * b).value(), 2);
    EXPECT_EQ((a / b * b), a);
    EXPECT_EQ(a.frobenius(), a);
    EXPECT_THROW(FpScalar(0, 5).inverse(), Error);
    EXPECT_THROW(a + FpScalar(1, 3), Error);
}

class GFqAxioms : public ::testing::TestWithParam<int>
{
};

TEST_P(GFqAxioms, ExpLogAndInverse)
{
    const GFq& q = GFq::for_prime(GetParam());
    ASSERT_GT(q.order(), 1000u);
    for (std::uint32_t a = 1; a < q.order(); a += 97) {
        EXPECT_EQ(q.exp(q.log(a)), a);
        EXPECT_EQ(q.mul(a, q.inv(a)), 1u);
        EXPECT_EQ(q.sub(a, a), 0u);
    }
}

TEST_P(GFqAxioms, Distributive)
{
    const GFq& q = GFq::for_prime(GetParam());
    for (std::uint32_t a = 1; a < q.order(); a += 1013)
        for (std::uint32_t b = 0; b < q.order(); b += 2039) {
            std::uint32_t c = (a * 7 + b * 13) % q.order();
            EXPECT_EQ(q.mul(a, q.add(b, c)), q.add(q.mul(a, b), q.mul(a, c)));
        }
}

TEST_P(GFqAxioms, GeneratorHasFullOrder)
{
    const GFq& q = GFq::for_prime(GetParam());
    std::vector<bool> seen(q.order(), false);
    for (std::uint32_t e = 0; e < q.mult_order(); ++e) {
        std::uint32_t v = q.exp(e);
        ASSERT_FALSE(seen[v]) << "exp repeats at " << e;
        seen[v] = true;
    }
}

INSTANTIATE_TEST_SUITE_P(Primes, GFqAxioms, ::testing::Values(2, 3, 5, 7));
