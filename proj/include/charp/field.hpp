#ifndef CHARP_FIELD_HPP
#define CHARP_FIELD_HPP

#include <cstdint>
#include <string>

#include "error.hpp"

namespace charp {

inline constexpr int kMaxVars = 8;
inline constexpr std::uint32_t kDefaultExponentCap = 1u << 16;

constexpr bool is_supported_prime(int p) noexcept
{
    return p == 2 || p == 3 || p == 5 || p == 7;
}

// Describes k = F_p(x1..xn). Exponents of any stored monomial stay below
// exponent_cap; exceeding it raises ExponentOverflow instead of wrapping.
struct FieldDesc
{
    int p = 2;
    int nvars = 0;
    std::uint32_t exponent_cap = kDefaultExponentCap;

    FieldDesc() = default;
    FieldDesc(int prime, int vars, std::uint32_t cap = kDefaultExponentCap)
        : p(prime), nvars(vars), exponent_cap(cap)
    {
        if (!is_supported_prime(p))
            fail(Errc::UnsupportedPrime, "prime " + std::to_string(p) + " not in {2,3,5,7}");
        if (nvars < 0 || nvars > kMaxVars)
            fail(Errc::DimensionMismatch, "variable count " + std::to_string(nvars) + " outside 0.." +
                                              std::to_string(kMaxVars));
        if (cap == 0 || cap > kDefaultExponentCap)
            fail(Errc::ExponentOverflow, "exponent cap must lie in 1..2^16");
    }

    friend bool operator==(const FieldDesc& a, const FieldDesc& b) noexcept
    {
        return a.p == b.p && a.nvars == b.nvars;
    }
};

inline void require_same_field(const FieldDesc& a, const FieldDesc& b)
{
    if (!(a == b))
        fail(Errc::FieldMismatch, "GF(" + std::to_string(a.p) + ") with " + std::to_string(a.nvars) +
                                      " vars vs GF(" + std::to_string(b.p) + ") with " +
                                      std::to_string(b.nvars) + " vars");
}

namespace fp {

constexpr std::uint8_t reduce(long long v, int p) noexcept
{
    long long r = v % p;
    return static_cast<std::uint8_t>(r < 0 ? r + p : r);
}

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b, int p) noexcept
{
    int s = a + b;
    return static_cast<std::uint8_t>(s >= p ? s - p : s);
}

constexpr std::uint8_t sub(std::uint8_t a, std::uint8_t b, int p) noexcept
{
    int s = int(a) - int(b);
    return static_cast<std::uint8_t>(s < 0 ? s + p : s);
}

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b, int p) noexcept
{
    return static_cast<std::uint8_t>((int(a) * int(b)) % p);
}

constexpr std::uint8_t neg(std::uint8_t a, int p) noexcept
{
    return static_cast<std::uint8_t>(a == 0 ? 0 : p - a);
}

// a^(p-2) by Fermat; a must be nonzero.
constexpr std::uint8_t inv(std::uint8_t a, int p) noexcept
{
    std::uint8_t r = 1;
    for (int i = 0; i < p - 2; ++i)
        r = mul(r, a, p);
    return r;
}

} // namespace fp

// Element of the prime field. Frobenius is the identity on it.
class FpScalar
{
public:
    FpScalar(long long v, int p) : p_(p), v_(0)
    {
        if (!is_supported_prime(p))
            fail(Errc::UnsupportedPrime, "prime " + std::to_string(p));
        v_ = fp::reduce(v, p);
    }

    int prime() const noexcept { return p_; }
    std::uint8_t value() const noexcept { return v_; }
    bool is_zero() const noexcept { return v_ == 0; }

    FpScalar operator+(FpScalar o) const { check(o); return {fp::add(v_, o.v_, p_), p_}; }
    FpScalar operator-(FpScalar o) const { check(o); return {fp::sub(v_, o.v_, p_), p_}; }
    FpScalar operator*(FpScalar o) const { check(o); return {fp::mul(v_, o.v_, p_), p_}; }
    FpScalar operator-() const { return {fp::neg(v_, p_), p_}; }
    FpScalar inverse() const
    {
        if (v_ == 0)
            fail(Errc::DivisionByZero, "inverse of 0 in F_p");
        return {fp::inv(v_, p_), p_};
    }
    FpScalar operator/(FpScalar o) const { return *this * o.inverse(); }
    FpScalar frobenius() const { return *this; }

    friend bool operator==(FpScalar a, FpScalar b) noexcept { return a.p_ == b.p_ && a.v_ == b.v_; }

private:
    void check(FpScalar o) const
    {
        if (o.p_ != p_)
            fail(Errc::FieldMismatch, "F_p scalars of different characteristic");
    }

    int p_;
    std::uint8_t v_;
};

} // namespace charp

#endif
