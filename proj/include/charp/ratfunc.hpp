#ifndef CHARP_RATFUNC_HPP
#define CHARP_RATFUNC_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gcd.hpp"
#include "poly.hpp"

namespace charp {

// Element of F_p(x1..xn) as num/den with gcd(num, den) = 1 and den monic.
// Equal values have identical representations.
class RatFunc
{
public:
    RatFunc() = default;
    explicit RatFunc(const FieldDesc& f) : num_(f), den_(Poly::constant(f, 1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Poly::constant(p.field(), 1)) {}

    static RatFunc normalize(const Poly& num, const Poly& den)
    {
        require_same_field(num.field(), den.field());
        if (den.is_zero())
            fail(Errc::ZeroDenominator, "denominator is zero");
        if (num.is_zero())
            return RatFunc(num.field());
        Poly g = gcd(num, den);
        return from_coprime(g.is_one() ? num : Poly::div_exact(num, g), g.is_one() ? den : Poly::div_exact(den, g));
    }

    // num and den already coprime; only the leading coefficient is fixed.
    static RatFunc from_coprime(const Poly& num, const Poly& den)
    {
        RatFunc r;
        std::uint8_t lc = den.lead().c;
        if (lc == 1) {
            r.num_ = num;
            r.den_ = den;
        } else {
            std::uint8_t inv = fp::inv(lc, den.prime());
            r.num_ = num.scaled(inv);
            r.den_ = den.scaled(inv);
        }
        return r;
    }

    static RatFunc constant(const FieldDesc& f, long long c) { return RatFunc(Poly::constant(f, c)); }
    static RatFunc var(const FieldDesc& f, int i) { return RatFunc(Poly::var(f, i)); }

    const FieldDesc& field() const noexcept { return num_.field(); }
    int prime() const noexcept { return num_.prime(); }
    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }
    std::uint8_t constant_value() const noexcept { return num_.constant_term(); }
    unsigned vars_mask() const noexcept { return num_.vars_mask() | den_.vars_mask(); }

    RatFunc operator-() const
    {
        RatFunc r = *this;
        r.num_ = -num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b)
    {
        require_same_field(a.field(), b.field());
        if (a.is_zero() || b.is_zero())
            return RatFunc(a.field());
        if (a.den_.is_one() && b.den_.is_one())
            return RatFunc(a.num_ * b.num_);
        Poly g1 = gcd(a.num_, b.den_);
        Poly g2 = gcd(b.num_, a.den_);
        Poly n1 = g1.is_one() ? a.num_ : Poly::div_exact(a.num_, g1);
        Poly d2 = g1.is_one() ? b.den_ : Poly::div_exact(b.den_, g1);
        Poly n2 = g2.is_one() ? b.num_ : Poly::div_exact(b.num_, g2);
        Poly d1 = g2.is_one() ? a.den_ : Poly::div_exact(a.den_, g2);
        return from_coprime(n1 * n2, d1 * d2);
    }

    RatFunc inverse() const
    {
        if (is_zero())
            fail(Errc::DivisionByZero, "inverse of zero rational function");
        return from_coprime(den_, num_);
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b)
    {
        if (b.is_zero())
            fail(Errc::DivisionByZero, "division by zero rational function");
        return a * b.inverse();
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc scaled(std::uint8_t c) const
    {
        RatFunc r = *this;
        r.num_ = num_.scaled(c);
        if (r.num_.is_zero())
            r.den_ = Poly::constant(field(), 1);
        return r;
    }

    RatFunc pow(long long n) const
    {
        if (n < 0)
            return inverse().pow(-n);
        RatFunc r;
        r.num_ = num_.pow(static_cast<unsigned>(n));
        r.den_ = den_.pow(static_cast<unsigned>(n));
        return r;
    }

    RatFunc frobenius() const
    {
        RatFunc r;
        r.num_ = num_.frobenius();
        r.den_ = den_.frobenius();
        return r;
    }

    // The unique r with r^p = *this, when it exists in k.
    std::optional<RatFunc> pth_root() const
    {
        auto n = num_.pth_root();
        if (!n)
            return std::nullopt;
        auto d = den_.pth_root();
        if (!d)
            return std::nullopt;
        RatFunc r;
        r.num_ = std::move(*n);
        r.den_ = std::move(*d);
        return r;
    }

    // Partial derivative in x_v.
    RatFunc derivative(int v) const
    {
        if (den_.is_one())
            return RatFunc(num_.derivative(v));
        Poly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
        return normalize(n, den_ * den_);
    }

    // x_v * d/dx_v, the coefficient of dlog x_v in the differential.
    RatFunc log_derivative_coeff(int v) const
    {
        if (den_.is_one())
            return RatFunc(num_.derivative(v).mul_term(Monomial::var(v), 1));
        Poly n = (num_.derivative(v) * den_ - num_ * den_.derivative(v)).mul_term(Monomial::var(v), 1);
        return normalize(n, den_ * den_);
    }

    // Replaces x_i by subs[i] where present.
    RatFunc substitute(const std::vector<std::optional<RatFunc>>& subs) const
    {
        return eval_poly(num_, subs) / eval_poly(den_, subs);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    static RatFunc add(const RatFunc& a, const RatFunc& b, bool subtract)
    {
        require_same_field(a.field(), b.field());
        if (b.is_zero())
            return a;
        if (a.is_zero())
            return subtract ? -b : b;
        const Poly& bn = b.num_;
        auto combine = [subtract](const Poly& x, const Poly& y) { return subtract ? x - y : x + y; };
        if (a.den_ == b.den_) {
            Poly n = combine(a.num_, bn);
            if (a.den_.is_one())
                return RatFunc(n);
            return normalize(n, a.den_);
        }
        if (a.den_.is_one())
            return from_coprime(combine(a.num_ * b.den_, bn), b.den_);
        if (b.den_.is_one())
            return from_coprime(combine(a.num_, bn * a.den_), a.den_);
        Poly g = gcd(a.den_, b.den_);
        if (g.is_one())
            return from_coprime(combine(a.num_ * b.den_, bn * a.den_), a.den_ * b.den_);
        Poly ad = Poly::div_exact(a.den_, g);
        Poly bd = Poly::div_exact(b.den_, g);
        Poly n = combine(a.num_ * bd, bn * ad);
        if (n.is_zero())
            return RatFunc(a.field());
        Poly h = gcd(n, g);
        if (h.is_one())
            return from_coprime(n, ad * b.den_);
        return from_coprime(Poly::div_exact(n, h), ad * Poly::div_exact(b.den_, h));
    }

    static RatFunc eval_poly(const Poly& p, const std::vector<std::optional<RatFunc>>& subs)
    {
        const FieldDesc& f = p.field();
        std::vector<std::vector<RatFunc>> powers(f.nvars);
        RatFunc acc(f);
        for (const auto& t : p.terms()) {
            RatFunc term = RatFunc::constant(f, t.c);
            Monomial rest;
            for (int i = 0; i < f.nvars; ++i) {
                unsigned e = t.m.e[i];
                if (e == 0)
                    continue;
                if (i < static_cast<int>(subs.size()) && subs[i]) {
                    auto& pw = powers[i];
                    if (pw.empty())
                        pw.push_back(RatFunc::constant(f, 1));
                    while (pw.size() <= e)
                        pw.push_back(pw.back() * *subs[i]);
                    term *= pw[e];
                } else {
                    rest.e[i] = static_cast<std::uint16_t>(e);
                    rest.deg += e;
                }
            }
            if (rest.deg != 0)
                term *= RatFunc(Poly::monomial(f, rest));
            acc += term;
        }
        return acc;
    }

    Poly num_;
    Poly den_ = Poly::constant(FieldDesc{}, 1);
};

inline RatFunc operator*(std::uint8_t c, const RatFunc& a) { return a.scaled(c); }

} // namespace charp

#endif
