#ifndef CHARP_POLY_HPP
#define CHARP_POLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace charp {

struct Monomial
{
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t deg = 0;

    static Monomial one() { return {}; }

    static Monomial var(int i, std::uint32_t power = 1)
    {
        Monomial m;
        m.e[i] = static_cast<std::uint16_t>(power);
        m.deg = power;
        return m;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order with x1 > x2 > ... > xn.
inline int grlex_cmp(const Monomial& a, const Monomial& b) noexcept
{
    if (a.deg != b.deg)
        return a.deg > b.deg ? 1 : -1;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i])
            return a.e[i] > b.e[i] ? 1 : -1;
    return 0;
}

inline bool grlex_greater(const Monomial& a, const Monomial& b) noexcept { return grlex_cmp(a, b) > 0; }

inline bool mono_divides(const Monomial& d, const Monomial& m) noexcept
{
    if (d.deg > m.deg)
        return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (d.e[i] > m.e[i])
            return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b, std::uint32_t cap)
{
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
        std::uint32_t s = std::uint32_t(a.e[i]) + b.e[i];
        if (s >= cap)
            fail(Errc::ExponentOverflow, "exponent " + std::to_string(s) + " reaches cap " + std::to_string(cap));
        r.e[i] = static_cast<std::uint16_t>(s);
    }
    r.deg = a.deg + b.deg;
    return r;
}

// m / d, assuming d | m.
inline Monomial mono_div(const Monomial& m, const Monomial& d) noexcept
{
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i)
        r.e[i] = static_cast<std::uint16_t>(m.e[i] - d.e[i]);
    r.deg = m.deg - d.deg;
    return r;
}

struct Term
{
    Monomial m;
    std::uint8_t c = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial in F_p[x1..xn]; terms are kept strictly descending in
// grlex order with nonzero coefficients, so structural equality is equality.
class Poly
{
public:
    Poly() = default;
    explicit Poly(const FieldDesc& f) : f_(f) {}

    static Poly constant(const FieldDesc& f, long long c)
    {
        Poly r(f);
        std::uint8_t v = fp::reduce(c, f.p);
        if (v != 0)
            r.t_.push_back({Monomial::one(), v});
        return r;
    }

    static Poly var(const FieldDesc& f, int i, std::uint32_t power = 1)
    {
        if (i < 0 || i >= f.nvars)
            fail(Errc::DimensionMismatch, "variable index " + std::to_string(i + 1) + " out of range");
        if (power >= f.exponent_cap)
            fail(Errc::ExponentOverflow, "exponent " + std::to_string(power));
        Poly r(f);
        r.t_.push_back({Monomial::var(i, power), 1});
        return r;
    }

    static Poly monomial(const FieldDesc& f, const Monomial& m, long long c = 1)
    {
        Poly r(f);
        std::uint8_t v = fp::reduce(c, f.p);
        if (v != 0)
            r.t_.push_back({m, v});
        return r;
    }

    // Accepts terms in any order, possibly repeated or zero.
    static Poly from_terms(const FieldDesc& f, std::vector<Term> terms)
    {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return grlex_greater(a.m, b.m); });
        Poly r(f);
        r.t_.reserve(terms.size());
        for (const auto& t : terms) {
            if (!r.t_.empty() && r.t_.back().m == t.m) {
                r.t_.back().c = fp::add(r.t_.back().c, t.c, f.p);
                if (r.t_.back().c == 0)
                    r.t_.pop_back();
            } else if (t.c % f.p != 0) {
                r.t_.push_back({t.m, static_cast<std::uint8_t>(t.c % f.p)});
            }
        }
        return r;
    }

    // Caller guarantees descending order and nonzero coefficients.
    static Poly from_sorted(const FieldDesc& f, std::vector<Term> terms)
    {
        Poly r(f);
        r.t_ = std::move(terms);
        return r;
    }

    const FieldDesc& field() const noexcept { return f_; }
    int prime() const noexcept { return f_.p; }
    std::span<const Term> terms() const noexcept { return t_; }
    std::size_t size() const noexcept { return t_.size(); }
    bool is_zero() const noexcept { return t_.empty(); }
    bool is_constant() const noexcept { return t_.empty() || (t_.size() == 1 && t_[0].m.deg == 0); }
    bool is_one() const noexcept { return t_.size() == 1 && t_[0].m.deg == 0 && t_[0].c == 1; }
    bool is_monomial() const noexcept { return t_.size() == 1; }
    const Term& lead() const { return t_.front(); }
    std::uint8_t constant_term() const noexcept
    {
        return (!t_.empty() && t_.back().m.deg == 0) ? t_.back().c : 0;
    }

    int degree() const noexcept { return t_.empty() ? -1 : static_cast<int>(t_.front().m.deg); }

    int degree_in(int v) const noexcept
    {
        int d = t_.empty() ? -1 : 0;
        for (const auto& t : t_)
            d = std::max(d, int(t.m.e[v]));
        return d;
    }

    // Componentwise minimum of exponents; meaningful for nonzero polynomials.
    Monomial min_exponents() const noexcept
    {
        Monomial m;
        if (t_.empty())
            return m;
        m = t_.front().m;
        for (const auto& t : t_)
            for (int i = 0; i < kMaxVars; ++i)
                m.e[i] = std::min(m.e[i], t.m.e[i]);
        m.deg = 0;
        for (int i = 0; i < kMaxVars; ++i)
            m.deg += m.e[i];
        return m;
    }

    unsigned vars_mask() const noexcept
    {
        unsigned mask = 0;
        for (const auto& t : t_)
            for (int i = 0; i < f_.nvars; ++i)
                if (t.m.e[i] != 0)
                    mask |= 1u << i;
        return mask;
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto& t : r.t_)
            t.c = fp::neg(t.c, f_.p);
        return r;
    }

    Poly scaled(std::uint8_t c) const
    {
        c = static_cast<std::uint8_t>(c % f_.p);
        if (c == 0)
            return Poly(f_);
        Poly r = *this;
        if (c != 1)
            for (auto& t : r.t_)
                t.c = fp::mul(t.c, c, f_.p);
        return r;
    }

    Poly mul_term(const Monomial& m, std::uint8_t c) const
    {
        Poly r(f_);
        if (c % f_.p == 0)
            return r;
        r.t_.reserve(t_.size());
        for (const auto& t : t_)
            r.t_.push_back({mono_mul(t.m, m, f_.exponent_cap), fp::mul(t.c, c, f_.p)});
        return r;
    }

    // Leading coefficient scaled to 1.
    Poly monic() const
    {
        if (t_.empty() || t_.front().c == 1)
            return *this;
        return scaled(fp::inv(t_.front().c, f_.p));
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        require_same_field(a.f_, b.f_);
        return Poly::from_sorted(a.f_, merge(a.t_, b.t_, a.f_.p, false));
    }

    friend Poly operator-(const Poly& a, const Poly& b)
    {
        require_same_field(a.f_, b.f_);
        return Poly::from_sorted(a.f_, merge(a.t_, b.t_, a.f_.p, true));
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        require_same_field(a.f_, b.f_);
        const Poly* s = &a;
        const Poly* l = &b;
        if (s->t_.size() > l->t_.size())
            std::swap(s, l);
        if (s->t_.empty())
            return Poly(a.f_);
        if (s->t_.size() == 1)
            return l->mul_term(s->t_[0].m, s->t_[0].c);
        std::vector<std::vector<Term>> rows;
        rows.reserve(s->t_.size());
        for (const auto& t : s->t_)
            rows.push_back(l->mul_term(t.m, t.c).t_);
        const int p = a.f_.p;
        while (rows.size() > 1) {
            std::vector<std::vector<Term>> next;
            next.reserve((rows.size() + 1) / 2);
            for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
                next.push_back(merge(rows[i], rows[i + 1], p, false));
            if (rows.size() % 2 == 1)
                next.push_back(std::move(rows.back()));
            rows = std::move(next);
        }
        return Poly::from_sorted(a.f_, std::move(rows.front()));
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned n) const
    {
        Poly result = Poly::constant(f_, 1);
        Poly base = *this;
        while (n > 0) {
            if (n & 1u)
                result *= base;
            n >>= 1;
            if (n > 0)
                base *= base;
        }
        return result;
    }

    // x_i -> x_i^p on every variable; equals the p-th power over F_p.
    Poly frobenius() const
    {
        Poly r(f_);
        r.t_.reserve(t_.size());
        for (const auto& t : t_) {
            Monomial m;
            for (int i = 0; i < kMaxVars; ++i) {
                std::uint32_t e = std::uint32_t(t.m.e[i]) * f_.p;
                if (e >= f_.exponent_cap)
                    fail(Errc::ExponentOverflow, "frobenius exponent " + std::to_string(e));
                m.e[i] = static_cast<std::uint16_t>(e);
            }
            m.deg = t.m.deg * f_.p;
            r.t_.push_back({m, t.c});
        }
        return r;
    }

    // Inverse of frobenius when every exponent is divisible by p.
    std::optional<Poly> pth_root() const
    {
        Poly r(f_);
        r.t_.reserve(t_.size());
        for (const auto& t : t_) {
            Monomial m;
            for (int i = 0; i < kMaxVars; ++i) {
                if (t.m.e[i] % f_.p != 0)
                    return std::nullopt;
                m.e[i] = static_cast<std::uint16_t>(t.m.e[i] / f_.p);
            }
            m.deg = t.m.deg / f_.p;
            r.t_.push_back({m, t.c});
        }
        return r;
    }

    Poly derivative(int v) const
    {
        Poly r(f_);
        for (const auto& t : t_) {
            if (t.m.e[v] == 0)
                continue;
            std::uint8_t c = fp::mul(t.c, fp::reduce(t.m.e[v], f_.p), f_.p);
            if (c == 0)
                continue;
            Monomial m = t.m;
            --m.e[v];
            --m.deg;
            r.t_.push_back({m, c});
        }
        return r;
    }

    // Sets x_v = 0.
    Poly at_zero(int v) const
    {
        Poly r(f_);
        for (const auto& t : t_)
            if (t.m.e[v] == 0)
                r.t_.push_back(t);
        return r;
    }

    Poly div_monomial(const Monomial& d) const
    {
        Poly r(f_);
        r.t_.reserve(t_.size());
        for (const auto& t : t_)
            r.t_.push_back({mono_div(t.m, d), t.c});
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.f_ == b.f_ && a.t_ == b.t_; }

    // Quotient and remainder for division by b (single-divisor division in
    // grlex). With exact=true returns nullopt as soon as a remainder appears.
    static std::optional<std::pair<Poly, Poly>> divide(const Poly& a, const Poly& b, bool exact)
    {
        require_same_field(a.f_, b.f_);
        if (b.is_zero())
            fail(Errc::DivisionByZero, "polynomial division by zero");
        const FieldDesc& f = a.f_;
        const int p = f.p;
        if (b.t_.size() == 1) {
            const Term& lb = b.t_[0];
            std::uint8_t ci = fp::inv(lb.c, p);
            std::vector<Term> q, r;
            for (const auto& t : a.t_) {
                if (mono_divides(lb.m, t.m))
                    q.push_back({mono_div(t.m, lb.m), fp::mul(t.c, ci, p)});
                else if (exact)
                    return std::nullopt;
                else
                    r.push_back(t);
            }
            return std::make_pair(Poly::from_sorted(f, std::move(q)), Poly::from_sorted(f, std::move(r)));
        }
        struct Entry
        {
            Monomial m;
            std::uint32_t i, j;
        };
        auto cmp = [](const Entry& x, const Entry& y) { return grlex_greater(y.m, x.m); };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
        const Term& lb = b.t_[0];
        const std::uint8_t lc_inv = fp::inv(lb.c, p);
        std::vector<Term> q, r;
        std::size_t ai = 0;
        while (ai < a.t_.size() || !heap.empty()) {
            Monomial m;
            if (ai < a.t_.size() && (heap.empty() || !grlex_greater(heap.top().m, a.t_[ai].m)))
                m = a.t_[ai].m;
            else
                m = heap.top().m;
            std::uint8_t coef = 0;
            if (ai < a.t_.size() && a.t_[ai].m == m) {
                coef = a.t_[ai].c;
                ++ai;
            }
            while (!heap.empty() && heap.top().m == m) {
                Entry e = heap.top();
                heap.pop();
                coef = fp::sub(coef, fp::mul(q[e.i].c, b.t_[e.j].c, p), p);
                if (e.j + 1 < b.t_.size())
                    heap.push({mono_mul(q[e.i].m, b.t_[e.j + 1].m, f.exponent_cap), e.i, e.j + 1});
            }
            if (coef == 0)
                continue;
            if (mono_divides(lb.m, m)) {
                q.push_back({mono_div(m, lb.m), fp::mul(coef, lc_inv, p)});
                heap.push({mono_mul(q.back().m, b.t_[1].m, f.exponent_cap),
                           static_cast<std::uint32_t>(q.size() - 1), 1});
            } else {
                if (exact)
                    return std::nullopt;
                r.push_back({m, coef});
            }
        }
        return std::make_pair(Poly::from_sorted(f, std::move(q)), Poly::from_sorted(f, std::move(r)));
    }

    static std::optional<Poly> exact_div(const Poly& a, const Poly& b)
    {
        auto qr = divide(a, b, true);
        if (!qr)
            return std::nullopt;
        return std::move(qr->first);
    }

    // Division the caller knows to be exact.
    static Poly div_exact(const Poly& a, const Poly& b)
    {
        auto q = exact_div(a, b);
        if (!q)
            fail(Errc::InternalError, "expected exact polynomial division");
        return std::move(*q);
    }

private:
    static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int p, bool subtract)
    {
        std::vector<Term> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int c = grlex_cmp(a[i].m, b[j].m);
            if (c > 0) {
                out.push_back(a[i++]);
            } else if (c < 0) {
                out.push_back({b[j].m, subtract ? fp::neg(b[j].c, p) : b[j].c});
                ++j;
            } else {
                std::uint8_t s = subtract ? fp::sub(a[i].c, b[j].c, p) : fp::add(a[i].c, b[j].c, p);
                if (s != 0)
                    out.push_back({a[i].m, s});
                ++i;
                ++j;
            }
        }
        for (; i < a.size(); ++i)
            out.push_back(a[i]);
        for (; j < b.size(); ++j)
            out.push_back({b[j].m, subtract ? fp::neg(b[j].c, p) : b[j].c});
        return out;
    }

    FieldDesc f_;
    std::vector<Term> t_;
};

} // namespace charp

#endif
