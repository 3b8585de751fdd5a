// Test-only reference computations. Everything here works on plain dense
// arrays and brute force so that it shares no code path with the library
// beyond converting inputs.
#ifndef CHARP_TESTS_ORACLES_HPP
#define CHARP_TESTS_ORACLES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "charp/poly.hpp"
#include "charp/ratfunc.hpp"

namespace oracle {

// Univariate polynomial over F_p, coefficient k multiplies t^k.
using UPoly = std::vector<int>;

inline int md(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

inline void trim(UPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline UPoly add(const UPoly& a, const UPoly& b, int p, int sign = 1)
{
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = md(r[i] + sign * b[i], p);
    trim(r);
    return r;
}

inline UPoly mul(const UPoly& a, const UPoly& b, int p)
{
    if (a.empty() || b.empty())
        return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = md(r[i + j] + a[i] * b[j], p);
    trim(r);
    return r;
}

inline UPoly derivative(const UPoly& a, int p)
{
    UPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(md(static_cast<long long>(i) * a[i], p));
    trim(r);
    return r;
}

inline int inv(int a, int p)
{
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1)
            return x;
    return 0;
}

// Remainder of a modulo monic-or-not b.
inline UPoly rem(UPoly a, const UPoly& b, int p)
{
    int il = inv(b.back(), p);
    trim(a);
    while (a.size() >= b.size()) {
        int q = md(a.back() * il, p);
        std::size_t s = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[s + i] = md(a[s + i] - q * b[i], p);
        trim(a);
    }
    return a;
}

inline charp::Poly to_poly(const UPoly& a, const charp::FieldDesc& f, int var = 0)
{
    std::vector<charp::Term> ts;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k])
            ts.push_back({charp::Monomial::var(var, static_cast<std::uint32_t>(k)), static_cast<std::uint8_t>(a[k])});
    return charp::Poly::from_terms(f, ts);
}

// Gaussian elimination mod p. Returns a solution of A x = b if one exists.
inline std::optional<std::vector<int>> solve_mod_p(std::vector<std::vector<int>> A, std::vector<int> b, int p)
{
    const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        int il = inv(A[r][c], p);
        for (auto& v : A[r])
            v = md(v * il, p);
        b[r] = md(b[r] * il, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0)
                continue;
            int f = A[i][c];
            for (std::size_t k = 0; k < cols; ++k)
                A[i][k] = md(A[i][k] - f * A[r][k], p);
            b[i] = md(b[i] - f * b[r], p);
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0)
            return std::nullopt;
    std::vector<int> x(cols, 0);
    for (std::size_t i = 0; i < r; ++i)
        x[pivot_col[i]] = b[i];
    return x;
}

// Looks for f = b / D with deg b <= max(deg a, deg D) + 2 and df = (a / D) dx
// by solving b' D - b D' = a D coefficientwise. Subtracting p-th powers
// pushes any antiderivative into this space (pole orders at most those of
// D, degree at most one above that of a / D), so no solution means none.
inline std::optional<UPoly> antiderivative(const UPoly& a, const UPoly& D, int p)
{
    const std::size_t nb = std::max(a.size(), D.size()) + 3;
    const UPoly dD = derivative(D, p);
    const UPoly target = mul(a, D, p);
    std::size_t rows = std::max(target.size(), nb + D.size()) + 1;
    std::vector<std::vector<int>> A(rows, std::vector<int>(nb, 0));
    for (std::size_t j = 0; j < nb; ++j) {
        UPoly e(j + 1, 0);
        e[j] = 1;
        UPoly col = add(mul(derivative(e, p), D, p), mul(e, dD, p), p, -1);
        for (std::size_t i = 0; i < col.size(); ++i)
            A[i][j] = col[i];
    }
    std::vector<int> rhs(rows, 0);
    for (std::size_t i = 0; i < target.size(); ++i)
        rhs[i] = target[i];
    auto x = solve_mod_p(A, rhs, p);
    if (!x)
        return std::nullopt;
    UPoly b(x->begin(), x->end());
    trim(b);
    return b;
}

// Trial division by every monic polynomial of degree 1 .. deg f / 2.
inline bool irreducible(const UPoly& f, int p)
{
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= n; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i)
            count *= p;
        for (long long code = 0; code < count; ++code) {
            UPoly g(d + 1, 0);
            long long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

inline int det_mod_p(std::vector<std::vector<int>> m, int p)
{
    const std::size_t n = m.size();
    long long det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = md(-det, p);
        }
        det = md(det * m[c][c], p);
        int il = inv(m[c][c], p);
        for (std::size_t i = c + 1; i < n; ++i) {
            int f = md(m[i][c] * il, p);
            for (std::size_t k = c; k < n; ++k)
                m[i][k] = md(m[i][k] - f * m[c][k], p);
        }
    }
    return static_cast<int>(det);
}

// Norm of u from F_p[t]/(f) to F_p: determinant of multiplication by u.
inline int norm(const UPoly& u, const UPoly& f, int p)
{
    const std::size_t n = f.size() - 1;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        UPoly e(j + 1, 0);
        e[j] = 1;
        UPoly col = rem(mul(u, e, p), f, p);
        for (std::size_t i = 0; i < col.size(); ++i)
            m[i][j] = col[i];
    }
    return det_mod_p(m, p);
}

// Truncated power series product modulo t^prec.
inline std::vector<int> series_mul(const std::vector<int>& a, const std::vector<int>& b, int p, int prec)
{
    std::vector<int> r(prec, 0);
    for (int i = 0; i < prec && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j < prec && j < static_cast<int>(b.size()); ++j)
            r[i + j] = md(r[i + j] + a[i] * b[j], p);
    return r;
}

// Bivariate polynomials over F_2 as sets of exponent pairs.
using Bi = std::map<std::pair<int, int>, int>;

inline void bi_add(Bi& a, const Bi& b)
{
    for (const auto& [m, c] : b) {
        int v = (a[m] + c) % 2;
        if (v)
            a[m] = v;
        else
            a.erase(m);
    }
}

inline Bi bi_shift(const Bi& a, int i, int j)
{
    Bi r;
    for (const auto& [m, c] : a)
        r[{m.first + i, m.second + j}] = c;
    return r;
}

// u = u0 + u1 x + u2 y from the low three bits of code; returns u^2.
inline Bi square_of_linear(int code)
{
    Bi r;
    if (code & 1)
        r[{0, 0}] = 1;
    if (code & 2)
        r[{2, 0}] = 1;
    if (code & 4)
        r[{0, 2}] = 1;
    return r;
}

inline Bi from_poly(const charp::Poly& f)
{
    Bi r;
    for (const auto& t : f.terms())
        r[{t.m.e[0], t.m.e[1]}] = t.c % 2;
    return r;
}

// c in S_{x,y} over F_2(x,y) for a polynomial c of degree <= 3, by
// enumerating c = u^2 and c = x u10^2 + y u01^2 + x y u11^2 with every u of
// degree <= 1.
inline bool sab_brute(const charp::Poly& c)
{
    const Bi target = from_poly(c);
    bool is_square = false;
    for (int u = 0; u < 8 && !is_square; ++u)
        is_square = square_of_linear(u) == target;
    if (is_square)
        return false;
    for (int u10 = 0; u10 < 8; ++u10)
        for (int u01 = 0; u01 < 8; ++u01)
            for (int u11 = 0; u11 < 8; ++u11) {
                Bi s = bi_shift(square_of_linear(u10), 1, 0);
                bi_add(s, bi_shift(square_of_linear(u01), 0, 1));
                bi_add(s, bi_shift(square_of_linear(u11), 1, 1));
                if (s == target)
                    return false;
            }
    return true;
}

// Over a perfect field a reduced fraction is a p-th power iff numerator
// and denominator are, and a polynomial is a p-th power iff every exponent
// is divisible by p (coefficients in F_p are their own p-th powers).
inline bool is_pth_power(const charp::RatFunc& c)
{
    const int p = c.field().p;
    for (const charp::Poly* q : {&c.num(), &c.den()})
        for (const auto& t : q->terms())
            for (int i = 0; i < c.field().nvars; ++i)
                if (t.m.e[i] % p != 0)
                    return false;
    return true;
}

} // namespace oracle

#endif
