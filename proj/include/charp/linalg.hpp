#ifndef CHARP_LINALG_HPP
#define CHARP_LINALG_HPP

#include <optional>
#include <vector>

#include "ratfunc.hpp"

namespace charp {

using Vec = std::vector<RatFunc>;
using Mat = std::vector<Vec>;

struct LinSolveResult
{
    std::optional<Vec> solution;
    std::vector<Vec> kernel;
};

namespace detail {

inline std::size_t weight(const RatFunc& r) { return r.num().size() + r.den().size(); }

struct Echelon
{
    Mat rows;
    std::vector<int> pivots;
};

// Reduced row echelon form over the first `cols` columns; trailing columns
// are carried along. Pivots favour the sparsest entry to limit growth.
inline Echelon rref(Mat m, std::size_t cols)
{
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t best = m.size();
        for (std::size_t i = r; i < m.size(); ++i)
            if (!m[i][c].is_zero() && (best == m.size() || weight(m[i][c]) < weight(m[best][c])))
                best = i;
        if (best == m.size())
            continue;
        std::swap(m[r], m[best]);
        RatFunc inv = m[r][c].inverse();
        for (auto& x : m[r])
            if (!x.is_zero())
                x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero())
                continue;
            RatFunc factor = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j)
                if (!m[r][j].is_zero())
                    m[i][j] -= factor * m[r][j];
        }
        e.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

inline const FieldDesc& matrix_field(const Mat& a)
{
    if (a.empty() || a[0].empty())
        fail(Errc::DimensionMismatch, "empty matrix");
    return a[0][0].field();
}

inline void check_rect(const Mat& a)
{
    for (const auto& row : a)
        if (row.size() != a[0].size())
            fail(Errc::DimensionMismatch, "ragged matrix");
}

} // namespace detail

inline std::vector<Vec> kernel(const Mat& a)
{
    const FieldDesc& f = detail::matrix_field(a);
    detail::check_rect(a);
    std::size_t n = a[0].size();
    auto e = detail::rref(a, n);
    std::vector<bool> is_pivot(n, false);
    for (int c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(n, RatFunc(f));
        v[free] = RatFunc::constant(f, 1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline LinSolveResult linsolve(const Mat& a, const Vec& b)
{
    const FieldDesc& f = detail::matrix_field(a);
    detail::check_rect(a);
    if (b.size() != a.size())
        fail(Errc::DimensionMismatch, "right-hand side length differs from row count");
    std::size_t n = a[0].size();
    Mat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        require_same_field(f, b[i].field());
        aug[i].push_back(b[i]);
    }
    auto e = detail::rref(aug, n + 1);
    LinSolveResult res;
    bool consistent = e.pivots.empty() || e.pivots.back() != static_cast<int>(n);
    if (consistent) {
        Vec x(n, RatFunc(f));
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            x[e.pivots[i]] = e.rows[i][n];
        res.solution = std::move(x);
    }
    res.kernel = kernel(a);
    return res;
}

inline RatFunc determinant(Mat m)
{
    const FieldDesc& f = detail::matrix_field(m);
    detail::check_rect(m);
    std::size_t n = m.size();
    if (m[0].size() != n)
        fail(Errc::DimensionMismatch, "determinant of a non-square matrix");
    RatFunc det = RatFunc::constant(f, 1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        for (std::size_t i = c; i < n; ++i)
            if (!m[i][c].is_zero() && (best == n || detail::weight(m[i][c]) < detail::weight(m[best][c])))
                best = i;
        if (best == n)
            return RatFunc(f);
        if (best != c) {
            std::swap(m[c], m[best]);
            det = -det;
        }
        det *= m[c][c];
        RatFunc inv = m[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero())
                continue;
            RatFunc factor = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!m[c][j].is_zero())
                    m[i][j] -= factor * m[c][j];
        }
    }
    return det;
}

inline Vec mat_vec(const Mat& a, const Vec& x)
{
    const FieldDesc& f = detail::matrix_field(a);
    if (x.size() != a[0].size())
        fail(Errc::DimensionMismatch, "vector length differs from column count");
    Vec out(a.size(), RatFunc(f));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero())
                out[i] += a[i][j] * x[j];
    return out;
}

} // namespace charp

#endif
