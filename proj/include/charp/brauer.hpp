#ifndef CHARP_BRAUER_HPP
#define CHARP_BRAUER_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "valuation.hpp"

namespace charp {

// Entries of one symbol p-algebra [a, b) inside a (possibly tensored) algebra.
struct SymbolData
{
    RatFunc a;
    RatFunc b;
};

using SparseVec = std::vector<std::pair<std::uint32_t, RatFunc>>;

// Finite-dimensional algebra over k given by structure constants:
// e_i * e_j = sum_k table[i][j][k] e_k. Basis element 0 is the unit. Every
// factor [a, b) contributes generators X, Y with X^p - X = a, Y^p = b,
// YX = XY + Y; exps[i] lists the (X, Y) exponents of e_i per factor.
struct StructAlgebra
{
    FieldDesc field;
    std::vector<SymbolData> factors;
    std::vector<std::vector<std::uint8_t>> exps;
    std::vector<std::vector<SparseVec>> table;

    std::size_t dim() const noexcept { return table.size(); }

    std::uint32_t index_of(const std::vector<std::uint8_t>& e) const
    {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] == e)
                return static_cast<std::uint32_t>(i);
        fail(Errc::InternalError, "no basis element with the given exponents");
    }

    // Basis index of X (which = 0) or Y (which = 1) of factor f.
    std::uint32_t generator(std::size_t f, int which) const
    {
        std::vector<std::uint8_t> e(2 * factors.size(), 0);
        e[2 * f + which] = 1;
        return index_of(e);
    }

    std::string label(std::size_t i) const
    {
        std::string s;
        const bool single = factors.size() == 1;
        for (std::size_t f = 0; f < factors.size(); ++f)
            for (int w = 0; w < 2; ++w) {
                int e = exps[i][2 * f + w];
                if (e == 0)
                    continue;
                if (!s.empty() && !single)
                    s += ' ';
                s += w == 0 ? 'X' : 'Y';
                if (!single)
                    s += std::to_string(f + 1);
                if (e > 1)
                    s += "^" + std::to_string(e);
            }
        return s.empty() ? "1" : s;
    }
};

using AlgebraElement = Vec;

inline AlgebraElement algebra_scalar(const StructAlgebra& A, const RatFunc& c)
{
    AlgebraElement z(A.dim(), RatFunc(A.field));
    z[0] = c;
    return z;
}

inline AlgebraElement algebra_basis(const StructAlgebra& A, std::size_t i)
{
    AlgebraElement z(A.dim(), RatFunc(A.field));
    z[i] = RatFunc::constant(A.field, 1);
    return z;
}

inline AlgebraElement algebra_mul(const StructAlgebra& A, const AlgebraElement& u, const AlgebraElement& v)
{
    if (u.size() != A.dim() || v.size() != A.dim())
        fail(Errc::DimensionMismatch, "element length differs from algebra dimension");
    AlgebraElement r(A.dim(), RatFunc(A.field));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero())
            continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero())
                continue;
            RatFunc c = u[i] * v[j];
            for (const auto& [k, s] : A.table[i][j])
                r[k] += c * s;
        }
    }
    return r;
}

inline AlgebraElement algebra_sub(const AlgebraElement& u, const AlgebraElement& v)
{
    AlgebraElement r = u;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= v[i];
    return r;
}

inline bool algebra_is_zero(const AlgebraElement& u)
{
    for (const auto& c : u)
        if (!c.is_zero())
            return false;
    return true;
}

// [a, b) with basis X^i Y^j, index i + p*j. Y^j X^k = (X + j)^k Y^j.
inline StructAlgebra build_symbol_algebra(const RatFunc& a, const RatFunc& b)
{
    require_same_field(a.field(), b.field());
    if (b.is_zero())
        fail(Errc::ZeroB, "[a, b) needs b != 0");
    const FieldDesc& f = a.field();
    const int p = f.p;
    const std::size_t dim = static_cast<std::size_t>(p * p);
    StructAlgebra A{f, {{a, b}}, {}, {}};
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i)
            A.exps.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
    std::vector<std::vector<int>> binom(p, std::vector<int>(p, 0));
    for (int n = 0; n < p; ++n) {
        binom[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            binom[n][k] = (binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0)) % p;
    }
    A.table.assign(dim, std::vector<SparseVec>(dim));
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i)
            for (int l = 0; l < p; ++l)
                for (int k = 0; k < p; ++k) {
                    // X^i (X + j)^k, reduced with X^p = X + a.
                    std::vector<RatFunc> poly(2 * p - 1, RatFunc(f));
                    int jp = 1;
                    for (int m = k; m >= 0; --m) {
                        int c = binom[k][m] * jp % p;
                        if (c != 0)
                            poly[i + m] += RatFunc::constant(f, c);
                        jp = jp * j % p;
                    }
                    for (int e = 2 * p - 2; e >= p; --e) {
                        if (poly[e].is_zero())
                            continue;
                        RatFunc c = poly[e];
                        poly[e] = RatFunc(f);
                        poly[e - p + 1] += c;
                        poly[e - p] += c * a;
                    }
                    int s = j + l;
                    RatFunc scale = RatFunc::constant(f, 1);
                    if (s >= p) {
                        s -= p;
                        scale = b;
                    }
                    SparseVec out;
                    for (int m = 0; m < p; ++m)
                        if (!poly[m].is_zero())
                            out.emplace_back(static_cast<std::uint32_t>(m + p * s), poly[m] * scale);
                    A.table[i + p * j][k + p * l] = std::move(out);
                }
    return A;
}

// Kronecker product; index ia * dim(B) + ib.
inline StructAlgebra tensor(const StructAlgebra& A, const StructAlgebra& B)
{
    require_same_field(A.field, B.field);
    const std::size_t da = A.dim(), db = B.dim();
    StructAlgebra T{A.field, A.factors, {}, {}};
    T.factors.insert(T.factors.end(), B.factors.begin(), B.factors.end());
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < db; ++k) {
            auto e = A.exps[i];
            e.insert(e.end(), B.exps[k].begin(), B.exps[k].end());
            T.exps.push_back(std::move(e));
        }
    T.table.assign(da * db, std::vector<SparseVec>(da * db));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) {
                    SparseVec out;
                    for (const auto& [s, cs] : A.table[i][j])
                        for (const auto& [t, ct] : B.table[k][l])
                            out.emplace_back(static_cast<std::uint32_t>(s * db + t), cs * ct);
                    T.table[i * db + k][j * db + l] = std::move(out);
                }
    return T;
}

struct CsaReport
{
    bool associative = true;
    long long triples_checked = 0;
    bool exhaustive = true;
    std::optional<std::array<std::uint32_t, 3>> first_failure;
    bool relations_hold = true;
    std::vector<std::string> relation_failures;
    int center_dimension = 0;

    bool ok() const { return associative && relations_hold && center_dimension == 1; }
};

namespace detail {

inline std::map<std::uint32_t, RatFunc> triple_product(const StructAlgebra& A, std::uint32_t i, std::uint32_t j,
                                                       std::uint32_t k, bool left_first)
{
    std::map<std::uint32_t, RatFunc> acc;
    const SparseVec& first = left_first ? A.table[i][j] : A.table[j][k];
    for (const auto& [m, s] : first) {
        const SparseVec& second = left_first ? A.table[m][k] : A.table[i][m];
        for (const auto& [r, c] : second) {
            auto it = acc.find(r);
            if (it == acc.end())
                acc.emplace(r, s * c);
            else
                it->second += s * c;
        }
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
    return acc;
}

inline AlgebraElement power(const StructAlgebra& A, const AlgebraElement& x, int n)
{
    AlgebraElement r = algebra_scalar(A, RatFunc::constant(A.field, 1));
    for (int i = 0; i < n; ++i)
        r = algebra_mul(A, r, x);
    return r;
}

} // namespace detail

// Associativity on basis triples (all of them, or max_triples sampled ones
// when max_triples >= 0), the defining relations of every factor, and the
// dimension of the center, found as the kernel of z -> [z, g] over the
// generators g.
inline CsaReport verify_csa(const StructAlgebra& A, long long max_triples = -1, std::uint64_t seed = 1)
{
    CsaReport r;
    const auto n = static_cast<std::uint32_t>(A.dim());
    auto check = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
        ++r.triples_checked;
        if (detail::triple_product(A, i, j, k, true) != detail::triple_product(A, i, j, k, false) &&
            r.associative) {
            r.associative = false;
            r.first_failure = std::array<std::uint32_t, 3>{i, j, k};
        }
    };
    if (max_triples < 0 || static_cast<long double>(n) * n * n <= max_triples) {
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                for (std::uint32_t k = 0; k < n; ++k)
                    check(i, j, k);
    } else {
        r.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        for (long long t = 0; t < max_triples; ++t)
            check(pick(rng), pick(rng), pick(rng));
    }

    const int p = A.field.p;
    std::vector<std::uint32_t> gens;
    for (std::size_t f = 0; f < A.factors.size(); ++f) {
        const std::string tag = A.factors.size() == 1 ? "" : std::to_string(f + 1);
        auto X = algebra_basis(A, A.generator(f, 0));
        auto Y = algebra_basis(A, A.generator(f, 1));
        gens.push_back(A.generator(f, 0));
        gens.push_back(A.generator(f, 1));
        auto xp = algebra_sub(algebra_sub(detail::power(A, X, p), X), algebra_scalar(A, A.factors[f].a));
        if (!algebra_is_zero(xp))
            r.relation_failures.push_back("X" + tag + "^p - X" + tag + " != a" + tag);
        auto yp = algebra_sub(detail::power(A, Y, p), algebra_scalar(A, A.factors[f].b));
        if (!algebra_is_zero(yp))
            r.relation_failures.push_back("Y" + tag + "^p != b" + tag);
        auto comm = algebra_sub(algebra_sub(algebra_mul(A, Y, X), algebra_mul(A, X, Y)), Y);
        if (!algebra_is_zero(comm))
            r.relation_failures.push_back("Y" + tag + "X" + tag + " != X" + tag + "Y" + tag + " + Y" + tag);
        for (std::size_t g = 0; g < f; ++g)
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v) {
                    auto P = algebra_basis(A, A.generator(f, u));
                    auto Q = algebra_basis(A, A.generator(g, v));
                    if (!algebra_is_zero(algebra_sub(algebra_mul(A, P, Q), algebra_mul(A, Q, P))))
                        r.relation_failures.push_back("factors " + std::to_string(g + 1) + " and " +
                                                      std::to_string(f + 1) + " do not commute");
                }
    }
    r.relations_hold = r.relation_failures.empty();

    Mat m(gens.size() * n, Vec(n, RatFunc(A.field)));
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
        for (std::uint32_t c = 0; c < n; ++c) {
            for (const auto& [k, s] : A.table[c][gens[gi]])
                m[gi * n + k][c] += s;
            for (const auto& [k, s] : A.table[gens[gi]][c])
                m[gi * n + k][c] -= s;
        }
    r.center_dimension = static_cast<int>(kernel(m).size());
    return r;
}

// det of left multiplication by z equals Nrd(z)^p.
inline RatFunc reduced_norm(const AlgebraElement& z, const StructAlgebra& A)
{
    const int p = A.field.p;
    if (A.dim() != static_cast<std::size_t>(p * p))
        fail(Errc::NotDegreeP, "reduced norm needs an algebra of dimension p^2, got " + std::to_string(A.dim()));
    Mat L(A.dim(), Vec(A.dim(), RatFunc(A.field)));
    for (std::size_t c = 0; c < A.dim(); ++c) {
        auto col = algebra_mul(A, z, algebra_basis(A, c));
        for (std::size_t r = 0; r < A.dim(); ++r)
            L[r][c] = col[r];
    }
    auto root = determinant(L).pth_root();
    if (!root)
        fail(Errc::RootFailure, "det of left multiplication is not a p-th power");
    return *root;
}

// Norm from E = k[t]/(t^p - t - a) of sum z_i t^i.
inline RatFunc artin_schreier_norm(const RatFunc& a, const std::vector<RatFunc>& z)
{
    const int p = a.prime();
    if (z.size() != static_cast<std::size_t>(p))
        fail(Errc::DimensionMismatch, "element of E needs p coordinates");
    Mat m(p, Vec(p, RatFunc(a.field())));
    std::vector<RatFunc> col = z;
    for (int k = 0; k < p; ++k) {
        for (int i = 0; i < p; ++i)
            m[i][k] = col[i];
        std::vector<RatFunc> next(p, RatFunc(a.field()));
        for (int i = 1; i < p; ++i)
            next[i] = col[i - 1];
        next[1] += col[p - 1];
        next[0] += col[p - 1] * a;
        col = std::move(next);
    }
    return determinant(m);
}

// r with r^p - r = a for polynomial a, peeling leading terms; nullopt when
// a is not a polynomial or has no such root.
inline std::optional<RatFunc> artin_schreier_root(const RatFunc& a)
{
    if (!a.is_polynomial())
        return std::nullopt;
    const FieldDesc& f = a.field();
    const int p = f.p;
    Poly rem = a.num();
    Poly r(f);
    while (!rem.is_zero()) {
        Term t = rem.lead();
        if (t.m.deg == 0)
            return std::nullopt;
        Monomial root;
        for (int i = 0; i < kMaxVars; ++i) {
            if (t.m.e[i] % p != 0)
                return std::nullopt;
            root.e[i] = static_cast<std::uint16_t>(t.m.e[i] / p);
            root.deg += root.e[i];
        }
        Poly step = Poly::monomial(f, root, t.c);
        r = r + step;
        rem = rem - (step.frobenius() - step);
    }
    return RatFunc(r);
}

enum class SplitKind { Split, NonSplit, Unknown };

inline const char* split_kind_name(SplitKind k)
{
    switch (k) {
    case SplitKind::Split: return "Split";
    case SplitKind::NonSplit: return "NonSplit";
    case SplitKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

// Why [a, b) cannot split over the completion at a place: the residue of a
// is a constant c in F_p with t^p - t - c irreducible (no root in F_p), the
// residue norm form of F_p[t]/(t^p - t - c) vanishes only at 0, and v(b) is
// prime to the residue degree p.
struct NonSplitCertificate
{
    int place_var = 0;
    std::uint8_t residue_a = 0;
    std::vector<std::uint8_t> residue_poly_values;
    bool residue_irreducible = false;
    long long norm_form_points = 0;
    bool norm_form_anisotropic = false;
    long long valuation_b = 0;
    int residue_degree = 0;
    bool residue_field_finite = false;

    bool holds() const
    {
        return residue_irreducible && norm_form_anisotropic && residue_degree > 0 && valuation_b % residue_degree != 0;
    }
};

struct SplitVerdict
{
    SplitKind kind = SplitKind::Unknown;
    std::vector<RatFunc> witness;
    std::string witness_source;
    std::optional<NonSplitCertificate> certificate;
    std::string reason;
};

namespace detail {

inline int det_mod_p(std::vector<std::vector<int>> m, int p)
{
    const std::size_t n = m.size();
    int det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        int inv = fp::inv(static_cast<std::uint8_t>(m[c][c]), p);
        for (std::size_t i = c + 1; i < n; ++i) {
            int f = m[i][c] * inv % p;
            if (f == 0)
                continue;
            for (std::size_t j = c; j < n; ++j)
                m[i][j] = ((m[i][j] - f * m[c][j]) % p + p) % p;
        }
    }
    return det;
}

// Norm of sum u_i t^i from F_p[t]/(t^p - t - c) to F_p.
inline int residue_norm(const std::vector<int>& u, int c, int p)
{
    std::vector<std::vector<int>> m(p, std::vector<int>(p, 0));
    std::vector<int> col = u;
    for (int k = 0; k < p; ++k) {
        for (int i = 0; i < p; ++i)
            m[i][k] = col[i];
        std::vector<int> next(p, 0);
        for (int i = 1; i < p; ++i)
            next[i] = col[i - 1];
        next[1] = (next[1] + col[p - 1]) % p;
        next[0] = (next[0] + col[p - 1] * c) % p;
        col = std::move(next);
    }
    return det_mod_p(std::move(m), p);
}

inline std::optional<NonSplitCertificate> nonsplit_certificate(const RatFunc& a, const RatFunc& b, const DVal& place)
{
    const int p = a.prime();
    if (a.is_zero() || order_at(a, place) != 0)
        return std::nullopt;
    RatFunc abar = residue_of(a, place);
    if (!abar.is_constant())
        return std::nullopt;
    NonSplitCertificate c;
    c.place_var = place.var;
    c.residue_a = abar.num().constant_term();
    c.residue_field_finite = a.field().nvars == 1;
    bool irreducible = true;
    for (int t = 0; t < p; ++t) {
        int v = 1;
        for (int i = 0; i < p; ++i)
            v = v * t % p;
        v = ((v - t - c.residue_a) % p + 2 * p) % p;
        c.residue_poly_values.push_back(static_cast<std::uint8_t>(v));
        irreducible = irreducible && v != 0;
    }
    c.residue_irreducible = irreducible;
    c.residue_degree = irreducible ? p : 1;
    bool anisotropic = true;
    std::vector<int> u(p, 0);
    long long total = 1;
    for (int i = 0; i < p; ++i)
        total *= p;
    for (long long code = 1; code < total; ++code) {
        long long x = code;
        for (int i = 0; i < p; ++i) {
            u[i] = static_cast<int>(x % p);
            x /= p;
        }
        ++c.norm_form_points;
        if (residue_norm(u, c.residue_a, p) == 0)
            anisotropic = false;
    }
    c.norm_form_anisotropic = anisotropic;
    c.valuation_b = order_at(b, place);
    return c;
}

} // namespace detail

inline bool check_split_witness(const RatFunc& a, const RatFunc& b, const std::vector<RatFunc>& w)
{
    return artin_schreier_norm(a, w) == b;
}

// Recomputes every part of a NonSplit certificate from a, b and the place.
inline bool check_nonsplit_certificate(const RatFunc& a, const RatFunc& b, const NonSplitCertificate& c)
{
    auto again = detail::nonsplit_certificate(a, b, DVal{c.place_var});
    return again && again->holds() && again->residue_a == c.residue_a && again->valuation_b == c.valuation_b &&
           again->norm_form_anisotropic == c.norm_form_anisotropic && c.holds();
}

// Split / NonSplit / Unknown for [a, b) via the norm criterion: [a, b) splits
// iff b is a norm from k[t]/(t^p - t - a). Split carries a norm witness,
// NonSplit a residue certificate at the given place; the bounded search only
// tries elements whose coordinates are polynomials of degree <= search_bound.
inline SplitVerdict split_test_norm(const RatFunc& a, const RatFunc& b, const DVal& place, int search_bound,
                                    long long max_candidates = 50000)
{
    require_same_field(a.field(), b.field());
    if (b.is_zero())
        fail(Errc::ZeroB, "[a, b) needs b != 0");
    const FieldDesc& f = a.field();
    const int p = f.p;
    SplitVerdict v;
    auto split_with = [&](std::vector<RatFunc> w, const char* source) {
        if (!check_split_witness(a, b, w))
            fail(Errc::InternalError, std::string("norm witness from ") + source + " does not verify");
        v.kind = SplitKind::Split;
        v.witness = std::move(w);
        v.witness_source = source;
        return v;
    };
    if (auto u = b.pth_root()) {
        std::vector<RatFunc> w(p, RatFunc(f));
        w[0] = *u;
        return split_with(std::move(w), "b is a p-th power");
    }
    if (auto r = artin_schreier_root(a)) {
        // E splits; b - (b - 1)(t - r)^(p-1) maps to b at t = r and to 1 at
        // the other roots r + j. (t - r)^(p-1) = sum_i r^(p-1-i) t^i mod p.
        std::vector<RatFunc> w(p, RatFunc(f));
        RatFunc bm1 = b - RatFunc::constant(f, 1);
        for (int i = 0; i < p; ++i)
            w[i] = -(bm1 * r->pow(p - 1 - i));
        w[0] += b;
        return split_with(std::move(w), "t^p - t - a has a root in k");
    }
    if (place.var >= 0 && place.var < f.nvars) {
        auto cert = detail::nonsplit_certificate(a, b, place);
        if (cert && cert->holds()) {
            v.kind = SplitKind::NonSplit;
            v.certificate = cert;
            return v;
        }
    }
    std::vector<Monomial> monos;
    {
        std::vector<Monomial> frontier{Monomial::one()};
        monos.push_back(Monomial::one());
        for (int d = 1; d <= search_bound; ++d) {
            std::vector<Monomial> next;
            for (const auto& m : frontier)
                for (int i = 0; i < f.nvars; ++i) {
                    Monomial u = m;
                    ++u.e[i];
                    ++u.deg;
                    bool seen = false;
                    for (const auto& q : next)
                        seen = seen || q == u;
                    if (!seen)
                        next.push_back(u);
                }
            monos.insert(monos.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    }
    const std::size_t slots = monos.size() * static_cast<std::size_t>(p);
    std::vector<int> digit(slots, 0);
    long long tried = 0;
    while (tried < max_candidates) {
        std::size_t k = 0;
        while (k < slots && digit[k] == p - 1)
            digit[k++] = 0;
        if (k == slots)
            break;
        ++digit[k];
        ++tried;
        std::vector<RatFunc> w(p, RatFunc(f));
        for (int i = 0; i < p; ++i) {
            std::vector<Term> terms;
            for (std::size_t m = 0; m < monos.size(); ++m)
                if (int d = digit[i * monos.size() + m])
                    terms.push_back({monos[m], static_cast<std::uint8_t>(d)});
            w[i] = RatFunc(Poly::from_terms(f, std::move(terms)));
        }
        if (artin_schreier_norm(a, w) == b)
            return split_with(std::move(w), "bounded search");
    }
    v.reason = "no witness among " + std::to_string(tried) + " candidates of degree <= " +
               std::to_string(search_bound) + " and no residue certificate at x" + std::to_string(place.var + 1);
    return v;
}

// One unramified-constituent check: the slot's entries are units at the
// place, and for the slot [c, .) used to build the next layer the residue
// extension t^p - t - c has no root in the residue field.
struct UnramifiedFlag
{
    std::string slot;
    bool entries_are_units = false;
    bool extension_nonsplit = false;
};

struct DnResult
{
    int n = 0;
    FieldDesc field;
    std::vector<SymbolData> presentation;
    StructAlgebra algebra;
    CsaReport csa;
    SplitVerdict base_case;
    HenselRoots hensel;
    std::vector<UnramifiedFlag> unramified;
    std::vector<std::string> trusted;
};

inline constexpr std::size_t kMaxAlgebraDim = 256;

// D_n = [1, x1) (x) [x1, x2) (x) ... (x) [x_{n-1}, x_n) over F_p(x1..xn) with the
// machine-checkable ingredients of its index claims.
inline DnResult construct_Dn(int n, int p, long long sampled_triples = 20000)
{
    if (!is_supported_prime(p))
        fail(Errc::UnsupportedPrime, "prime " + std::to_string(p));
    if (n < 1 || n > kMaxVars)
        fail(Errc::UnsupportedN, "n must lie in 1.." + std::to_string(kMaxVars));
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<std::size_t>(p * p);
        if (dim > kMaxAlgebraDim)
            fail(Errc::UnsupportedN, "D_" + std::to_string(n) + " over F_" + std::to_string(p) +
                                         " exceeds the materialization cap of " + std::to_string(kMaxAlgebraDim));
    }
    DnResult r;
    r.n = n;
    r.field = FieldDesc{p, n};
    const FieldDesc& f = r.field;
    r.presentation.push_back({RatFunc::constant(f, 1), RatFunc::var(f, 0)});
    for (int i = 1; i < n; ++i)
        r.presentation.push_back({RatFunc::var(f, i - 1), RatFunc::var(f, i)});
    r.algebra = build_symbol_algebra(r.presentation[0].a, r.presentation[0].b);
    for (int i = 1; i < n; ++i)
        r.algebra = tensor(r.algebra, build_symbol_algebra(r.presentation[i].a, r.presentation[i].b));
    r.csa = verify_csa(r.algebra, r.algebra.dim() <= 64 ? -1 : sampled_triples);

    FieldDesc f1{p, 1};
    r.base_case = split_test_norm(RatFunc::constant(f1, 1), RatFunc::var(f1, 0), DVal{0}, 0);
    r.hensel = hensel_artin_schreier(LaurentModel::monomial(p, kDefaultLaurentPrecision, 1),
                                     kDefaultLaurentPrecision);
    for (int i = 1; i < n; ++i) {
        // Layer i + 1: D_i is unramified at the x_{i+1}-adic place and
        // t^p - t - x_i stays non-split over the residue field F_p(x1..xi).
        UnramifiedFlag u;
        std::string residue = i == 1 ? "x1" : "x1..x" + std::to_string(i);
        u.slot = "D_" + std::to_string(i) + " over F_p(" + residue + ")((x" + std::to_string(i + 1) + "))";
        bool units = true;
        for (int s = 0; s < i; ++s)
            for (const RatFunc* e : {&r.presentation[s].a, &r.presentation[s].b})
                units = units && order_at(*e, DVal{i}) == 0;
        u.entries_are_units = units;
        u.extension_nonsplit = !artin_schreier_root(RatFunc::var(f, i - 1)).has_value();
        r.unramified.push_back(std::move(u));
    }
    r.trusted.push_back("index step from unramified division algebras to the tensor with a ramified symbol "
                        "(valuation-theoretic index theorem)");
    r.trusted.push_back("index of D_n is p^n over K_n and over E_n");
    return r;
}

} // namespace charp

#endif
