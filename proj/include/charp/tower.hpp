#ifndef CHARP_TOWER_HPP
#define CHARP_TOWER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "ratfunc.hpp"

namespace charp {

// Ordered list of p-independent elements. Independence is established by
// the constructors in pbasis.hpp; this type only carries the data.
struct PBasis
{
    FieldDesc field;
    std::vector<RatFunc> elems;

    static PBasis coordinates(const FieldDesc& f)
    {
        PBasis b{f, {}};
        for (int i = 0; i < f.nvars; ++i)
            b.elems.push_back(RatFunc::var(f, i));
        return b;
    }

    // b_i = x_i for every i.
    bool is_coordinate() const
    {
        if (static_cast<int>(elems.size()) != field.nvars)
            return false;
        for (int i = 0; i < field.nvars; ++i)
            if (!(elems[i] == RatFunc::var(field, i)))
                return false;
        return true;
    }
};

// The extension k / F with F = k^p(b_i : i in base). Only base indices are
// stored; free indices are the rest.
struct TowerDesc
{
    PBasis basis;
    unsigned base = 0;

    static TowerDesc absolute(const FieldDesc& f) { return {PBasis::coordinates(f), 0}; }
    static TowerDesc coordinate(const FieldDesc& f, unsigned base_mask) { return {PBasis::coordinates(f), base_mask}; }

    const FieldDesc& field() const noexcept { return basis.field; }
    int rank() const noexcept { return static_cast<int>(basis.elems.size()); }
    bool is_free(int i) const noexcept { return !(base & (1u << i)); }
    int relative_rank() const noexcept { return static_cast<int>(free_indices().size()); }

    std::vector<int> free_indices() const
    {
        std::vector<int> out;
        for (int i = 0; i < rank(); ++i)
            if (is_free(i))
                out.push_back(i);
        return out;
    }

    unsigned free_mask() const noexcept { return ((1u << rank()) - 1) & ~base; }

    friend bool operator==(const TowerDesc& a, const TowerDesc& b)
    {
        return a.base == b.base && a.basis.field == b.basis.field && a.basis.elems == b.basis.elems;
    }
};

inline void require_coordinate(const TowerDesc& t)
{
    if (!t.basis.is_coordinate())
        fail(Errc::NotCoordinate, "operation needs the coordinate p-basis x1..xn");
}

// Exponent vector over the free indices of a tower, entries in 0..p-1.
using Mu = std::vector<std::uint8_t>;

inline bool mu_is_zero(const Mu& m)
{
    for (auto e : m)
        if (e != 0)
            return false;
    return true;
}

// a = sum_mu A_mu * b^mu with A_mu in the base F of the tower. For an
// absolute tower A_mu = c_mu^p and root() returns c_mu.
struct MonomialDecomp
{
    TowerDesc tower;
    std::map<Mu, RatFunc> parts;

    bool is_zero() const { return parts.empty(); }

    std::vector<Mu> support() const
    {
        std::vector<Mu> s;
        for (const auto& [m, _] : parts)
            s.push_back(m);
        return s;
    }

    RatFunc part(const Mu& m) const
    {
        auto it = parts.find(m);
        return it == parts.end() ? RatFunc(tower.field()) : it->second;
    }

    RatFunc zero_part() const { return part(Mu(tower.relative_rank(), 0)); }

    std::optional<RatFunc> root(const Mu& m) const { return part(m).pth_root(); }
};

// b^mu over the free indices.
inline RatFunc basis_power(const TowerDesc& t, const Mu& mu)
{
    RatFunc r = RatFunc::constant(t.field(), 1);
    auto fr = t.free_indices();
    for (std::size_t k = 0; k < fr.size(); ++k)
        if (mu[k] != 0)
            r *= t.basis.elems[fr[k]].pow(mu[k]);
    return r;
}

inline RatFunc reconstruct(const MonomialDecomp& d)
{
    RatFunc s(d.tower.field());
    for (const auto& [mu, a] : d.parts)
        s += a * basis_power(d.tower, mu);
    return s;
}

namespace detail {

// Groups the terms of a polynomial by exponent residues mod p on the free
// coordinates, dividing each group by its x^mu.
inline std::map<Mu, Poly> bucket_by_residue(const Poly& a, const std::vector<int>& free)
{
    const int p = a.prime();
    std::map<Mu, std::vector<Term>> buckets;
    for (const auto& t : a.terms()) {
        Mu mu(free.size());
        Term u = t;
        for (std::size_t k = 0; k < free.size(); ++k) {
            int r = t.m.e[free[k]] % p;
            mu[k] = static_cast<std::uint8_t>(r);
            u.m.e[free[k]] = static_cast<std::uint16_t>(u.m.e[free[k]] - r);
            u.m.deg -= r;
        }
        buckets[mu].push_back(u);
    }
    std::map<Mu, Poly> out;
    for (auto& [mu, terms] : buckets)
        out.emplace(mu, Poly::from_sorted(a.field(), std::move(terms)));
    return out;
}

inline bool free_exponents_divisible(const Poly& a, const std::vector<int>& free)
{
    for (const auto& t : a.terms())
        for (int i : free)
            if (t.m.e[i] % a.prime() != 0)
                return false;
    return true;
}

inline MonomialDecomp coordinate_decompose(const RatFunc& c, const TowerDesc& t)
{
    MonomialDecomp d{t, {}};
    if (c.is_zero())
        return d;
    const auto free = t.free_indices();
    const int p = c.prime();
    Poly num = c.num();
    Poly den_in_base = c.den();
    bool den_ready = free_exponents_divisible(c.den(), free);
    if (!den_ready) {
        // c = N D^(p-1) / D^p with D^p in k^p.
        num = num * c.den().pow(static_cast<unsigned>(p - 1));
        den_in_base = c.den().pow(static_cast<unsigned>(p));
    }
    const bool absolute = t.base == 0;
    for (auto& [mu, bucket] : bucket_by_residue(num, free)) {
        if (absolute) {
            // Root first: the gcd then runs on polynomials p times smaller.
            RatFunc root = RatFunc::normalize(*bucket.pth_root(), *den_in_base.pth_root());
            d.parts.emplace(mu, root.frobenius());
        } else {
            d.parts.emplace(mu, RatFunc::normalize(bucket, den_in_base));
        }
    }
    return d;
}

} // namespace detail

// Decomposes c = sum_mu c_mu^p b^mu for an absolute p-basis given by
// arbitrary elements: one p^n x p^n linear solve over k on the coordinate
// roots of c and of every b^nu.
inline MonomialDecomp general_decompose(const RatFunc& c, const TowerDesc& t)
{
    const FieldDesc& f = t.field();
    if (t.base != 0)
        fail(Errc::NotCoordinate, "relative towers over a non-coordinate p-basis are not supported");
    if (t.rank() != f.nvars)
        fail(Errc::RankMismatch, "p-basis has " + std::to_string(t.rank()) + " elements, field has p-rank " +
                                     std::to_string(f.nvars));
    const int p = f.p;
    const int n = f.nvars;
    auto coord = TowerDesc::absolute(f);
    std::vector<Mu> mus;
    {
        Mu m(n, 0);
        while (true) {
            mus.push_back(m);
            int k = n - 1;
            while (k >= 0 && m[k] == p - 1)
                m[k--] = 0;
            if (k < 0)
                break;
            ++m[k];
        }
    }
    std::map<Mu, std::size_t> index;
    for (std::size_t i = 0; i < mus.size(); ++i)
        index[mus[i]] = i;
    const std::size_t dim = mus.size();
    Mat m(dim, Vec(dim, RatFunc(f)));
    for (std::size_t col = 0; col < dim; ++col) {
        auto dec = detail::coordinate_decompose(basis_power(t, mus[col]), coord);
        for (const auto& [mu, a] : dec.parts)
            m[index[mu]][col] = *a.pth_root();
    }
    Vec rhs(dim, RatFunc(f));
    for (const auto& [mu, a] : detail::coordinate_decompose(c, coord).parts)
        rhs[index[mu]] = *a.pth_root();
    auto sol = linsolve(m, rhs);
    if (!sol.solution || !sol.kernel.empty())
        fail(Errc::NotIndependent, "elements do not form a p-basis");
    MonomialDecomp d{t, {}};
    for (std::size_t i = 0; i < dim; ++i)
        if (!(*sol.solution)[i].is_zero())
            d.parts.emplace(mus[i], (*sol.solution)[i].frobenius());
    return d;
}

inline MonomialDecomp monomial_decompose(const RatFunc& c, const TowerDesc& t)
{
    require_same_field(c.field(), t.field());
    if (t.basis.is_coordinate())
        return detail::coordinate_decompose(c, t);
    return general_decompose(c, t);
}

inline std::optional<RatFunc> pth_root(const RatFunc& c) { return c.pth_root(); }

} // namespace charp

#endif
