#ifndef CHARP_PBASIS_HPP
#define CHARP_PBASIS_HPP

#include <string>
#include <utility>
#include <vector>

#include "forms.hpp"

namespace charp {

struct IndependenceResult
{
    bool independent = false;
    DiffForm certificate;
};

// Wedge of the dlogs of elems in Omega_{k/F}. Over a non-coordinate tower
// the base is cut out by wedging with the dlogs of its generators.
inline IndependenceResult p_independent(const std::vector<RatFunc>& elems, const TowerDesc& tower)
{
    for (const auto& e : elems)
        if (e.is_zero())
            fail(Errc::ZeroElement, "p-independence of a list containing 0");
    IndependenceResult r;
    const bool coord = tower.basis.is_coordinate();
    TowerDesc work = coord ? tower : TowerDesc::absolute(tower.field());
    DiffForm w = DiffForm::scalar(work, RatFunc::constant(work.field(), 1));
    for (const auto& e : elems)
        w = wedge(w, DiffForm::dlog(work, e));
    if (!coord)
        for (int i = 0; i < tower.rank(); ++i)
            if (!tower.is_free(i))
                w = wedge(w, DiffForm::dlog(work, tower.basis.elems[i]));
    r.independent = !w.is_zero();
    r.certificate = std::move(w);
    return r;
}

inline IndependenceResult p_independent(const std::vector<RatFunc>& elems)
{
    if (elems.empty())
        fail(Errc::DimensionMismatch, "empty element list");
    return p_independent(elems, TowerDesc::absolute(elems.front().field()));
}

// Appends coordinates x_i, in index order, while the wedge stays nonzero.
inline PBasis complete_pbasis(const std::vector<RatFunc>& elems)
{
    if (elems.empty())
        fail(Errc::DimensionMismatch, "empty element list");
    const FieldDesc& f = elems.front().field();
    auto t = TowerDesc::absolute(f);
    auto start = p_independent(elems, t);
    if (!start.independent)
        fail(Errc::NotIndependent, "elements are p-dependent");
    PBasis b{f, elems};
    DiffForm w = start.certificate;
    for (int i = 0; i < f.nvars && static_cast<int>(b.elems.size()) < f.nvars; ++i) {
        DiffForm next = wedge(w, DiffForm::dlog_coord(t, i));
        if (next.is_zero())
            continue;
        b.elems.push_back(RatFunc::var(f, i));
        w = std::move(next);
    }
    if (static_cast<int>(b.elems.size()) != f.nvars)
        fail(Errc::InternalError, "could not complete to a p-basis");
    return b;
}

// A p-th power test in p-rank 2 that never takes a root: c is a p-th power
// iff neither {a, c} nor {b, c} is a p-basis.
inline bool ppower_by_criterion(const RatFunc& c, const RatFunc& a, const RatFunc& b)
{
    const FieldDesc& f = c.field();
    if (f.nvars != 2)
        fail(Errc::RankMismatch, "criterion needs p-rank 2, field has " + std::to_string(f.nvars));
    if (!p_independent({a, b}).independent)
        fail(Errc::NotIndependent, "{a, b} is not a p-basis");
    if (c.is_zero())
        return true;
    return !p_independent({a, c}).independent && !p_independent({b, c}).independent;
}

struct SabResult
{
    bool member = false;
    PBasis basis;
    std::vector<Mu> support;
};

// c lies in S_{a,b} iff its decomposition over a completed p-basis {a, b, ...}
// has support outside {0} and outside {(i, j, 0, ..., 0) : i + j > 0}.
inline SabResult sab_test(const RatFunc& c, const RatFunc& a, const RatFunc& b)
{
    SabResult r;
    if (!p_independent({a, b}).independent)
        fail(Errc::NotIndependent, "{a, b} is p-dependent");
    r.basis = complete_pbasis({a, b});
    auto dec = monomial_decompose(c, TowerDesc{r.basis, 0});
    r.support = dec.support();
    bool outside_zero = false, outside_ab = false;
    for (const auto& mu : r.support) {
        if (!mu_is_zero(mu))
            outside_zero = true;
        bool rest_zero = true;
        for (std::size_t k = 2; k < mu.size(); ++k)
            rest_zero = rest_zero && mu[k] == 0;
        if (!rest_zero || mu[0] + mu[1] == 0)
            outside_ab = true;
    }
    r.member = outside_zero && outside_ab;
    return r;
}

} // namespace charp

#endif
