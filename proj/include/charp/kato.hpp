#ifndef CHARP_KATO_HPP
#define CHARP_KATO_HPP

#include <bit>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "milnor.hpp"
#include "pbasis.hpp"

namespace charp {

// A complete discretely valued field K of characteristic 0 known only through
// its residue field. e_p = v(p) stays symbolic unless instantiated; with a
// p-th root of unity N = e_p * p / (p - 1) is an integer.
struct CDVFModel
{
    FieldDesc residue;
    std::string pi = "pi";
    std::optional<long long> e_p;
    bool has_root_of_unity = true;

    std::optional<long long> level_bound() const
    {
        if (!e_p)
            return std::nullopt;
        return *e_p * residue.p / (residue.p - 1);
    }

    void validate() const
    {
        if (e_p && *e_p <= 0)
            fail(Errc::PreconditionViolated, "v(p) must be positive in characteristic 0");
        if (e_p && has_root_of_unity && (*e_p * residue.p) % (residue.p - 1) != 0)
            fail(Errc::PreconditionViolated, "a p-th root of unity forces (p - 1) | v(p) p");
    }
};

// Opaque unit of R. Units 1 + pi^level * y carry the residue y; the lambdas of
// the level-1 representation carry none and are never evaluated.
struct FormalUnit
{
    std::string name;
    int level = 1;
    int exponent = 1;
    std::optional<RatFunc> residue;
};

// One entry of a cyclic symbol (u, v): optionally pi or a lift of a residue
// element, times formal units.
struct SlotSide
{
    bool pi = false;
    std::optional<RatFunc> lift;
    std::vector<FormalUnit> units;

    static SlotSide residue(const RatFunc& r)
    {
        if (r.is_zero())
            fail(Errc::ZeroElement, "residue lift of 0 in a symbol");
        return {false, r, {}};
    }
    static SlotSide parameter() { return {true, std::nullopt, {}}; }
    static SlotSide unit(FormalUnit u) { return {false, std::nullopt, {std::move(u)}}; }

    SlotSide times(FormalUnit u) const
    {
        SlotSide s = *this;
        s.units.push_back(std::move(u));
        return s;
    }

    bool residue_determined() const { return units.empty(); }

    std::string kind() const
    {
        if (pi)
            return units.empty() ? "Pi" : "Pi*FormalUnit";
        if (lift)
            return units.empty() ? "ResidueLift" : "ResidueLift*FormalUnit";
        return "FormalUnit";
    }
};

struct Slot
{
    SlotSide left;
    SlotSide right;
    int level = 0;
};

struct BrauerPresentation
{
    FieldDesc residue_field;
    std::vector<Slot> slots;
    int level = 0;

    std::size_t symbol_count() const { return slots.size(); }
};

// Image under rho0^{-1}: a k_2 element and a representative of the class in
// k^* / k^{*p}.
struct Rho0Value
{
    MilnorElem k2;
    RatFunc unit;
};

// (x, y) -> {x, y}; (pi, z) -> unit factor z; (z, pi) = -(pi, z) -> 1/z.
inline Rho0Value rho0_inverse(const BrauerPresentation& pres)
{
    const FieldDesc& f = pres.residue_field;
    Rho0Value v{MilnorElem(f), RatFunc::constant(f, 1)};
    for (std::size_t i = 0; i < pres.slots.size(); ++i) {
        const Slot& s = pres.slots[i];
        auto where = "slot " + std::to_string(i + 1) + " (" + s.left.kind() + ", " + s.right.kind() + ")";
        if (!s.left.residue_determined() || !s.right.residue_determined())
            fail(Errc::MalformedSlot, where + " carries formal units");
        if (s.left.pi && s.right.pi)
            fail(Errc::MalformedSlot, where + " pairs pi with itself");
        if (s.left.pi)
            v.unit *= *s.right.lift;
        else if (s.right.pi)
            v.unit /= *s.left.lift;
        else
            v.k2.add(*s.left.lift, *s.right.lift);
    }
    return v;
}

// Drops every formal unit; sides left with nothing are trivial and take the
// whole slot with them.
inline BrauerPresentation residue_part(const BrauerPresentation& pres)
{
    BrauerPresentation r{pres.residue_field, {}, 0};
    for (const auto& s : pres.slots) {
        Slot t = s;
        t.left.units.clear();
        t.right.units.clear();
        t.level = 0;
        if ((!t.left.pi && !t.left.lift) || (!t.right.pi && !t.right.lift))
            continue;
        r.slots.push_back(std::move(t));
    }
    return r;
}

// Removes slots whose unit side lies above the level bound N, where every
// unit is a p-th power; no-op while e_p is symbolic.
inline BrauerPresentation normalize_levels(const BrauerPresentation& pres, const CDVFModel& model)
{
    model.validate();
    auto bound = model.level_bound();
    if (!bound)
        return pres;
    BrauerPresentation r{pres.residue_field, {}, pres.level};
    auto high = [&](const SlotSide& s) {
        if (s.pi || s.lift || s.units.empty())
            return false;
        for (const auto& u : s.units)
            if (u.level <= *bound)
                return false;
        return true;
    };
    for (const auto& s : pres.slots)
        if (!high(s.left) && !high(s.right))
            r.slots.push_back(s);
    return r;
}

// y dlog x -> (1 + pi^i y~, x~) at level i; zero y gives no slot.
inline std::vector<Slot> rho1_apply(const RatFunc& y, const RatFunc& x, int level)
{
    if (level < 1)
        fail(Errc::PreconditionViolated, "rho1 lands in level >= 1");
    if (y.is_zero())
        return {};
    FormalUnit u{"1+pi^" + std::to_string(level) + "*y", level, 1, y};
    return {Slot{SlotSide::unit(u), SlotSide::residue(x), level}};
}

// Sum of y_j dlog x for a fixed x: one slot whose unit is the product of the
// 1 + pi^i y_j, congruent to 1 + pi^i sum y_j.
inline std::vector<Slot> rho1_apply(const std::vector<RatFunc>& ys, const RatFunc& x, int level)
{
    if (level < 1)
        fail(Errc::PreconditionViolated, "rho1 lands in level >= 1");
    if (ys.empty())
        return {};
    SlotSide unit;
    for (std::size_t j = 0; j < ys.size(); ++j) {
        if (ys[j].is_zero())
            continue;
        unit.units.push_back({"1+pi^" + std::to_string(level) + "*y" + std::to_string(j + 1), level, 1, ys[j]});
    }
    if (unit.units.empty())
        return {};
    return {Slot{unit, SlotSide::residue(x), level}};
}

// A degree-1 form sum_j y_j dlog x_j over the coordinate p-basis.
inline std::vector<Slot> rho1_apply(const DiffForm& w, int level)
{
    if (w.degree() != 1)
        fail(Errc::DimensionMismatch, "rho1 takes a 1-form");
    std::vector<Slot> out;
    for (const auto& [idx, c] : w.terms()) {
        int v = std::countr_zero(idx);
        auto s = rho1_apply(c, RatFunc::var(w.field(), v), level);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

struct PresentationCertificate
{
    MilnorElem k2_part;
    RatFunc unit_part;
    bool k2_matches = false;
    bool unit_class_matches = false;
    std::vector<RatFunc> pbasis;
    bool pbasis_certified = false;
    std::vector<std::string> transcript;

    bool holds() const { return k2_matches && unit_class_matches && pbasis_certified; }
};

struct PresentationResult
{
    BrauerPresentation presentation;
    PresentationCertificate certificate;
};

namespace detail {

inline FormalUnit lambda(const std::string& name, int exponent = 1) { return {name, 1, exponent, std::nullopt}; }

inline bool same_unit_class(const RatFunc& u, const RatFunc& c) { return (u / c).pth_root().has_value(); }

inline void certify(PresentationResult& r, const MilnorElem& gamma, const RatFunc& c)
{
    auto v = rho0_inverse(residue_part(r.presentation));
    r.certificate.k2_part = v.k2;
    r.certificate.unit_part = v.unit;
    r.certificate.k2_matches = dlog_map(v.k2) == dlog_map(gamma);
    r.certificate.unit_class_matches = same_unit_class(v.unit, c);
    r.certificate.pbasis_certified =
        p_independent(r.certificate.pbasis, TowerDesc::absolute(gamma.field())).independent;
}

inline void check_residue_data(const MilnorElem& gamma, const RatFunc& c, int rank)
{
    require_same_field(gamma.field(), c.field());
    if (gamma.field().nvars != rank)
        fail(Errc::RankMismatch, "needs residue p-rank " + std::to_string(rank) + ", field has " +
                                     std::to_string(gamma.field().nvars));
    if (c.is_zero())
        fail(Errc::ZeroElement, "unit class of 0");
}

// (u, v) + (lambda, u) = (u, v / lambda): the unit joins the slot of the
// p-basis element it pairs with.
inline Slot pair_slot(const std::optional<RatFunc>& u, const std::optional<RatFunc>& v, const RatFunc& basis_elem,
                      bool basis_left, const std::string& lam)
{
    Slot s;
    if (basis_left) {
        s.left = SlotSide::residue(basis_elem);
        s.right = v ? SlotSide::residue(*v).times(lambda(lam, -1)) : SlotSide::unit(lambda(lam, -1));
        (void)u;
    } else {
        s.left = u ? SlotSide::residue(*u).times(lambda(lam)) : SlotSide::unit(lambda(lam));
        s.right = SlotSide::residue(basis_elem);
    }
    return s;
}

inline Slot pi_slot(const RatFunc& c)
{
    Slot s;
    s.left = SlotSide::parameter();
    s.right = c.is_one() ? SlotSide::unit(lambda("lambda")) : SlotSide::residue(c).times(lambda("lambda"));
    return s;
}

} // namespace detail

// Rank 2: gamma = {a, b} with {a, b} a p-basis, giving
// (a~, b~/lambda1) + (b~, 1/lambda2) + (pi, c~ lambda); or gamma = 0, giving
// (x1, 1/lambda1) + (x2, 1/lambda2) + (pi, c~ lambda).
inline PresentationResult present_rank2(const MilnorElem& gamma, const RatFunc& c, const DecompOptions& opt = {})
{
    detail::check_residue_data(gamma, c, 2);
    const FieldDesc& f = gamma.field();
    PresentationResult r;
    r.presentation.residue_field = f;
    DiffForm theta = dlog_map(gamma);
    Rank2Decomposition d;
    try {
        d = decompose_rank2(theta, opt);
    } catch (const Error& e) {
        if (e.code() == Errc::SolveFailed || e.code() == Errc::BudgetExhausted)
            fail(Errc::DecomposeFailed, std::string("rank 2 decomposition: ") + e.what());
        throw;
    }
    auto& tr = r.certificate.transcript;
    if (!d.zero) {
        tr.push_back("gamma = {a, b} with {a, b} a p-basis");
        r.presentation.slots.push_back(detail::pair_slot(std::nullopt, d.z2, d.z1, true, "lambda1"));
        r.presentation.slots.push_back(detail::pair_slot(std::nullopt, std::nullopt, d.z2, true, "lambda2"));
        r.certificate.pbasis = {d.z1, d.z2};
    } else {
        tr.push_back("gamma = 0 in k_2; replacement p-basis {x1, x2}");
        RatFunc e = RatFunc::var(f, 0), g = RatFunc::var(f, 1);
        r.presentation.slots.push_back(detail::pair_slot(std::nullopt, std::nullopt, e, true, "lambda1"));
        r.presentation.slots.push_back(detail::pair_slot(std::nullopt, std::nullopt, g, true, "lambda2"));
        r.certificate.pbasis = {e, g};
    }
    r.presentation.slots.push_back(detail::pi_slot(c));
    tr.push_back("level-1 remainder absorbed by units lambda1, lambda2, lambda");
    detail::certify(r, gamma, c);
    return r;
}

// Rank 3: theorem_rep gives {x1,x2} + {y1,y2} + {z1,z2} with {x1, y2, z1} a
// p-basis; the lambdas of that basis join the matching slots:
// (x1, x2/lambda1) + (y1 lambda2, y2) + (z1, z2/lambda3) + (pi, c lambda).
inline PresentationResult present_rank3(const MilnorElem& gamma, const RatFunc& c, const DecompOptions& opt = {})
{
    detail::check_residue_data(gamma, c, 3);
    const FieldDesc& f = gamma.field();
    PresentationResult r;
    r.presentation.residue_field = f;
    DiffForm theta = dlog_map(gamma);
    SymbolDecomposition d;
    try {
        d = theorem_rep(theta, opt);
    } catch (const Error& e) {
        if (e.code() == Errc::SolveFailed || e.code() == Errc::BudgetExhausted)
            fail(Errc::DecomposeFailed, std::string("rank 3 decomposition: ") + e.what());
        throw;
    }
    auto& tr = r.certificate.transcript;
    tr.push_back("gamma = {x1,x2} + {y1,y2} + {z1,z2}, p-basis {x1, y2, z1}");
    r.presentation.slots.push_back(detail::pair_slot(d.x.first, d.x.second, *d.x.first, true, "lambda1"));
    r.presentation.slots.push_back(detail::pair_slot(d.y.first, d.y.second, *d.y.second, false, "lambda2"));
    r.presentation.slots.push_back(detail::pair_slot(d.z.first, d.z.second, *d.z.first, true, "lambda3"));
    r.presentation.slots.push_back(detail::pi_slot(c));
    for (const char* name : {"x", "y", "z"}) {
        const SymbolPair& s = name[0] == 'x' ? d.x : name[0] == 'y' ? d.y : d.z;
        if (s.is_zero())
            tr.push_back(std::string("pair ") + name + " is the formal zero; its slot keeps only the p-basis element");
    }
    tr.push_back("level-1 remainder absorbed by units lambda1, lambda2, lambda3, lambda");
    r.certificate.pbasis = d.pbasis;
    detail::certify(r, gamma, c);
    return r;
}

struct OddlowResult
{
    BrauerPresentation presentation;
    bool independent = false;
    DiffForm wedge_sum;
    bool wedge_nonzero = false;
    DiffForm extended_wedge_sum;
    bool extended_wedge_nonzero = false;
    bool last_is_pth_power_in_extension = false;
    int root_variable = -1;
    std::vector<std::string> trusted;

    bool holds() const { return independent && wedge_nonzero && extended_wedge_nonzero && last_is_pth_power_in_extension; }
};

// D = (a1, a2) + ... + (a_{2n-1}, a_{2n}) + (a_{2n+1}, pi). Default a_i = x_i.
// The root of a_{2n+1} is adjoined by substitution, which needs a_{2n+1} to
// be c * x_j * (monomial free of x_j): then x_j -> s^p / (c * rest) with s
// reusing the slot of x_j, and a_{2n+1} becomes s^p.
inline OddlowResult oddlow_witness(int n, const CDVFModel& model, std::vector<RatFunc> a = {})
{
    model.validate();
    const FieldDesc& f = model.residue;
    if (!model.has_root_of_unity)
        fail(Errc::PreconditionViolated, "needs a p-th root of unity in K");
    if (n < 1)
        fail(Errc::PreconditionViolated, "n must be at least 1");
    if (2 * n + 1 > f.nvars)
        fail(Errc::RankTooLow, "needs p-rank >= " + std::to_string(2 * n + 1) + ", field has " +
                                   std::to_string(f.nvars));
    if (a.empty())
        for (int i = 0; i < 2 * n + 1; ++i)
            a.push_back(RatFunc::var(f, i));
    if (a.size() != static_cast<std::size_t>(2 * n + 1))
        fail(Errc::DimensionMismatch, "needs exactly 2n + 1 elements");
    for (const auto& e : a) {
        require_same_field(f, e.field());
        if (e.is_zero())
            fail(Errc::ZeroElement, "zero entry");
    }
    OddlowResult r;
    r.presentation.residue_field = f;
    for (int i = 0; i < n; ++i)
        r.presentation.slots.push_back({SlotSide::residue(a[2 * i]), SlotSide::residue(a[2 * i + 1]), 0});
    r.presentation.slots.push_back({SlotSide::residue(a[2 * n]), SlotSide::parameter(), 0});

    const RatFunc& last = a[2 * n];
    int j = -1;
    if (last.is_polynomial() && last.num().is_monomial()) {
        const Term& t = last.num().lead();
        for (int v = 0; v < f.nvars && j < 0; ++v)
            if (t.m.e[v] == 1)
                j = v;
    }
    if (j < 0)
        fail(Errc::NonCoordinateRoot, "p-th root adjunction is modeled only for c * x_j * (monomial free of x_j)");
    r.root_variable = j;

    auto t = TowerDesc::absolute(f);
    r.independent = p_independent(a, t).independent;
    auto wedge_sum = [&](const std::vector<RatFunc>& elems) {
        DiffForm w(t, 2);
        for (int i = 0; i < n; ++i)
            w = w + dlog_wedge(t, elems[2 * i], elems[2 * i + 1]);
        return w;
    };
    r.wedge_sum = wedge_sum(a);
    r.wedge_nonzero = !r.wedge_sum.is_zero();

    const Term& lt = last.num().lead();
    Monomial rest = lt.m;
    rest.e[j] = 0;
    rest.deg -= 1;
    RatFunc rest_val = RatFunc(Poly::monomial(f, rest, lt.c));
    std::vector<std::optional<RatFunc>> subs(f.nvars);
    subs[j] = RatFunc::var(f, j).pow(f.p) / rest_val;
    std::vector<RatFunc> ext;
    for (const auto& e : a)
        ext.push_back(e.substitute(subs));
    r.last_is_pth_power_in_extension = ext[2 * n].pth_root().has_value();
    r.extended_wedge_sum = wedge_sum(ext);
    r.extended_wedge_nonzero = !r.extended_wedge_sum.is_zero();
    r.trusted.push_back("index p^(n+1) of D (splitting-field degree argument)");
    return r;
}

struct DivisionWitness
{
    BrauerPresentation presentation;
    SabResult sab;
    std::vector<std::string> trusted;
};

// (a, b) + (c, pi) with c in S_{a,b}, certified by the monomial support of c.
inline DivisionWitness division_witness(const RatFunc& a, const RatFunc& b, const RatFunc& c, const CDVFModel& model)
{
    model.validate();
    if (!model.has_root_of_unity)
        fail(Errc::PreconditionViolated, "needs a p-th root of unity in K");
    if (!p_independent({a, b}).independent)
        fail(Errc::NotIndependent, "{a, b} is p-dependent");
    if (c.is_zero())
        fail(Errc::NotInSab, "0 is not in S_{a,b}");
    DivisionWitness w;
    w.sab = sab_test(c, a, b);
    if (!w.sab.member)
        fail(Errc::NotInSab, "support of c lies in {0} or in {(i, j, 0, ..) : i + j > 0}");
    w.presentation.residue_field = a.field();
    w.presentation.slots.push_back({SlotSide::residue(a), SlotSide::residue(b), 0});
    w.presentation.slots.push_back({SlotSide::residue(c), SlotSide::parameter(), 0});
    w.trusted.push_back("(a, b) + (c, pi) is a division algebra (order-theoretic argument)");
    return w;
}

} // namespace charp

#endif
