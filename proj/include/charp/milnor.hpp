#ifndef CHARP_MILNOR_HPP
#define CHARP_MILNOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbasis.hpp"

namespace charp {

struct Symbol
{
    RatFunc a;
    RatFunc b;
    int mult = 1;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Formal sum of symbols {a, b} in k_2(k) = K_2(k)/p.
class MilnorElem
{
public:
    MilnorElem() = default;
    explicit MilnorElem(const FieldDesc& f) : f_(f) {}

    const FieldDesc& field() const noexcept { return f_; }
    const std::vector<Symbol>& symbols() const noexcept { return s_; }
    bool empty() const noexcept { return s_.empty(); }

    void add(const RatFunc& a, const RatFunc& b, int mult = 1)
    {
        require_same_field(f_, a.field());
        require_same_field(f_, b.field());
        if (a.is_zero() || b.is_zero())
            fail(Errc::ZeroElement, "symbol entries must be nonzero");
        int m = fp::reduce(mult, f_.p);
        if (m != 0)
            s_.push_back({a, b, m});
    }

    friend MilnorElem operator+(const MilnorElem& x, const MilnorElem& y)
    {
        require_same_field(x.f_, y.f_);
        MilnorElem r = x;
        for (const auto& s : y.s_)
            r.s_.push_back(s);
        return r;
    }

    // Equality of formal sums, not of classes in k_2.
    friend bool operator==(const MilnorElem&, const MilnorElem&) = default;

    MilnorElem scaled(int c) const
    {
        MilnorElem r(f_);
        for (const auto& s : s_)
            r.add(s.a, s.b, s.mult * c);
        return r;
    }

private:
    FieldDesc f_;
    std::vector<Symbol> s_;
};

inline DiffForm dlog_wedge(const TowerDesc& t, const RatFunc& a, const RatFunc& b)
{
    return wedge(DiffForm::dlog(t, a), DiffForm::dlog(t, b));
}

// sum mult * dlog a ^ dlog b over the absolute coordinate tower.
inline DiffForm dlog_map(const MilnorElem& m)
{
    auto t = TowerDesc::absolute(m.field());
    DiffForm w(t, 2);
    for (const auto& s : m.symbols()) {
        DiffForm term = dlog_wedge(t, s.a, s.b);
        w = w + RatFunc::constant(m.field(), s.mult) * term;
    }
    return w;
}

// Counts expensive sub-steps; exceeding the limit raises BudgetExhausted.
class StepBudget
{
public:
    explicit StepBudget(long long limit = 1'000'000) : limit_(limit) {}

    void charge(const char* what)
    {
        if (++used_ > limit_)
            fail(Errc::BudgetExhausted, std::string("step budget exhausted at ") + what);
    }

    long long used() const noexcept { return used_; }

private:
    long long limit_;
    long long used_ = 0;
};

// A k-linear map g : E = k(b) -> k with b^p = beta in k, given on the basis
// 1, b, ..., b^(p-1).
struct LinearFunctional
{
    int p = 2;
    RatFunc b;
    RatFunc beta;
    std::vector<RatFunc> values;

    // c given by coordinates over the basis b^i.
    RatFunc operator()(const std::vector<RatFunc>& c) const
    {
        RatFunc s(b.field());
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero() && !values[i].is_zero())
                s += c[i] * values[i];
        return s;
    }

    bool is_zero() const
    {
        for (const auto& v : values)
            if (!v.is_zero())
                return false;
        return true;
    }
};

namespace detail {

// Product in k(b) on coordinate vectors, reducing b^p = beta.
inline std::vector<RatFunc> ext_mul(const std::vector<RatFunc>& x, const std::vector<RatFunc>& y,
                                    const RatFunc& beta)
{
    const std::size_t p = x.size();
    std::vector<RatFunc> r(p, RatFunc(beta.field()));
    for (std::size_t i = 0; i < p; ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < p; ++j) {
            if (y[j].is_zero())
                continue;
            RatFunc c = x[i] * y[j];
            if (i + j >= p)
                r[i + j - p] += c * beta;
            else
                r[i + j] += c;
        }
    }
    return r;
}

inline RatFunc ext_value(const std::vector<RatFunc>& c, const RatFunc& b)
{
    RatFunc s(b.field());
    RatFunc bi = RatFunc::constant(b.field(), 1);
    for (const auto& ci : c) {
        if (!ci.is_zero())
            s += ci * bi;
        bi *= b;
    }
    return s;
}

} // namespace detail

struct SuperZeroOptions
{
    int degree_bound = 1;
    long long max_candidates = 20000;
};

// c in E* with g(c^i) = 0 for 1 <= i <= p-1, and c outside k when g(1) != 0.
// For p = 2 this is the kernel of one functional on a plane. For odd p the
// conditions are polynomial; candidates sum_j u_j b^j with u_j in
// F_p[beta] of degree <= degree_bound are enumerated and nullopt is returned
// when none works.
inline std::optional<RatFunc> super_zero(const LinearFunctional& g, const SuperZeroOptions& opt = {})
{
    const int p = g.p;
    const FieldDesc& f = g.b.field();
    if (static_cast<int>(g.values.size()) != p || f.p != p)
        fail(Errc::DimensionMismatch, "functional needs p values");
    if (!(g.b.pow(p) == g.beta) || g.b.pth_root())
        fail(Errc::DegenerateExtension, "b must satisfy b^p = beta with b not a p-th power");
    if (g.is_zero())
        return RatFunc::constant(f, 1);
    if (p == 2) {
        if (g.values[0].is_zero())
            return g.values[1];
        return g.values[1] - g.values[0] * g.b;
    }
    const bool need_outside = !g.values[0].is_zero();
    const int per = opt.degree_bound + 1;
    const int digits = per * p;
    std::vector<RatFunc> beta_pows(per, RatFunc::constant(f, 1));
    for (int e = 1; e < per; ++e)
        beta_pows[e] = beta_pows[e - 1] * g.beta;
    std::vector<int> digit(digits, 0);
    long long tried = 0;
    while (true) {
        int k = 0;
        while (k < digits && digit[k] == p - 1)
            digit[k++] = 0;
        if (k == digits)
            return std::nullopt;
        ++digit[k];
        if (++tried > opt.max_candidates)
            return std::nullopt;
        std::vector<RatFunc> c(p, RatFunc(f));
        bool outside = false;
        for (int j = 0; j < p; ++j)
            for (int e = 0; e < per; ++e) {
                int d = digit[j * per + e];
                if (d != 0) {
                    c[j] += beta_pows[e].scaled(static_cast<std::uint8_t>(d));
                    if (j > 0)
                        outside = true;
                }
            }
        if (need_outside && !outside)
            continue;
        std::vector<RatFunc> power = c;
        bool ok = true;
        for (int i = 1; i < p && ok; ++i) {
            if (i > 1)
                power = detail::ext_mul(power, c, g.beta);
            ok = g(power).is_zero();
        }
        if (ok)
            return detail::ext_value(c, g.b);
    }
}

// Membership z in F(b_i : i in allowed) \ F(b_i : i in allowed, i != fresh),
// read off the absolute monomial support of z.
struct Membership
{
    std::string claim;
    bool holds = false;
};

inline bool in_subfield(const RatFunc& z, unsigned allowed)
{
    auto d = monomial_decompose(z, TowerDesc::absolute(z.field()));
    for (const auto& mu : d.support())
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (mu[i] != 0 && !(allowed & (1u << i)))
                return false;
    return true;
}

inline bool uses_index(const RatFunc& z, int fresh)
{
    auto d = monomial_decompose(z, TowerDesc::absolute(z.field()));
    for (const auto& mu : d.support())
        if (mu[fresh] != 0)
            return true;
    return false;
}

inline Membership membership(const std::string& name, const RatFunc& z, unsigned allowed, int fresh)
{
    std::string field = "F(";
    bool first = true;
    std::string smaller = "F";
    std::string inner;
    for (int i = 0; i < kMaxVars; ++i)
        if (allowed & (1u << i)) {
            field += (first ? "b" : ",b") + std::to_string(i + 1);
            if (i != fresh)
                inner += (inner.empty() ? "b" : ",b") + std::to_string(i + 1);
            first = false;
        }
    field += ")";
    if (!inner.empty())
        smaller = "F(" + inner + ")";
    return {name + " in " + field + " \\ " + smaller, in_subfield(z, allowed) && uses_index(z, fresh)};
}

struct LemmaDecompResult
{
    RatFunc e0;
    RatFunc e1;
};

// Splits a = e0 + e1 with e0 in the base and e1 in the span of monomials that
// involve a free index other than b1, after checking that
// b1^i * a * w is exact for 1 <= i <= p-1.
inline LemmaDecompResult lemma_decomp_split(const RatFunc& a, const DiffForm& w, int b1)
{
    const TowerDesc& t = w.tower();
    if (!t.is_free(b1))
        fail(Errc::TowerMismatch, "b1 must be a free index of the tower");
    const int p = t.field().p;
    RatFunc xb = RatFunc::var(t.field(), b1);
    RatFunc pw = xb;
    for (int i = 1; i < p; ++i, pw *= xb)
        if (!is_boundary((pw * a) * w).boundary)
            fail(Errc::HypothesisFails, "b1^" + std::to_string(i) + " * a * w is not exact");
    auto dec = monomial_decompose(a, t);
    auto free = t.free_indices();
    std::size_t k1 = 0;
    while (free[k1] != b1)
        ++k1;
    LemmaDecompResult r{RatFunc(t.field()), RatFunc(t.field())};
    for (const auto& [mu, part] : dec.parts) {
        bool other = false;
        for (std::size_t k = 0; k < mu.size(); ++k)
            if (k != k1 && mu[k] != 0)
                other = true;
        RatFunc term = part * basis_power(t, mu);
        if (mu_is_zero(mu))
            r.e0 += term;
        else if (other)
            r.e1 += term;
        else
            fail(Errc::InternalError, "pure b1-power component survived the exactness hypothesis");
    }
    if (!(r.e0 + r.e1 == a))
        fail(Errc::InternalError, "decomposition does not reassemble");
    return r;
}

// Tower whose only free coordinate is v.
inline TowerDesc single_free(const FieldDesc& f, int v)
{
    unsigned all = (1u << f.nvars) - 1;
    return TowerDesc::coordinate(f, all & ~(1u << v));
}

// y with a dlog b1 ^ dlog b2 = dlog b1 ^ dlog y over the given tower, found
// by solving a dlog b2 = dlog y relative to the base extended by b1.
inline RatFunc lemma_symbol_solve(const RatFunc& a, const TowerDesc& t, int b1, int b2)
{
    require_coordinate(t);
    if (!t.is_free(b1) || !t.is_free(b2) || b1 == b2)
        fail(Errc::TowerMismatch, "b1 and b2 must be distinct free indices");
    const FieldDesc& f = t.field();
    if (a.is_zero())
        fail(Errc::HypothesisFails, "a must be nonzero");
    unsigned s = (1u << b1) | (1u << b2);
    DiffForm w12(t, 2);
    w12.add_term(s, RatFunc::constant(f, 1));
    if (!is_boundary((a.frobenius() - a) * w12).boundary)
        fail(Errc::HypothesisFails, "(a^p - a) dlog b1 ^ dlog b2 is not exact");
    auto dec = monomial_decompose(a, t);
    auto free = t.free_indices();
    for (const auto& [mu, part] : dec.parts) {
        bool only_b1 = false, other = false;
        for (std::size_t k = 0; k < mu.size(); ++k) {
            if (mu[k] == 0)
                continue;
            if (free[k] == b1)
                only_b1 = true;
            else
                other = true;
        }
        if (only_b1 && !other)
            fail(Errc::HypothesisFails, "a has a pure b1-power component");
    }
    TowerDesc rank1{t.basis, t.base | (t.free_mask() & ~(1u << b2))};
    DiffForm one = a * DiffForm::dlog_coord(rank1, b2);
    auto y = dlog_solve(one);
    if (!y)
        fail(Errc::SolveFailed, "a dlog b2 is not logarithmic over the extended base");
    DiffForm lhs = a * w12;
    DiffForm rhs = wedge(DiffForm::dlog_coord(t, b1), DiffForm::dlog(t, *y));
    if (!(lhs == rhs))
        fail(Errc::SolveFailed, "solution does not satisfy the identity over the tower");
    return *y;
}

// dlog y = a dlog x_v relative to all other coordinates.
inline RatFunc solve_log_coordinate(const RatFunc& a, int v, StepBudget& budget, const char* where)
{
    budget.charge(where);
    auto t = single_free(a.field(), v);
    auto y = dlog_solve(a * DiffForm::dlog_coord(t, v));
    if (!y)
        fail(Errc::SolveFailed, std::string(where) + ": coefficient form is not logarithmic");
    return *y;
}

inline RatFunc super_zero_or_fail(const LinearFunctional& g, const SuperZeroOptions& opt, StepBudget& budget,
                                  const char* where)
{
    budget.charge(where);
    auto c = super_zero(g, opt);
    if (!c)
        fail(Errc::SolveFailed, std::string(where) + ": super_zero found no element within the degree bound");
    return *c;
}

inline void require_nu2(const DiffForm& w)
{
    if (w.degree() != 2)
        fail(Errc::DimensionMismatch, "expected a 2-form");
    if (w.tower().base != 0)
        fail(Errc::TowerMismatch, "expected a form over k / k^p");
    if (!nu_member(w).member)
        fail(Errc::NotInNu2, "form is not in nu(2)");
}

struct DecompOptions
{
    SuperZeroOptions super_zero;
    long long step_budget = 1'000'000;
    bool check_membership = true;
};

struct LemmaOneResult
{
    RatFunc z1;
    RatFunc z2;
};

namespace detail {

// g(c) = zero component of c * a over the tower, for c = 1, b, ..., b^(p-1).
inline LinearFunctional functional_from(const RatFunc& a, const TowerDesc& t, int v)
{
    const FieldDesc& f = a.field();
    LinearFunctional g{f.p, RatFunc::var(f, v), RatFunc::var(f, v).pow(f.p), {}};
    RatFunc c = RatFunc::constant(f, 1);
    for (int i = 0; i < f.p; ++i) {
        g.values.push_back(monomial_decompose(c * a, t).zero_part());
        c *= g.b;
    }
    return g;
}

inline std::uint32_t coeff_index(int i, int j) { return (1u << i) | (1u << j); }

} // namespace detail

// w = a dlog b1 ^ dlog b2 in nu(2) with b_i = x_i.
inline LemmaOneResult lemma_one_step(const DiffForm& w, const DecompOptions& opt, StepBudget& budget)
{
    const TowerDesc& t = w.tower();
    const FieldDesc& f = t.field();
    if (f.nvars < 2)
        fail(Errc::RankMismatch, "needs p-rank at least 2");
    for (const auto& [s, c] : w.terms())
        if (s != detail::coeff_index(0, 1))
            fail(Errc::PreconditionViolated, "form must be a multiple of dlog b1 ^ dlog b2");
    RatFunc a = w.coeff(detail::coeff_index(0, 1));
    if (a.is_zero())
        fail(Errc::PreconditionViolated, "coefficient a must be nonzero");
    if (opt.check_membership)
        require_nu2(w);
    if (!in_subfield(a, 0b11))
        fail(Errc::NotInNu2, "coefficient is not in F(b1, b2)");
    auto g = detail::functional_from(a, t, 0);
    RatFunc z1 = super_zero_or_fail(g, opt.super_zero, budget, "lemma one");
    RatFunc tcoef = DiffForm::dlog(t, z1).coeff(1u << 0);
    if (tcoef.is_zero())
        fail(Errc::InternalError, "lemma one: z1 lies in F");
    RatFunc z2 = solve_log_coordinate(a / tcoef, 1, budget, "lemma one");
    if (!(dlog_wedge(t, z1, z2) == w))
        fail(Errc::InternalError, "lemma one: recomposition differs");
    return {z1, z2};
}

inline LemmaOneResult lemma_one_step(const DiffForm& w, const DecompOptions& opt = {})
{
    StepBudget budget(opt.step_budget);
    return lemma_one_step(w, opt, budget);
}

struct LemmaTwoResult
{
    RatFunc a1;
    RatFunc z1;
    RatFunc z2;
};

// w = a1 w12 + a2 w13 in nu(2), a2 != 0, p-rank 3.
inline LemmaTwoResult lemma_two_step(const DiffForm& w, const DecompOptions& opt, StepBudget& budget)
{
    const TowerDesc& t = w.tower();
    const FieldDesc& f = t.field();
    if (f.nvars != 3)
        fail(Errc::RankMismatch, "needs p-rank 3");
    if (!w.coeff(detail::coeff_index(1, 2)).is_zero())
        fail(Errc::PreconditionViolated, "form has a dlog b2 ^ dlog b3 term");
    RatFunc a2 = w.coeff(detail::coeff_index(0, 2));
    if (a2.is_zero())
        fail(Errc::PreconditionViolated, "coefficient a2 must be nonzero");
    if (opt.check_membership)
        require_nu2(w);
    auto g = detail::functional_from(a2, t, 0);
    RatFunc z1 = super_zero_or_fail(g, opt.super_zero, budget, "lemma two");
    RatFunc tcoef = DiffForm::dlog(t, z1).coeff(1u << 0);
    if (tcoef.is_zero())
        fail(Errc::InternalError, "lemma two: z1 lies in F");
    RatFunc z2 = solve_log_coordinate(a2 / tcoef, 2, budget, "lemma two");
    DiffForm rest = w - dlog_wedge(t, z1, z2);
    for (const auto& [s, c] : rest.terms())
        if (s != detail::coeff_index(0, 1))
            fail(Errc::InternalError, "lemma two: residual leaves dlog b1 ^ dlog b2");
    return {rest.coeff(detail::coeff_index(0, 1)), z1, z2};
}

inline LemmaTwoResult lemma_two_step(const DiffForm& w, const DecompOptions& opt = {})
{
    StepBudget budget(opt.step_budget);
    return lemma_two_step(w, opt, budget);
}

struct LemmaThreeResult
{
    RatFunc a1;
    RatFunc a2;
    RatFunc z1;
    RatFunc z2;
};

// w = a1 w12 + a2 w13 + a3 w23 in nu(2), a3 != 0, p-rank 3. The functional
// lives over k0 = F(b1): g(c) is the zero component of c a3 relative to k0.
inline LemmaThreeResult lemma_three_step(const DiffForm& w, const DecompOptions& opt, StepBudget& budget)
{
    const TowerDesc& t = w.tower();
    const FieldDesc& f = t.field();
    if (f.nvars != 3)
        fail(Errc::RankMismatch, "needs p-rank 3");
    RatFunc a3 = w.coeff(detail::coeff_index(1, 2));
    if (a3.is_zero())
        fail(Errc::PreconditionViolated, "coefficient a3 must be nonzero");
    if (opt.check_membership)
        require_nu2(w);
    auto over_k0 = TowerDesc::coordinate(f, 1u << 0);
    auto g = detail::functional_from(a3, over_k0, 1);
    RatFunc z1 = super_zero_or_fail(g, opt.super_zero, budget, "lemma three");
    RatFunc t2 = DiffForm::dlog(t, z1).coeff(1u << 1);
    if (t2.is_zero())
        fail(Errc::InternalError, "lemma three: z1 lies in F(b1)");
    RatFunc z2 = solve_log_coordinate(a3 / t2, 2, budget, "lemma three");
    DiffForm rest = w - dlog_wedge(t, z1, z2);
    if (!rest.coeff(detail::coeff_index(1, 2)).is_zero())
        fail(Errc::InternalError, "lemma three: residual keeps a dlog b2 ^ dlog b3 term");
    return {rest.coeff(detail::coeff_index(0, 1)), rest.coeff(detail::coeff_index(0, 2)), z1, z2};
}

inline LemmaThreeResult lemma_three_step(const DiffForm& w, const DecompOptions& opt = {})
{
    StepBudget budget(opt.step_budget);
    return lemma_three_step(w, opt, budget);
}

// One slot of a decomposition. An absent entry stands for the formal 0 of
// the degenerate branches ("z1 = b2, z2 = 0"); such a pair contributes 0.
struct SymbolPair
{
    std::optional<RatFunc> first;
    std::optional<RatFunc> second;

    bool is_zero() const { return !first || !second; }
};

struct SymbolDecomposition
{
    SymbolPair x, y, z;
    std::vector<Membership> memberships;
    std::vector<RatFunc> pbasis;
    bool pbasis_certified = false;
    DiffForm pbasis_form;
    long long steps = 0;

    int symbol_count() const { return int(!x.is_zero()) + int(!y.is_zero()) + int(!z.is_zero()); }
};

inline DiffForm recompose(const SymbolDecomposition& d, const TowerDesc& t)
{
    DiffForm w(t, 2);
    for (const SymbolPair* s : {&d.x, &d.y, &d.z})
        if (!s->is_zero())
            w = w + dlog_wedge(t, *s->first, *s->second);
    return w;
}

// Theorem rep: theta in nu(2) over p-rank 3 as at most three symbols
// {x1,x2} + {y1,y2} + {z1,z2} with {x1, y2, z1} a p-basis.
inline SymbolDecomposition theorem_rep(const DiffForm& theta, const DecompOptions& opt = {})
{
    const TowerDesc& t = theta.tower();
    const FieldDesc& f = t.field();
    if (f.nvars != 3)
        fail(Errc::RankMismatch, "needs p-rank 3, field has " + std::to_string(f.nvars));
    require_nu2(theta);
    StepBudget budget(opt.step_budget);
    DecompOptions inner = opt;
    inner.check_membership = false;
    SymbolDecomposition out;
    const RatFunc b1 = RatFunc::var(f, 0), b2 = RatFunc::var(f, 1), b3 = RatFunc::var(f, 2);

    DiffForm rest = theta;
    if (!rest.coeff(detail::coeff_index(1, 2)).is_zero()) {
        auto r3 = lemma_three_step(rest, inner, budget);
        out.z = {r3.z1, r3.z2};
        rest = rest - dlog_wedge(t, r3.z1, r3.z2);
        out.memberships.push_back(membership("z1", r3.z1, 0b011, 1));
        out.memberships.push_back(membership("z2", r3.z2, 0b111, 2));
    } else {
        out.z = {b2, std::nullopt};
    }
    if (!rest.coeff(detail::coeff_index(0, 2)).is_zero()) {
        auto r2 = lemma_two_step(rest, inner, budget);
        out.y = {r2.z1, r2.z2};
        rest = rest - dlog_wedge(t, r2.z1, r2.z2);
        out.memberships.push_back(membership("y1", r2.z1, 0b001, 0));
        out.memberships.push_back(membership("y2", r2.z2, 0b111, 2));
    } else {
        out.y = {std::nullopt, b3};
    }
    if (!rest.coeff(detail::coeff_index(0, 1)).is_zero()) {
        auto r1 = lemma_one_step(rest, inner, budget);
        out.x = {r1.z1, r1.z2};
        rest = rest - dlog_wedge(t, r1.z1, r1.z2);
        out.memberships.push_back(membership("x1", r1.z1, 0b001, 0));
        out.memberships.push_back(membership("x2", r1.z2, 0b011, 1));
    } else {
        out.x = {b1, std::nullopt};
    }
    if (!rest.is_zero())
        fail(Errc::InternalError, "decomposition leaves a nonzero residual");
    out.pbasis = {*out.x.first, *out.y.second, *out.z.first};
    auto ind = p_independent(out.pbasis, TowerDesc::absolute(f));
    out.pbasis_certified = ind.independent;
    out.pbasis_form = ind.certificate;
    out.steps = budget.used();
    return out;
}

struct Rank2Decomposition
{
    bool zero = true;
    RatFunc z1;
    RatFunc z2;
    bool pbasis_certified = false;
    std::vector<Membership> memberships;
};

// Over p-rank 2 every element of nu(2) is one symbol {z1, z2} with {z1, z2}
// a p-basis, or zero.
inline Rank2Decomposition decompose_rank2(const DiffForm& theta, const DecompOptions& opt = {})
{
    const FieldDesc& f = theta.field();
    if (f.nvars != 2)
        fail(Errc::RankMismatch, "needs p-rank 2, field has " + std::to_string(f.nvars));
    require_nu2(theta);
    Rank2Decomposition out;
    if (theta.is_zero())
        return out;
    DecompOptions inner = opt;
    inner.check_membership = false;
    StepBudget budget(opt.step_budget);
    auto r = lemma_one_step(theta, inner, budget);
    out.zero = false;
    out.z1 = r.z1;
    out.z2 = r.z2;
    out.pbasis_certified = p_independent({r.z1, r.z2}, TowerDesc::absolute(f)).independent;
    out.memberships.push_back(membership("z1", r.z1, 0b01, 0));
    out.memberships.push_back(membership("z2", r.z2, 0b11, 1));
    return out;
}

} // namespace charp

#endif
