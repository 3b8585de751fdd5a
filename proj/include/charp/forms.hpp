#ifndef CHARP_FORMS_HPP
#define CHARP_FORMS_HPP

#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tower.hpp"

namespace charp {

// Orders index sets as increasing tuples, lexicographically.
struct TupleLess
{
    bool operator()(unsigned a, unsigned b) const noexcept
    {
        if (std::popcount(a) != std::popcount(b))
            return std::popcount(a) < std::popcount(b);
        unsigned diff = a ^ b;
        if (diff == 0)
            return false;
        return (a & (diff & (~diff + 1))) != 0;
    }
};

// Form in Omega^q_{k/F} written in the basis w_s = dlog x_s1 ^ ... ^ dlog x_sq
// of a coordinate tower. Index sets s are bitmasks over free coordinates.
class DiffForm
{
public:
    using Terms = std::map<unsigned, RatFunc, TupleLess>;

    DiffForm() = default;
    DiffForm(const TowerDesc& t, int degree) : tower_(t), degree_(degree)
    {
        require_coordinate(t);
        if (degree < 0)
            fail(Errc::DimensionMismatch, "negative form degree");
    }

    static DiffForm scalar(const TowerDesc& t, const RatFunc& a)
    {
        DiffForm w(t, 0);
        w.add_term(0, a);
        return w;
    }

    // dlog x_i as a 1-form; zero when x_i lies in the base.
    static DiffForm dlog_coord(const TowerDesc& t, int i)
    {
        DiffForm w(t, 1);
        if (t.is_free(i))
            w.add_term(1u << i, RatFunc::constant(t.field(), 1));
        return w;
    }

    static DiffForm dlog(const TowerDesc& t, const RatFunc& f)
    {
        if (f.is_zero())
            fail(Errc::ZeroElement, "dlog of zero");
        DiffForm w(t, 1);
        for (int i : t.free_indices()) {
            RatFunc c = log_part(f.num(), i) - log_part(f.den(), i);
            w.add_term(1u << i, c);
        }
        return w;
    }

    const TowerDesc& tower() const noexcept { return tower_; }
    const FieldDesc& field() const noexcept { return tower_.field(); }
    int degree() const noexcept { return degree_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    RatFunc coeff(unsigned s) const
    {
        auto it = terms_.find(s);
        return it == terms_.end() ? RatFunc(field()) : it->second;
    }

    void add_term(unsigned s, const RatFunc& a)
    {
        if (std::popcount(s) != degree_)
            fail(Errc::DimensionMismatch, "index set size differs from form degree");
        if (s & tower_.base)
            fail(Errc::TowerMismatch, "index set meets the base of the tower");
        if (a.is_zero())
            return;
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            terms_.emplace(s, a);
        } else {
            it->second += a;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend DiffForm operator+(const DiffForm& a, const DiffForm& b)
    {
        check_compatible(a, b);
        DiffForm r = a;
        for (const auto& [s, c] : b.terms_)
            r.add_term(s, c);
        return r;
    }

    DiffForm operator-() const
    {
        DiffForm r = *this;
        for (auto& [s, c] : r.terms_)
            c = -c;
        return r;
    }

    friend DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

    friend DiffForm operator*(const RatFunc& f, const DiffForm& w)
    {
        DiffForm r(w.tower_, w.degree_);
        if (f.is_zero())
            return r;
        for (const auto& [s, c] : w.terms_)
            r.terms_.emplace(s, f * c);
        return r;
    }

    friend bool operator==(const DiffForm& a, const DiffForm& b)
    {
        return a.tower_ == b.tower_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    // Sign of moving the indices of t past those of s: (-1)^#{(i,j): i in s, j in t, i > j}.
    static int merge_sign(unsigned s, unsigned t) noexcept
    {
        int inv = 0;
        for (unsigned rest = t; rest != 0; rest &= rest - 1) {
            unsigned j = static_cast<unsigned>(std::countr_zero(rest));
            inv += std::popcount(s >> (j + 1));
        }
        return (inv & 1) ? -1 : 1;
    }

    static void check_compatible(const DiffForm& a, const DiffForm& b)
    {
        if (!(a.tower_ == b.tower_))
            fail(Errc::TowerMismatch, "forms live over different towers");
        if (a.degree_ != b.degree_)
            fail(Errc::DimensionMismatch, "forms of different degree");
    }

private:
    // x_i d/dx_i (p) / p for a polynomial p.
    static RatFunc log_part(const Poly& p, int i)
    {
        Poly d = p.derivative(i);
        if (d.is_zero())
            return RatFunc(p.field());
        return RatFunc::normalize(d.mul_term(Monomial::var(i), 1), p);
    }

    TowerDesc tower_;
    int degree_ = 0;
    Terms terms_;
};

inline DiffForm wedge(const DiffForm& a, const DiffForm& b)
{
    if (!(a.tower() == b.tower()))
        fail(Errc::TowerMismatch, "wedge of forms over different towers");
    DiffForm r(a.tower(), a.degree() + b.degree());
    for (const auto& [s, ca] : a.terms())
        for (const auto& [t, cb] : b.terms()) {
            if (s & t)
                continue;
            RatFunc c = ca * cb;
            r.add_term(s | t, DiffForm::merge_sign(s, t) < 0 ? -c : c);
        }
    return r;
}

inline DiffForm differential(const DiffForm& w)
{
    DiffForm r(w.tower(), w.degree() + 1);
    for (const auto& [s, a] : w.terms())
        for (int i : w.tower().free_indices()) {
            if (s & (1u << i))
                continue;
            RatFunc c = a.log_derivative_coeff(i);
            if (c.is_zero())
                continue;
            r.add_term(s | (1u << i), DiffForm::merge_sign(1u << i, s) < 0 ? -c : c);
        }
    return r;
}

// Image in Omega_{k/F'} for a coarser tower F' = F(x_j : j in extra base).
inline DiffForm relative_project(const DiffForm& w, const TowerDesc& coarser)
{
    if ((coarser.base & w.tower().base) != w.tower().base || !(coarser.basis.elems == w.tower().basis.elems))
        fail(Errc::TowerMismatch, "target tower does not contain the source base");
    DiffForm r(coarser, w.degree());
    for (const auto& [s, a] : w.terms())
        if (!(s & coarser.base))
            r.add_term(s, a);
    return r;
}

// Same coefficients over a finer tower; valid only when the index sets avoid
// the removed base elements, which holds automatically.
inline DiffForm relift(const DiffForm& w, const TowerDesc& finer)
{
    DiffForm r(finer, w.degree());
    for (const auto& [s, a] : w.terms())
        r.add_term(s, a);
    return r;
}

using FormMuDecomp = std::map<Mu, DiffForm>;

inline FormMuDecomp mu_decompose(const DiffForm& w)
{
    FormMuDecomp out;
    for (const auto& [s, a] : w.terms()) {
        auto dec = monomial_decompose(a, w.tower());
        for (const auto& [mu, part] : dec.parts) {
            auto it = out.find(mu);
            if (it == out.end())
                it = out.emplace(mu, DiffForm(w.tower(), w.degree())).first;
            it->second.add_term(s, part * basis_power(w.tower(), mu));
        }
    }
    return out;
}

inline DiffForm zero_component(const DiffForm& w)
{
    DiffForm r(w.tower(), w.degree());
    for (const auto& [s, a] : w.terms())
        r.add_term(s, monomial_decompose(a, w.tower()).zero_part());
    return r;
}

inline bool is_cycle(const DiffForm& w) { return differential(w).is_zero(); }

struct BoundaryResult
{
    bool boundary = false;
    std::optional<DiffForm> antiderivative;
};

// On the mu-component d acts as wedge with sum_j mu_j dlog x_j, so
// mu_i^{-1} times contraction along dlog x_i is a homotopy there.
inline DiffForm homotopy(const DiffForm& w)
{
    if (w.degree() == 0)
        fail(Errc::PreconditionViolated, "no antiderivative for degree 0");
    const int p = w.field().p;
    const auto free = w.tower().free_indices();
    DiffForm eta(w.tower(), w.degree() - 1);
    for (const auto& [s, a] : w.terms()) {
        auto dec = monomial_decompose(a, w.tower());
        for (const auto& [mu, part] : dec.parts) {
            std::size_t k = 0;
            while (k < mu.size() && mu[k] == 0)
                ++k;
            if (k == mu.size())
                continue;
            int i = free[k];
            unsigned bit = 1u << i;
            if (!(s & bit))
                continue;
            int pos = std::popcount(s & (bit - 1));
            RatFunc c = (part * basis_power(w.tower(), mu)).scaled(fp::inv(mu[k], p));
            eta.add_term(s & ~bit, (pos & 1) ? -c : c);
        }
    }
    return eta;
}

inline BoundaryResult is_boundary(const DiffForm& w)
{
    BoundaryResult r;
    if (w.is_zero()) {
        r.boundary = true;
        r.antiderivative = w.degree() > 0 ? DiffForm(w.tower(), w.degree() - 1) : DiffForm(w.tower(), 0);
        return r;
    }
    if (w.degree() == 0 || !is_cycle(w) || !zero_component(w).is_zero())
        return r;
    r.boundary = true;
    r.antiderivative = homotopy(w);
    return r;
}

inline DiffForm gamma(const DiffForm& w)
{
    DiffForm r(w.tower(), w.degree());
    for (const auto& [s, a] : w.terms())
        r.add_term(s, a.frobenius());
    return r;
}

inline DiffForm cartier(const DiffForm& w)
{
    if (!is_cycle(w))
        fail(Errc::NotACycle, "Cartier operator is defined on cycles only");
    DiffForm r(w.tower(), w.degree());
    for (const auto& [s, a] : w.terms()) {
        auto z = monomial_decompose(a, w.tower()).zero_part();
        auto root = z.pth_root();
        if (!root)
            fail(Errc::RootFailure, "zero component coefficient is not a p-th power in k");
        r.add_term(s, *root);
    }
    return r;
}

struct NuResult
{
    bool member = false;
    DiffForm witness;
};

// w lies in nu(q) iff gamma(w) - w is exact. The witness is an
// antiderivative on success, else the zero component of gamma(w) - w (or the
// difference itself when it is not even a cycle).
inline NuResult nu_member(const DiffForm& w)
{
    NuResult r;
    DiffForm diff = gamma(w) - w;
    if (diff.is_zero()) {
        r.member = true;
        r.witness = DiffForm(w.tower(), std::max(0, w.degree() - 1));
        return r;
    }
    if (w.degree() == 0 || !is_cycle(diff)) {
        r.witness = diff;
        return r;
    }
    DiffForm z = zero_component(diff);
    if (!z.is_zero()) {
        r.witness = z;
        return r;
    }
    r.member = true;
    r.witness = homotopy(diff);
    return r;
}

// For w = a dlog x_v over a tower with the single free index v, finds y with
// dlog y = w by solving (M_a - diag(i)) y = 0 on coordinates y = sum y_i x_v^i.
inline std::optional<RatFunc> dlog_solve(const DiffForm& w)
{
    const TowerDesc& t = w.tower();
    auto free = t.free_indices();
    if (free.size() != 1)
        fail(Errc::RankNotOne, "dlog_solve needs relative p-rank 1, tower has " + std::to_string(free.size()));
    if (w.degree() != 1)
        fail(Errc::DimensionMismatch, "dlog_solve needs a 1-form");
    const FieldDesc& f = t.field();
    const int p = f.p;
    const int v = free[0];
    RatFunc a = w.coeff(1u << v);
    if (a.is_zero())
        return RatFunc::constant(f, 1);
    auto dec = monomial_decompose(a, t);
    RatFunc xp = RatFunc::var(f, v).pow(p);
    Mat m(p, Vec(p, RatFunc(f)));
    for (const auto& [mu, alpha] : dec.parts) {
        int e = mu[0];
        for (int j = 0; j < p; ++j) {
            int row = e + j;
            RatFunc entry = alpha;
            if (row >= p) {
                row -= p;
                entry = entry * xp;
            }
            m[row][j] += entry;
        }
    }
    for (int i = 0; i < p; ++i)
        m[i][i] -= RatFunc::constant(f, i);
    auto ker = kernel(m);
    if (ker.empty())
        return std::nullopt;
    RatFunc y(f);
    RatFunc xi = RatFunc::constant(f, 1);
    for (int i = 0; i < p; ++i) {
        y += ker[0][i] * xi;
        xi = xi * RatFunc::var(f, v);
    }
    if (!(DiffForm::dlog(t, y) == w))
        fail(Errc::InternalError, "dlog_solve produced a non-solution");
    return y;
}

} // namespace charp

#endif
