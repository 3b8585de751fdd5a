#ifndef CHARP_GCD_HPP
#define CHARP_GCD_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "gcd_dense.hpp"
#include "gfq.hpp"
#include "poly.hpp"

namespace charp {

namespace detail {

// Coefficients of a as a polynomial in x_v; entry k multiplies x_v^k.
inline std::vector<Poly> split_in_var(const Poly& a, int v)
{
    std::vector<std::vector<Term>> buckets(a.is_zero() ? 0 : a.degree_in(v) + 1);
    for (const auto& t : a.terms()) {
        Term u = t;
        u.m.deg -= u.m.e[v];
        u.m.e[v] = 0;
        buckets[t.m.e[v]].push_back(u);
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets)
        out.push_back(Poly::from_sorted(a.field(), std::move(b)));
    return out;
}

inline Poly join_in_var(const FieldDesc& f, const std::vector<Poly>& coeffs, int v)
{
    std::vector<Term> all;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (const auto& t : coeffs[k].terms()) {
            Term u = t;
            u.m.e[v] = static_cast<std::uint16_t>(k);
            u.m.deg += static_cast<std::uint32_t>(k);
            all.push_back(u);
        }
    return Poly::from_terms(f, std::move(all));
}

using Dense = std::vector<std::uint8_t>;

inline void trim(Dense& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline Dense dense_gcd(Dense a, Dense b, int p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::uint8_t inv = fp::inv(b.back(), p);
        while (a.size() >= b.size()) {
            std::uint8_t q = fp::mul(a.back(), inv, p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = fp::sub(a[shift + i], fp::mul(q, b[i], p), p);
            trim(a);
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return a;
}

inline Poly gcd_impl(const Poly& a, const Poly& b);

// Image of a in GF(q)[x_v] after x_i -> exp(logs[i]) for i != v.
inline std::vector<std::uint32_t> eval_image(const Poly& a, int v, const std::vector<std::uint64_t>& logs,
                                             const GFq& q)
{
    std::vector<std::uint32_t> img(a.degree_in(v) + 1, 0);
    for (const auto& t : a.terms()) {
        std::uint64_t l = q.log(t.c);
        for (int i = 0; i < static_cast<int>(logs.size()); ++i)
            if (i != v)
                l += std::uint64_t(t.m.e[i]) * logs[i];
        img[t.m.e[v]] = q.add(img[t.m.e[v]], q.exp(l));
    }
    return img;
}

inline int image_gcd_degree(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b, const GFq& q)
{
    auto trim_q = [](std::vector<std::uint32_t>& x) {
        while (!x.empty() && x.back() == 0)
            x.pop_back();
    };
    trim_q(a);
    trim_q(b);
    while (!b.empty()) {
        std::uint32_t inv = q.inv(b.back());
        while (a.size() >= b.size()) {
            std::uint32_t c = q.mul(a.back(), inv);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = q.sub(a[shift + i], q.mul(c, b[i]));
            trim_q(a);
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// True when evaluation images prove gcd(a, b) = 1. Both must involve the same
// variables. A point where a leading coefficient vanishes proves nothing and
// is skipped; image degrees bound the true degree from above otherwise.
inline bool images_prove_coprime(const Poly& a, const Poly& b, unsigned vars)
{
    const GFq& q = GFq::for_prime(a.prime());
    const int n = a.field().nvars;
    for (int v = 0; v < n; ++v) {
        if (!(vars & (1u << v)))
            continue;
        bool decided = false;
        for (int attempt = 0; attempt < 3 && !decided; ++attempt) {
            std::vector<std::uint64_t> logs(n);
            for (int i = 0; i < n; ++i)
                logs[i] = (std::uint64_t(7919) * (i + 1) + std::uint64_t(104729) * attempt + 13) % q.mult_order();
            auto ia = eval_image(a, v, logs, q);
            auto ib = eval_image(b, v, logs, q);
            if (ia.back() == 0 || ib.back() == 0)
                continue;
            if (image_gcd_degree(std::move(ia), std::move(ib), q) != 0)
                return false;
            decided = true;
        }
        if (!decided)
            return false;
    }
    return true;
}

// gcd of b with all x_v-coefficients of a.
inline Poly gcd_with_content(const Poly& a, int v, Poly g)
{
    for (const auto& c : split_in_var(a, v)) {
        if (c.is_zero())
            continue;
        g = gcd_impl(g, c);
        if (g.is_constant())
            break;
    }
    return g;
}

inline Poly content_in(const Poly& a, int v)
{
    auto cs = split_in_var(a, v);
    Poly g(a.field());
    for (const auto& c : cs) {
        if (c.is_zero())
            continue;
        g = g.is_zero() ? c.monic() : gcd_impl(g, c);
        if (g.is_constant())
            break;
    }
    return g;
}

// Pseudo-remainder of a by b, both viewed in x_v with coefficients free of x_v.
inline std::vector<Poly> pseudo_rem(std::vector<Poly> a, const std::vector<Poly>& b)
{
    const Poly& lb = b.back();
    while (a.size() >= b.size()) {
        Poly la = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a)
            c = c * lb;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= la * b[i];
        while (!a.empty() && a.back().is_zero())
            a.pop_back();
    }
    return a;
}

// Dense evaluation/interpolation gcd over GF(q). The candidate is accepted
// only if it divides both inputs and the cofactors have gcd 1; otherwise
// nullopt and the caller falls back to pseudo-remainders.
inline std::optional<Poly> modular_gcd(const Poly& a, const Poly& b, unsigned vars)
{
    constexpr std::size_t kDenseLimit = 2'000'000;
    std::vector<int> order;
    for (int v = 0; v < a.field().nvars; ++v)
        if (vars & (1u << v))
            order.push_back(v);
    auto dd = dense::to_dense(a, b, order, kDenseLimit);
    if (!dd)
        return std::nullopt;
    const GFq& q = GFq::for_prime(a.prime());
    auto g = dense::gcd(dd->first, dd->second, q);
    if (!g)
        return std::nullopt;
    auto cand = dense::from_dense(*g, order, a.field());
    if (!cand || cand->is_zero() || cand->is_constant())
        return std::nullopt;
    Poly gm = cand->monic();
    auto qa = Poly::exact_div(a, gm);
    auto qb = Poly::exact_div(b, gm);
    if (!qa || !qb)
        return std::nullopt;
    return gm * gcd_impl(*qa, *qb);
}

inline Poly gcd_impl(const Poly& a, const Poly& b)
{
    const FieldDesc& f = a.field();
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return Poly::constant(f, 1);

    Monomial ma = a.min_exponents(), mb = b.min_exponents(), mg;
    for (int i = 0; i < kMaxVars; ++i) {
        mg.e[i] = std::min(ma.e[i], mb.e[i]);
        mg.deg += mg.e[i];
    }
    if (ma.deg != 0 || mb.deg != 0) {
        Poly r = gcd_impl(a.div_monomial(ma), b.div_monomial(mb));
        return mg.deg == 0 ? r : r.mul_term(mg, 1);
    }

    Poly am = a.monic(), bm = b.monic();
    if (am == bm)
        return am;
    const Poly& big = am.size() >= bm.size() ? am : bm;
    const Poly& small = am.size() >= bm.size() ? bm : am;
    if (small.degree() <= big.degree() && Poly::exact_div(big, small))
        return small;

    unsigned va = am.vars_mask(), vb = bm.vars_mask();
    if ((va & vb) == 0)
        return Poly::constant(f, 1);
    for (int v = 0; v < f.nvars; ++v) {
        unsigned bit = 1u << v;
        if ((va & bit) && !(vb & bit))
            return gcd_with_content(am, v, bm).monic();
        if ((vb & bit) && !(va & bit))
            return gcd_with_content(bm, v, am).monic();
    }

    if (std::popcount(va) > 1 && images_prove_coprime(am, bm, va))
        return Poly::constant(f, 1);

    if (std::popcount(va) > 1)
        if (auto g = modular_gcd(am, bm, va))
            return *g;

    int nv = 0, main = -1, best = 0;
    for (int v = 0; v < f.nvars; ++v) {
        if (!(va & (1u << v)))
            continue;
        ++nv;
        int d = std::max(am.degree_in(v), bm.degree_in(v));
        if (main < 0 || d < best) {
            main = v;
            best = d;
        }
    }

    if (nv == 1) {
        Dense da(am.degree_in(main) + 1, 0), db(bm.degree_in(main) + 1, 0);
        for (const auto& t : am.terms())
            da[t.m.e[main]] = t.c;
        for (const auto& t : bm.terms())
            db[t.m.e[main]] = t.c;
        Dense g = dense_gcd(std::move(da), std::move(db), f.p);
        std::vector<Term> terms;
        for (std::size_t k = g.size(); k-- > 0;)
            if (g[k] != 0)
                terms.push_back({Monomial::var(main, static_cast<std::uint32_t>(k)), g[k]});
        return Poly::from_sorted(f, std::move(terms)).monic();
    }

    Poly ca = content_in(am, main), cb = content_in(bm, main);
    Poly c = gcd_impl(ca, cb);
    auto pa = split_in_var(Poly::div_exact(am, ca), main);
    auto pb = split_in_var(Poly::div_exact(bm, cb), main);
    if (pa.size() < pb.size())
        std::swap(pa, pb);
    while (true) {
        if (pb.size() == 1)
            return c.monic();
        auto r = pseudo_rem(pa, pb);
        if (r.empty())
            break;
        Poly rp = join_in_var(f, r, main);
        rp = Poly::div_exact(rp, content_in(rp, main));
        pa = std::move(pb);
        pb = split_in_var(rp, main);
    }
    Poly g = join_in_var(f, pb, main);
    g = Poly::div_exact(g, content_in(g, main));
    return (c * g).monic();
}

} // namespace detail

// Monic greatest common divisor; gcd(0,0) = 0.
inline Poly gcd(const Poly& a, const Poly& b)
{
    require_same_field(a.field(), b.field());
    return detail::gcd_impl(a, b);
}

} // namespace charp

#endif
