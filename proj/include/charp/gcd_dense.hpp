#ifndef CHARP_GCD_DENSE_HPP
#define CHARP_GCD_DENSE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gfq.hpp"
#include "poly.hpp"

namespace charp::detail::dense {

using Uni = std::vector<std::uint32_t>;

inline void trim(Uni& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline std::uint32_t eval(const std::uint32_t* a, std::size_t len, std::uint32_t x, const GFq& q)
{
    std::uint32_t r = 0;
    for (std::size_t i = len; i-- > 0;)
        r = q.add(q.mul(r, x), a[i]);
    return r;
}

inline std::uint32_t eval(const Uni& a, std::uint32_t x, const GFq& q) { return eval(a.data(), a.size(), x, q); }

inline Uni monic(Uni a, const GFq& q)
{
    trim(a);
    if (a.empty() || a.back() == 1)
        return a;
    std::uint32_t inv = q.inv(a.back());
    for (auto& c : a)
        c = q.mul(c, inv);
    return a;
}

inline Uni gcd(Uni a, Uni b, const GFq& q)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::uint32_t inv = q.inv(b.back());
        while (a.size() >= b.size()) {
            std::uint32_t c = q.mul(a.back(), inv);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = q.sub(a[shift + i], q.mul(c, b[i]));
            trim(a);
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return monic(std::move(a), q);
}

inline Uni mul(const Uni& a, const Uni& b, const GFq& q)
{
    if (a.empty() || b.empty())
        return {};
    Uni r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = q.add(r[i + j], q.mul(a[i], b[j]));
    return r;
}

// Quotient of a by b; the remainder is discarded.
inline Uni div(Uni a, const Uni& b, const GFq& q)
{
    trim(a);
    if (a.size() < b.size())
        return {};
    Uni quo(a.size() - b.size() + 1, 0);
    std::uint32_t inv = q.inv(b.back());
    for (std::size_t k = a.size(); k-- >= b.size();) {
        std::uint32_t c = q.mul(a[k], inv);
        quo[k - b.size() + 1] = c;
        if (c != 0)
            for (std::size_t i = 0; i < b.size(); ++i)
                a[k - b.size() + 1 + i] = q.sub(a[k - b.size() + 1 + i], q.mul(c, b[i]));
        if (k == b.size() - 1)
            break;
    }
    return quo;
}

// Row-major dense polynomial over GF(q); the last variable varies fastest,
// so each run of dims.back() entries is a univariate block in that variable.
struct Dense
{
    std::vector<int> dims;
    std::vector<std::uint32_t> c;

    std::size_t block_len() const { return static_cast<std::size_t>(dims.back()); }
    std::size_t blocks() const { return c.size() / block_len(); }
    Uni block(std::size_t i) const
    {
        Uni u(c.begin() + i * block_len(), c.begin() + (i + 1) * block_len());
        trim(u);
        return u;
    }
    void set_block(std::size_t i, const Uni& u)
    {
        for (std::size_t j = 0; j < block_len(); ++j)
            c[i * block_len() + j] = j < u.size() ? u[j] : 0;
    }
    long last_nonzero() const
    {
        for (std::size_t i = c.size(); i-- > 0;)
            if (c[i] != 0)
                return static_cast<long>(i);
        return -1;
    }
};

inline Dense evaluate_last(const Dense& a, std::uint32_t x, const GFq& q)
{
    Dense r;
    r.dims.assign(a.dims.begin(), a.dims.end() - 1);
    r.c.resize(a.blocks());
    for (std::size_t i = 0; i < a.blocks(); ++i)
        r.c[i] = eval(a.c.data() + i * a.block_len(), a.block_len(), x, q);
    return r;
}

inline void make_lex_monic(Dense& a, const GFq& q)
{
    long l = a.last_nonzero();
    if (l < 0 || a.c[l] == 1)
        return;
    std::uint32_t inv = q.inv(a.c[l]);
    for (auto& v : a.c)
        v = q.mul(v, inv);
}

// Brown's evaluation/interpolation gcd over GF(q), normalised so that the
// coefficient of the lexicographically largest monomial is 1. Returns
// nullopt when the evaluation points run out. The result is not verified
// here; callers check divisibility and coprimality of the cofactors.
inline std::optional<Dense> gcd(const Dense& a, const Dense& b, const GFq& q)
{
    const std::size_t k = a.dims.size();
    if (k == 1) {
        Uni g = gcd(Uni(a.c.begin(), a.c.end()), Uni(b.c.begin(), b.c.end()), q);
        Dense r{a.dims, std::vector<std::uint32_t>(a.c.size(), 0)};
        for (std::size_t i = 0; i < g.size(); ++i)
            r.c[i] = g[i];
        return r;
    }
    Uni conta, contb;
    for (std::size_t i = 0; i < a.blocks(); ++i)
        conta = gcd(conta, a.block(i), q);
    for (std::size_t i = 0; i < b.blocks(); ++i)
        contb = gcd(contb, b.block(i), q);
    if (conta.empty())
        conta = {1};
    if (contb.empty())
        contb = {1};
    Uni cont = gcd(conta, contb, q);
    Dense pa = a, pb = b;
    int dega = 0, degb = 0;
    long lba = -1, lbb = -1;
    for (std::size_t i = 0; i < a.blocks(); ++i) {
        Uni u = div(a.block(i), conta, q);
        pa.set_block(i, u);
        if (!u.empty()) {
            dega = std::max(dega, int(u.size()) - 1);
            lba = static_cast<long>(i);
        }
        Uni v = div(b.block(i), contb, q);
        pb.set_block(i, v);
        if (!v.empty()) {
            degb = std::max(degb, int(v.size()) - 1);
            lbb = static_cast<long>(i);
        }
    }
    Dense result{a.dims, std::vector<std::uint32_t>(a.c.size(), 0)};
    if (lba < 0 || lbb < 0)
        return std::nullopt;
    Uni lca = pa.block(static_cast<std::size_t>(lba)), lcb = pb.block(static_cast<std::size_t>(lbb));
    Uni gam = gcd(lca, lcb, q);
    const std::size_t bound = gam.size() - 1 + static_cast<std::size_t>(std::min(dega, degb));
    const std::size_t nb = a.blocks();
    std::vector<Uni> h;
    Uni m{1};
    long hl = -1;
    std::size_t points = 0;
    for (std::uint32_t idx = 0; idx + 1 < q.order() && points <= bound; ++idx) {
        std::uint32_t x = q.exp(idx);
        if (eval(lca, x, q) == 0 || eval(lcb, x, q) == 0)
            continue;
        auto g = gcd(evaluate_last(pa, x, q), evaluate_last(pb, x, q), q);
        if (!g)
            return std::nullopt;
        long gl = g->last_nonzero();
        if (gl == 0) {
            result.set_block(0, cont);
            make_lex_monic(result, q);
            return result;
        }
        std::uint32_t scale = eval(gam, x, q);
        for (auto& v : g->c)
            v = q.mul(v, scale);
        if (hl < 0 || gl < hl) {
            h.assign(nb, Uni{});
            for (std::size_t i = 0; i < nb; ++i)
                if (g->c[i] != 0)
                    h[i] = {g->c[i]};
            m = {q.neg(x), 1};
            hl = gl;
            points = 1;
            continue;
        }
        if (gl > hl)
            continue;
        std::uint32_t minv = q.inv(eval(m, x, q));
        for (std::size_t i = 0; i < nb; ++i) {
            std::uint32_t diff = q.sub(g->c[i], eval(h[i], x, q));
            if (diff == 0)
                continue;
            std::uint32_t s = q.mul(diff, minv);
            if (h[i].size() < m.size())
                h[i].resize(m.size(), 0);
            for (std::size_t j = 0; j < m.size(); ++j)
                h[i][j] = q.add(h[i][j], q.mul(s, m[j]));
        }
        m = mul(m, Uni{q.neg(x), 1}, q);
        ++points;
    }
    if (points <= bound)
        return std::nullopt;
    Uni hc;
    for (auto& u : h) {
        trim(u);
        hc = gcd(hc, u, q);
    }
    for (std::size_t i = 0; i < nb; ++i) {
        if (h[i].empty())
            continue;
        Uni u = mul(div(h[i], hc, q), cont, q);
        if (u.size() > result.block_len())
            return std::nullopt;
        result.set_block(i, u);
    }
    make_lex_monic(result, q);
    return result;
}

// Dense image of a and b over the variables in vars (in index order), with
// entry counts bounded by limit; nullopt when too large.
inline std::optional<std::pair<Dense, Dense>> to_dense(const Poly& a, const Poly& b, const std::vector<int>& vars,
                                                      std::size_t limit)
{
    std::vector<int> dims;
    std::size_t total = 1;
    for (int v : vars) {
        int d = std::max(a.degree_in(v), b.degree_in(v)) + 1;
        dims.push_back(d);
        total *= static_cast<std::size_t>(d);
        if (total > limit)
            return std::nullopt;
    }
    auto fill = [&](const Poly& p) {
        Dense d{dims, std::vector<std::uint32_t>(total, 0)};
        for (const auto& t : p.terms()) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < vars.size(); ++i)
                idx = idx * static_cast<std::size_t>(dims[i]) + t.m.e[vars[i]];
            d.c[idx] = t.c;
        }
        return d;
    };
    return std::make_pair(fill(a), fill(b));
}

// Back to F_p; nullopt when a coefficient falls outside the prime field.
inline std::optional<Poly> from_dense(const Dense& d, const std::vector<int>& vars, const FieldDesc& f)
{
    std::vector<Term> terms;
    std::vector<int> idx(vars.size(), 0);
    for (std::size_t flat = 0; flat < d.c.size(); ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = vars.size(); i-- > 0;) {
            idx[i] = static_cast<int>(rest % static_cast<std::size_t>(d.dims[i]));
            rest /= static_cast<std::size_t>(d.dims[i]);
        }
        std::uint32_t v = d.c[flat];
        if (v == 0)
            continue;
        if (v >= static_cast<std::uint32_t>(f.p))
            return std::nullopt;
        Monomial m;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            m.e[vars[i]] = static_cast<std::uint16_t>(idx[i]);
            m.deg += static_cast<std::uint32_t>(idx[i]);
        }
        terms.push_back({m, static_cast<std::uint8_t>(v)});
    }
    return Poly::from_terms(f, std::move(terms));
}

} // namespace charp::detail::dense

#endif
