#ifndef CHARP_VALUATION_HPP
#define CHARP_VALUATION_HPP

#include <optional>
#include <string>

#include "ratfunc.hpp"

namespace charp {

// The x_i-adic place of F_p(x1..xn); residue field F_p(x1..^xi..xn).
struct DVal
{
    int var = 0;
};

struct ValuationResult
{
    long long order = 0;
    std::optional<RatFunc> residue;
};

inline long long poly_order(const Poly& p, int v)
{
    long long m = -1;
    for (const auto& t : p.terms())
        if (m < 0 || t.m.e[v] < m)
            m = t.m.e[v];
    return m;
}

inline long long order_at(const RatFunc& f, const DVal& place)
{
    if (f.is_zero())
        fail(Errc::ZeroInput, "valuation of zero");
    if (place.var < 0 || place.var >= f.field().nvars)
        fail(Errc::DimensionMismatch, "place variable " + std::to_string(place.var + 1) + " out of range");
    return poly_order(f.num(), place.var) - poly_order(f.den(), place.var);
}

inline ValuationResult valuation(const RatFunc& f, const DVal& place)
{
    ValuationResult r;
    r.order = order_at(f, place);
    if (r.order == 0) {
        r.residue = RatFunc::normalize(f.num().at_zero(place.var), f.den().at_zero(place.var));
    }
    return r;
}

// Residue of an element of valuation >= 0; zero when the valuation is positive.
inline RatFunc residue_of(const RatFunc& f, const DVal& place)
{
    if (f.is_zero())
        return f;
    long long o = order_at(f, place);
    if (o < 0)
        fail(Errc::PreconditionViolated, "residue of an element with negative valuation");
    if (o > 0)
        return RatFunc(f.field());
    return *valuation(f, place).residue;
}

} // namespace charp

#endif
