#ifndef CHARP_RANDOM_HPP
#define CHARP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "milnor.hpp"

namespace charp {

// Generators draw raw words from mt19937_64 and reduce them by hand, so a
// seed gives the same elements on every standard library.
class RandomSource
{
public:
    explicit RandomSource(std::uint64_t seed) : g_(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }

    Monomial monomial(const FieldDesc& f, int max_deg)
    {
        Monomial m;
        int d = static_cast<int>(below(static_cast<std::uint64_t>(max_deg) + 1));
        for (int j = 0; j < d; ++j) {
            ++m.e[below(static_cast<std::uint64_t>(f.nvars))];
            ++m.deg;
        }
        return m;
    }

    // Up to max_terms terms of total degree <= max_deg; may be zero.
    Poly poly(const FieldDesc& f, int max_deg, int max_terms)
    {
        std::vector<Term> ts;
        int k = 1 + static_cast<int>(below(static_cast<std::uint64_t>(max_terms)));
        for (int i = 0; i < k; ++i)
            ts.push_back({monomial(f, max_deg), static_cast<std::uint8_t>(1 + below(f.p - 1))});
        return Poly::from_terms(f, std::move(ts));
    }

    Poly nonzero_poly(const FieldDesc& f, int max_deg, int max_terms)
    {
        Poly p;
        do
            p = poly(f, max_deg, max_terms);
        while (p.is_zero());
        return p;
    }

    RatFunc ratfunc(const FieldDesc& f, int max_deg, int max_terms = 3)
    {
        Poly num = poly(f, max_deg, max_terms);
        return RatFunc::normalize(num, nonzero_poly(f, max_deg, max_terms));
    }

    RatFunc nonzero_ratfunc(const FieldDesc& f, int max_deg, int max_terms = 3)
    {
        return RatFunc::normalize(nonzero_poly(f, max_deg, max_terms), nonzero_poly(f, max_deg, max_terms));
    }

    // Between 1 and max_symbols symbols with polynomial entries.
    MilnorElem symbol_sum(const FieldDesc& f, int max_symbols, int max_deg)
    {
        MilnorElem m(f);
        int k = 1 + static_cast<int>(below(static_cast<std::uint64_t>(max_symbols)));
        for (int s = 0; s < k; ++s) {
            RatFunc a(nonzero_poly(f, max_deg, 3));
            RatFunc b(nonzero_poly(f, max_deg, 3));
            m.add(a, b);
        }
        return m;
    }

    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

} // namespace charp

#endif
