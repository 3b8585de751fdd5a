#ifndef CHARP_GFQ_HPP
#define CHARP_GFQ_HPP

#include <cstdint>
#include <vector>

#include "field.hpp"

namespace charp {

// Finite field GF(p^k) with p^k near 2^16, held as exp/log tables over a
// primitive polynomial. Used only for evaluation images inside gcd.
class GFq
{
public:
    static const GFq& for_prime(int p)
    {
        switch (p) {
        case 2: {
            static const GFq f(2, 16);
            return f;
        }
        case 3: {
            static const GFq f(3, 10);
            return f;
        }
        case 5: {
            static const GFq f(5, 6);
            return f;
        }
        default: {
            static const GFq f(7, 5);
            return f;
        }
        }
    }

    int p() const noexcept { return p_; }
    std::uint32_t order() const noexcept { return q_; }
    std::uint32_t mult_order() const noexcept { return q_ - 1; }

    // Elements are integers 0..q-1 read as base-p digit vectors; zero is 0.
    std::uint32_t exp(std::uint64_t e) const noexcept { return exp_[e % (q_ - 1)]; }
    std::uint32_t log(std::uint32_t a) const noexcept { return log_[a]; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept
    {
        if (p_ == 2)
            return a ^ b;
        std::uint32_t r = 0, scale = 1;
        while (a != 0 || b != 0) {
            std::uint32_t d = (a % p_ + b % p_) % p_;
            r += d * scale;
            scale *= p_;
            a /= p_;
            b /= p_;
        }
        return r;
    }

    std::uint32_t neg(std::uint32_t a) const noexcept { return mul_scalar(a, static_cast<std::uint8_t>(p_ - 1)); }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        if (a == 0 || b == 0)
            return 0;
        return exp_[(std::uint64_t(log_[a]) + log_[b]) % (q_ - 1)];
    }

    std::uint32_t inv(std::uint32_t a) const noexcept { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }

    std::uint32_t mul_scalar(std::uint32_t a, std::uint8_t c) const noexcept
    {
        std::uint32_t r = 0, scale = 1;
        while (a != 0) {
            r += ((a % p_) * c % p_) * scale;
            scale *= p_;
            a /= p_;
        }
        return r;
    }

private:
    GFq(int p, int k) : p_(p)
    {
        q_ = 1;
        for (int i = 0; i < k; ++i)
            q_ *= p;
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        // Search for a primitive modulus x^k - m(x); m is encoded base p.
        for (std::uint32_t m = 1; m < q_; ++m) {
            if (try_modulus(m))
                return;
        }
    }

    // Multiplies the digit vector a by x modulo x^k = m(x).
    std::uint32_t times_x(std::uint32_t a, std::uint32_t m) const
    {
        std::uint32_t top_scale = q_ / p_;
        std::uint32_t top = a / top_scale;
        std::uint32_t shifted = (a % top_scale) * p_;
        if (top == 0)
            return shifted;
        return add(shifted, mul_scalar(m, static_cast<std::uint8_t>(top)));
    }

    bool try_modulus(std::uint32_t m)
    {
        std::vector<bool> seen(q_, false);
        std::uint32_t a = 1;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            if (seen[a])
                return false;
            seen[a] = true;
            exp_[i] = a;
            log_[a] = i;
            a = times_x(a, m);
            if (a == 0)
                return false;
        }
        return a == 1;
    }

    int p_;
    std::uint32_t q_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

} // namespace charp

#endif
