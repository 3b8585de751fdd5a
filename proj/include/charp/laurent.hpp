#ifndef CHARP_LAURENT_HPP
#define CHARP_LAURENT_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "field.hpp"

namespace charp {

inline constexpr int kDefaultLaurentPrecision = 32;

// Truncated Laurent series sum_{i >= low} c_i t^i over F_p, known modulo
// t^prec. coeffs[k] holds c_{low + k}; entries at or above prec are never kept.
class LaurentModel
{
public:
    LaurentModel() = default;
    LaurentModel(int p, int prec) : p_(p), prec_(prec)
    {
        if (!is_supported_prime(p))
            fail(Errc::UnsupportedPrime, "prime " + std::to_string(p));
    }

    static LaurentModel monomial(int p, int prec, int e, std::uint8_t c = 1)
    {
        LaurentModel r(p, prec);
        r.set(e, c);
        return r;
    }

    static LaurentModel constant(int p, int prec, std::uint8_t c) { return monomial(p, prec, 0, c); }

    int prime() const noexcept { return p_; }
    int precision() const noexcept { return prec_; }

    std::uint8_t coeff(int e) const
    {
        if (e < low_ || e >= low_ + static_cast<int>(c_.size()))
            return 0;
        return c_[e - low_];
    }

    void set(int e, std::uint8_t v)
    {
        if (e >= prec_)
            return;
        v = fp::reduce(v, p_);
        if (c_.empty()) {
            if (v == 0)
                return;
            low_ = e;
            c_.assign(1, v);
            return;
        }
        if (e < low_) {
            c_.insert(c_.begin(), static_cast<std::size_t>(low_ - e), 0);
            low_ = e;
        }
        if (e - low_ >= static_cast<int>(c_.size()))
            c_.resize(static_cast<std::size_t>(e - low_ + 1), 0);
        c_[e - low_] = v;
        normalize();
    }

    // Order of the lowest nonzero coefficient, or prec when zero to precision.
    int valuation() const { return c_.empty() ? prec_ : low_; }
    bool is_zero() const { return c_.empty(); }

    LaurentModel operator+(const LaurentModel& o) const { return combine(o, false); }
    LaurentModel operator-(const LaurentModel& o) const { return combine(o, true); }

    LaurentModel operator*(const LaurentModel& o) const
    {
        check(o);
        int prec = std::min(valuation() + o.prec_, o.valuation() + prec_);
        LaurentModel r(p_, prec);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                int e = low_ + o.low_ + static_cast<int>(i + j);
                if (e < prec && c_[i] && o.c_[j])
                    r.set(e, fp::add(r.coeff(e), fp::mul(c_[i], o.c_[j], p_), p_));
            }
        return r;
    }

    // Coefficients of f^p sit at p times the exponent; precision scales too.
    LaurentModel frobenius() const
    {
        LaurentModel r(p_, prec_ >= 0 ? prec_ * p_ : prec_);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i])
                r.set((low_ + static_cast<int>(i)) * p_, c_[i]);
        return r;
    }

    LaurentModel truncated(int prec) const
    {
        LaurentModel r(p_, std::min(prec, prec_));
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.set(low_ + static_cast<int>(i), c_[i]);
        return r;
    }

    friend bool operator==(const LaurentModel& a, const LaurentModel& b)
    {
        return a.p_ == b.p_ && a.prec_ == b.prec_ && a.low_ == b.low_ && a.c_ == b.c_;
    }

    // Nonzero terms as (exponent, coefficient), increasing exponent.
    std::vector<std::pair<int, std::uint8_t>> terms() const
    {
        std::vector<std::pair<int, std::uint8_t>> out;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i])
                out.emplace_back(low_ + static_cast<int>(i), c_[i]);
        return out;
    }

private:
    void check(const LaurentModel& o) const
    {
        if (o.p_ != p_)
            fail(Errc::FieldMismatch, "series of different characteristic");
    }

    LaurentModel combine(const LaurentModel& o, bool subtract) const
    {
        check(o);
        LaurentModel r(p_, std::min(prec_, o.prec_));
        for (auto [e, v] : terms())
            r.set(e, v);
        for (auto [e, v] : o.terms())
            r.set(e, subtract ? fp::sub(r.coeff(e), v, p_) : fp::add(r.coeff(e), v, p_));
        return r;
    }

    void normalize()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0)
            ++lead;
        if (lead == c_.size()) {
            c_.clear();
            low_ = 0;
            return;
        }
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        low_ += static_cast<int>(lead);
    }

    int p_ = 2;
    int prec_ = kDefaultLaurentPrecision;
    int low_ = 0;
    std::vector<std::uint8_t> c_;
};

struct HenselRoots
{
    std::vector<LaurentModel> roots;
    std::vector<std::uint8_t> residue_roots;
    bool residuals_vanish = false;
    bool distinct_mod_t = false;
};

// Roots of t^p - t - a in F_p[[t]] to precision prec. Over F_p the residue
// polynomial t^p - t - a(0) splits iff a(0) = 0; the lift iterates r <- r^p - a
// from each residue root, which gains at least one digit per step.
inline HenselRoots hensel_artin_schreier(const LaurentModel& a, int prec)
{
    const int p = a.prime();
    if (a.valuation() < 0)
        fail(Errc::PreconditionViolated, "a has a pole; t^p - t - a is not integral");
    if (prec > a.precision())
        fail(Errc::PreconditionViolated, "a is known only to precision " + std::to_string(a.precision()));
    HenselRoots out;
    const std::uint8_t abar = a.coeff(0);
    for (int c = 0; c < p; ++c) {
        int val = 1;
        for (int i = 0; i < p; ++i)
            val = val * c % p;
        if (fp::reduce(val - c - abar, p) == 0)
            out.residue_roots.push_back(static_cast<std::uint8_t>(c));
    }
    if (out.residue_roots.size() != static_cast<std::size_t>(p))
        fail(Errc::ResidueNotSplit,
             "t^" + std::to_string(p) + " - t - " + std::to_string(abar) + " has no root over F_" + std::to_string(p));
    LaurentModel at = a.truncated(prec);
    LaurentModel r(p, prec);
    for (int it = 0; it <= prec; ++it) {
        LaurentModel next = (r.frobenius() - at).truncated(prec);
        if (next == r)
            break;
        r = std::move(next);
    }
    bool ok = true;
    for (std::uint8_t c : out.residue_roots) {
        LaurentModel root = r + LaurentModel::constant(p, prec, c);
        LaurentModel res = (root.frobenius() - root - at).truncated(prec);
        ok = ok && res.is_zero();
        out.roots.push_back(root.truncated(prec));
    }
    out.residuals_vanish = ok;
    bool distinct = true;
    for (std::size_t i = 0; i < out.roots.size(); ++i)
        for (std::size_t j = i + 1; j < out.roots.size(); ++j)
            distinct = distinct && out.roots[i].coeff(0) != out.roots[j].coeff(0);
    out.distinct_mod_t = distinct;
    return out;
}

} // namespace charp

#endif
