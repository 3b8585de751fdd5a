#ifndef CHARP_TEXT_HPP
#define CHARP_TEXT_HPP

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "milnor.hpp"

namespace charp {

// ---------------------------------------------------------------- printing

inline std::string var_name(int i) { return "x" + std::to_string(i + 1); }

inline std::string to_text(const Monomial& m)
{
    std::string s;
    for (int i = 0; i < kMaxVars; ++i) {
        if (m.e[i] == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += var_name(i);
        if (m.e[i] > 1)
            s += '^' + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::string to_text(const Poly& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto& t : p.terms()) {
        if (!s.empty())
            s += " + ";
        if (t.m.deg == 0)
            s += std::to_string(t.c);
        else if (t.c == 1)
            s += to_text(t.m);
        else
            s += std::to_string(t.c) + '*' + to_text(t.m);
    }
    return s;
}

inline std::string to_text(const RatFunc& f)
{
    std::string num = to_text(f.num());
    if (f.is_polynomial())
        return num;
    if (f.num().size() > 1)
        num = '(' + num + ')';
    const Poly& d = f.den();
    bool bare = d.is_monomial() && d.lead().c == 1 && std::popcount(d.vars_mask()) == 1;
    std::string den = to_text(d);
    return num + '/' + (bare ? den : '(' + den + ')');
}

// Coefficients that are not a single term get parentheses so that the
// left-associative * / ^ chain reads back the same.
inline std::string coefficient_text(const RatFunc& c)
{
    std::string s = to_text(c);
    bool atom = c.is_polynomial() && c.num().is_monomial();
    return atom ? s : '(' + s + ')';
}

inline std::string to_text(const DiffForm& w)
{
    if (w.is_zero())
        return "0";
    if (w.degree() == 0)
        return to_text(w.coeff(0));
    std::string s;
    for (const auto& [idx, c] : w.terms()) {
        if (!s.empty())
            s += " + ";
        std::string basis;
        for (int i = 0; i < kMaxVars; ++i)
            if (idx & (1u << i))
                basis += (basis.empty() ? "" : "^") + std::string("dlog(") + var_name(i) + ')';
        s += c.is_one() ? basis : coefficient_text(c) + '*' + basis;
    }
    return s;
}

inline std::string to_text(const MilnorElem& m)
{
    if (m.empty())
        return "0";
    std::string s;
    for (const auto& sym : m.symbols()) {
        if (!s.empty())
            s += " + ";
        if (sym.mult != 1)
            s += std::to_string(sym.mult) + '*';
        s += '{' + to_text(sym.a) + ", " + to_text(sym.b) + '}';
    }
    return s;
}

inline std::string header_text(const FieldDesc& f, unsigned base = 0)
{
    std::string s = "GF(" + std::to_string(f.p) + ")(";
    for (int i = 0; i < f.nvars; ++i)
        s += (i ? "," : "") + var_name(i);
    s += ')';
    if (base != 0) {
        s += " over k^p(";
        bool first = true;
        for (int i = 0; i < f.nvars; ++i)
            if (base & (1u << i)) {
                s += (first ? "" : ",") + var_name(i);
                first = false;
            }
        s += ')';
    }
    return s;
}

// ----------------------------------------------------------------- parsing

using ParsedValue = std::variant<RatFunc, DiffForm, MilnorElem>;

struct ParseContext
{
    FieldDesc field;
    unsigned base = 0;

    TowerDesc tower() const { return TowerDesc::coordinate(field, base); }
};

struct ParsedInput
{
    ParseContext context;
    ParsedValue value;
    bool had_header = false;
};

inline const char* value_kind(const ParsedValue& v)
{
    switch (v.index()) {
    case 0: return "ratfunc";
    case 1: return "form";
    default: return "milnor";
    }
}

namespace detail {

class Parser
{
public:
    Parser(std::string_view text, std::size_t offset) : s_(text), pos_(offset) {}

    [[noreturn]] void error(const std::string& msg, std::size_t at) const
    {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(Errc::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
    [[noreturn]] void error(const std::string& msg) const { error(msg, pos_); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool at_end()
    {
        skip();
        return pos_ >= s_.size();
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c))
            error(std::string("expected '") + c + "'" + found());
    }

    std::string found()
    {
        if (at_end())
            return ", found end of input";
        return std::string(", found '") + s_[pos_] + "'";
    }

    std::string ident()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    long long integer()
    {
        skip();
        std::size_t start = pos_;
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1'000'000'000)
                error("integer too large", start);
            ++pos_;
        }
        if (start == pos_)
            error("expected an integer" + found());
        return v;
    }

    bool next_is_integer()
    {
        skip();
        std::size_t q = pos_;
        if (q < s_.size() && s_[q] == '-')
            ++q;
        while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q])))
            ++q;
        return q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]));
    }

    std::size_t pos() const { return pos_; }
    std::string_view text() const { return s_; }

private:
    std::string_view s_;
    std::size_t pos_;
};

// Index of a variable name: x1..xn always, x / y / z when n <= 3.
inline std::optional<int> variable_index(const std::string& name, int nvars)
{
    if (nvars <= 3 && name.size() == 1 && name[0] >= 'x' && name[0] <= 'z') {
        int i = name[0] - 'x';
        return i < nvars ? std::optional<int>(i) : std::nullopt;
    }
    if (name.size() >= 2 && name[0] == 'x') {
        int v = 0;
        for (std::size_t k = 1; k < name.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(name[k])))
                return std::nullopt;
            v = v * 10 + (name[k] - '0');
            if (v > kMaxVars)
                return std::nullopt;
        }
        if (v >= 1 && v <= nvars && name[1] != '0')
            return v - 1;
    }
    return std::nullopt;
}

class ExprParser
{
public:
    ExprParser(Parser& p, const ParseContext& ctx) : p_(p), ctx_(ctx) {}

    ParsedValue parse_all()
    {
        ParsedValue v = expr();
        if (!p_.at_end())
            p_.error("unexpected '" + std::string(1, p_.peek()) + "'");
        return v;
    }

    // One expression; stops at the first character it cannot use.
    ParsedValue parse_one() { return expr(); }

private:
    ParsedValue expr()
    {
        ParsedValue v = term();
        while (true) {
            std::size_t at = p_.pos();
            if (p_.accept('+'))
                v = add(v, term(), false, at);
            else if (p_.accept('-'))
                v = add(v, term(), true, at);
            else
                return v;
        }
    }

    ParsedValue term()
    {
        ParsedValue v = unary();
        while (true) {
            std::size_t at = p_.pos();
            if (p_.accept('*')) {
                v = mul(v, unary(), at);
            } else if (p_.accept('/')) {
                v = div(v, unary(), at);
            } else if (p_.peek() == '^') {
                p_.accept('^');
                v = wedge(v, unary(), at);
            } else {
                return v;
            }
        }
    }

    ParsedValue unary()
    {
        std::size_t at = p_.pos();
        if (p_.accept('-'))
            return negate(unary(), at);
        return factor();
    }

    ParsedValue factor()
    {
        ParsedValue v = primary();
        while (p_.peek() == '^' && [&] {
            Parser probe = p_;
            probe.accept('^');
            return probe.next_is_integer();
        }()) {
            std::size_t at = p_.pos();
            p_.accept('^');
            bool neg = p_.accept('-');
            long long e = p_.integer();
            auto* r = std::get_if<RatFunc>(&v);
            if (!r)
                p_.error("only rational functions can be raised to a power", at);
            v = r->pow(neg ? -e : e);
        }
        return v;
    }

    ParsedValue primary()
    {
        const FieldDesc& f = ctx_.field;
        char c = p_.peek();
        std::size_t at = p_.pos();
        if (c == '(') {
            p_.accept('(');
            ParsedValue v = expr();
            p_.expect(')');
            return v;
        }
        if (c == '{') {
            p_.accept('{');
            RatFunc a = as_ratfunc(expr(), at);
            p_.expect(',');
            RatFunc b = as_ratfunc(expr(), at);
            p_.expect('}');
            if (a.is_zero() || b.is_zero())
                p_.error("symbol entries must be nonzero", at);
            MilnorElem m(f);
            m.add(a, b);
            return m;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return RatFunc::constant(f, p_.integer());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = p_.ident();
            if (name == "dlog") {
                p_.expect('(');
                RatFunc a = as_ratfunc(expr(), at);
                p_.expect(')');
                if (a.is_zero())
                    p_.error("dlog of 0", at);
                return DiffForm::dlog(ctx_.tower(), a);
            }
            auto idx = variable_index(name, f.nvars);
            if (!idx)
                p_.error("unknown variable '" + name + "'", at);
            return RatFunc::var(f, *idx);
        }
        if (c == '\0')
            p_.error("unexpected end of input");
        p_.error("unexpected '" + std::string(1, c) + "'");
    }

    RatFunc as_ratfunc(const ParsedValue& v, std::size_t at)
    {
        if (auto* r = std::get_if<RatFunc>(&v))
            return *r;
        p_.error(std::string("expected a rational function, got a ") + value_kind(v), at);
    }

    DiffForm as_form(const ParsedValue& v)
    {
        if (auto* r = std::get_if<RatFunc>(&v))
            return DiffForm::scalar(ctx_.tower(), *r);
        return std::get<DiffForm>(v);
    }

    ParsedValue add(const ParsedValue& a, const ParsedValue& b, bool sub, std::size_t at)
    {
        if (a.index() == 0 && b.index() == 0) {
            const auto& x = std::get<RatFunc>(a);
            const auto& y = std::get<RatFunc>(b);
            return sub ? x - y : x + y;
        }
        if (a.index() == 2 && b.index() == 2) {
            const auto& y = std::get<MilnorElem>(b);
            return std::get<MilnorElem>(a) + (sub ? y.scaled(-1) : y);
        }
        if (a.index() != 2 && b.index() != 2) {
            DiffForm x = as_form(a), y = as_form(b);
            if (x.degree() != y.degree())
                p_.error("adding forms of degree " + std::to_string(x.degree()) + " and " +
                             std::to_string(y.degree()),
                         at);
            return sub ? x - y : x + y;
        }
        p_.error(std::string("cannot add a ") + value_kind(a) + " and a " + value_kind(b), at);
    }

    ParsedValue negate(const ParsedValue& v, std::size_t)
    {
        if (auto* r = std::get_if<RatFunc>(&v))
            return -*r;
        if (auto* w = std::get_if<DiffForm>(&v))
            return -*w;
        return std::get<MilnorElem>(v).scaled(-1);
    }

    ParsedValue mul(const ParsedValue& a, const ParsedValue& b, std::size_t at)
    {
        if (a.index() == 0 && b.index() == 0)
            return std::get<RatFunc>(a) * std::get<RatFunc>(b);
        if (a.index() == 0 && b.index() == 1)
            return std::get<RatFunc>(a) * std::get<DiffForm>(b);
        if (a.index() == 1 && b.index() == 0)
            return std::get<RatFunc>(b) * std::get<DiffForm>(a);
        if (a.index() == 0 && b.index() == 2)
            return scale_milnor(std::get<RatFunc>(a), std::get<MilnorElem>(b), at);
        if (a.index() == 2 && b.index() == 0)
            return scale_milnor(std::get<RatFunc>(b), std::get<MilnorElem>(a), at);
        if (a.index() == 1 && b.index() == 1)
            p_.error("use ^ for the wedge product of forms", at);
        p_.error(std::string("cannot multiply a ") + value_kind(a) + " and a " + value_kind(b), at);
    }

    ParsedValue scale_milnor(const RatFunc& c, const MilnorElem& m, std::size_t at)
    {
        if (!c.is_constant())
            p_.error("symbols can only be scaled by integers", at);
        return m.scaled(c.num().constant_term());
    }

    ParsedValue div(const ParsedValue& a, const ParsedValue& b, std::size_t at)
    {
        auto* d = std::get_if<RatFunc>(&b);
        if (!d)
            p_.error(std::string("cannot divide by a ") + value_kind(b), at);
        if (d->is_zero())
            fail(Errc::DivisionByZero, "division by zero in expression");
        if (auto* r = std::get_if<RatFunc>(&a))
            return *r / *d;
        if (auto* w = std::get_if<DiffForm>(&a))
            return d->inverse() * *w;
        p_.error("cannot divide a symbol", at);
    }

    ParsedValue wedge(const ParsedValue& a, const ParsedValue& b, std::size_t at)
    {
        if (a.index() == 2 || b.index() == 2)
            p_.error("wedge of a symbol", at);
        return charp::wedge(as_form(a), as_form(b));
    }

    Parser& p_;
    const ParseContext& ctx_;
};

// Largest variable index mentioned, for inputs without a header.
inline int infer_nvars(std::string_view text)
{
    int n = 0;
    for (std::size_t i = 0; i < text.size();) {
        if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
            ++j;
        std::string w(text.substr(i, j - i));
        if (w.size() == 1 && w[0] >= 'x' && w[0] <= 'z') {
            n = std::max(n, w[0] - 'x' + 1);
        } else if (w.size() >= 2 && w[0] == 'x') {
            int v = 0;
            bool digits = true;
            for (std::size_t k = 1; k < w.size(); ++k) {
                digits = digits && std::isdigit(static_cast<unsigned char>(w[k]));
                if (digits)
                    v = std::min(v * 10 + (w[k] - '0'), 99);
            }
            if (digits)
                n = std::max(n, v);
        }
        i = j;
    }
    return std::max(n, 1);
}

} // namespace detail

// Header "GF(p)(x1,...,xn)" or "GF(p)(x,y,z)", optionally followed by
// "over k^p(v,...)" naming the base of a coordinate tower. Returns the
// offset just past the header.
inline std::pair<ParseContext, std::size_t> parse_header(std::string_view text)
{
    detail::Parser p(text, 0);
    std::size_t at = p.pos();
    if (p.ident() != "GF")
        p.error("expected 'GF(p)(...)'", at);
    p.expect('(');
    std::size_t pat = p.pos();
    long long prime = p.integer();
    if (!is_supported_prime(static_cast<int>(prime)))
        p.error("unsupported prime " + std::to_string(prime), pat);
    p.expect(')');
    p.expect('(');
    std::vector<std::string> names;
    if (p.peek() != ')')
        do {
            std::size_t nat = p.pos();
            std::string name = p.ident();
            if (name.empty())
                p.error("expected a variable name" + p.found(), nat);
            names.push_back(name);
        } while (p.accept(','));
    p.expect(')');
    const int n = static_cast<int>(names.size());
    if (n > kMaxVars)
        p.error("at most " + std::to_string(kMaxVars) + " variables");
    for (int i = 0; i < n; ++i) {
        auto idx = detail::variable_index(names[i], n);
        if (!idx || *idx != i)
            p.error("variables must be x1..xn in order (or x, y, z for n <= 3), got '" + names[i] + "'");
    }
    ParseContext ctx{FieldDesc(static_cast<int>(prime), n), 0};
    std::size_t save = p.pos();
    if (p.ident() == "over") {
        std::size_t kat = p.pos();
        if (p.ident() != "k" || !p.accept('^') || p.ident() != "p")
            p.error("expected 'k^p(...)'", kat);
        p.expect('(');
        if (p.peek() != ')')
            do {
                std::size_t nat = p.pos();
                auto idx = detail::variable_index(p.ident(), n);
                if (!idx)
                    p.error("unknown base variable", nat);
                ctx.base |= 1u << *idx;
            } while (p.accept(','));
        p.expect(')');
    } else {
        p = detail::Parser(text, save);
    }
    return {ctx, p.pos()};
}

inline ParsedValue parse_expr(std::string_view text, const ParseContext& ctx)
{
    detail::Parser p(text, 0);
    detail::ExprParser e(p, ctx);
    return e.parse_all();
}

// "[header;] expr". Without a header the prime defaults to `prime` and the
// variable count to `nvars`, or to the largest variable mentioned.
inline ParsedInput parse_input(std::string_view text, std::optional<int> prime = std::nullopt,
                               std::optional<int> nvars = std::nullopt)
{
    ParsedInput out;
    std::size_t start = 0;
    std::size_t q = 0;
    while (q < text.size() && std::isspace(static_cast<unsigned char>(text[q])))
        ++q;
    if (text.substr(q, 3) == "GF(") {
        auto [ctx, end] = parse_header(text);
        detail::Parser p(text, end);
        p.expect(';');
        start = p.pos();
        out.context = ctx;
        out.had_header = true;
        if (prime && *prime != ctx.field.p)
            fail(Errc::FieldMismatch, "header prime differs from --prime");
        if (nvars && *nvars != ctx.field.nvars)
            fail(Errc::FieldMismatch, "header variable count differs from --vars");
    } else {
        int n = nvars ? *nvars : detail::infer_nvars(text);
        out.context = ParseContext{FieldDesc(prime.value_or(2), n), 0};
    }
    detail::Parser p(text, start);
    detail::ExprParser e(p, out.context);
    out.value = e.parse_all();
    return out;
}

// Context shared by several inputs: the first header wins, otherwise the
// prime is `prime` (default 2) and the variable count `nvars` or the largest
// variable any input mentions.
inline ParseContext context_for(const std::vector<std::string>& texts, std::optional<int> prime = std::nullopt,
                                std::optional<int> nvars = std::nullopt)
{
    for (const auto& t : texts) {
        std::size_t q = t.find_first_not_of(" \t\r\n");
        if (q != std::string::npos && t.compare(q, 3, "GF(") == 0) {
            ParseContext ctx = parse_header(t).first;
            if (prime && *prime != ctx.field.p)
                fail(Errc::FieldMismatch, "header prime differs from --prime");
            if (nvars && *nvars != ctx.field.nvars)
                fail(Errc::FieldMismatch, "header variable count differs from --vars");
            return ctx;
        }
    }
    int n = 1;
    for (const auto& t : texts)
        n = std::max(n, detail::infer_nvars(t));
    return ParseContext{FieldDesc(prime.value_or(2), nvars.value_or(n)), 0};
}

// Offset where the expression starts: past "header;" when one is present,
// which must then describe ctx.
inline std::size_t skip_header(std::string_view text, const ParseContext& ctx)
{
    std::size_t q = 0;
    while (q < text.size() && std::isspace(static_cast<unsigned char>(text[q])))
        ++q;
    if (text.substr(q, 3) != "GF(")
        return 0;
    auto [own, end] = parse_header(text);
    if (!(own.field == ctx.field) || own.base != ctx.base)
        fail(Errc::FieldMismatch, "header '" + header_text(own.field, own.base) + "' differs from '" +
                                      header_text(ctx.field, ctx.base) + "'");
    detail::Parser p(text, end);
    p.expect(';');
    return p.pos();
}

inline ParsedValue parse_in_context(std::string_view text, const ParseContext& ctx)
{
    detail::Parser p(text, skip_header(text, ctx));
    detail::ExprParser e(p, ctx);
    return e.parse_all();
}

} // namespace charp

#endif
