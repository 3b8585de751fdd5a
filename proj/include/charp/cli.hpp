#ifndef CHARP_CLI_HPP
#define CHARP_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "brauer.hpp"
#include "kato.hpp"
#include "random.hpp"
#include "text.hpp"

namespace charp::cli {

using json = nlohmann::ordered_json;

struct Flags
{
    bool json = false;
    std::optional<int> prime;
    std::optional<int> vars;
    std::uint64_t seed = 1;
    int degree_bound = 3;
    long long step_budget = 1'000'000;
    std::optional<int> rank;
    std::optional<int> n;
    std::optional<int> place;
    std::optional<int> level;
    std::optional<int> prec;
    std::optional<int> count;
    bool timing = true;

    friend bool operator==(const Flags&, const Flags&) = default;
};

struct Command
{
    std::string verb;
    std::string action;
    std::vector<std::string> args;
    Flags flags;

    friend bool operator==(const Command&, const Command&) = default;

    std::string to_text() const;
};

enum class Status { Ok, Error, Unknown };

inline const char* status_name(Status s)
{
    switch (s) {
    case Status::Ok: return "ok";
    case Status::Error: return "error";
    case Status::Unknown: return "unknown";
    }
    return "error";
}

inline int exit_code(Status s) { return s == Status::Ok ? 0 : s == Status::Error ? 1 : 2; }

struct Report
{
    std::string command;
    Status status = Status::Ok;
    json payload = json::object();
    json certificates = json::object();
    std::string error_name;
    std::string error_message;
    std::optional<double> timing_ms;
};

// ---------------------------------------------------------------- commands

inline const std::map<std::string, std::vector<std::string>>& verbs()
{
    static const std::map<std::string, std::vector<std::string>> v{
        {"ff", {"normalize", "gcd", "valuation", "random"}},
        {"pb", {"independent", "complete", "decompose", "ppower", "sab"}},
        {"forms", {"d", "cartier", "boundary", "nu-test", "dlog-solve"}},
        {"milnor", {"decompose", "dlog", "random"}},
        {"alg", {"symbol", "nrd", "split", "hensel", "dn"}},
        {"kato", {"rho0", "rho1", "present", "oddlow", "division"}},
    };
    return v;
}

namespace detail {

inline std::string quote(const std::string& s)
{
    bool bare = !s.empty();
    for (char c : s)
        bare = bare && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' ||
                        c == '*' || c == '/' || c == '^');
    if (bare && s[0] != '-')
        return s;
    if (s.find('"') == std::string::npos)
        return '"' + s + '"';
    return '\'' + s + '\'';
}

inline void build_app(CLI::App& app, Command& cmd, std::string* batch)
{
    auto& f = cmd.flags;
    app.add_option("verb", cmd.verb, "ff | pb | forms | milnor | alg | kato");
    app.add_option("action", cmd.action, "operation of the verb");
    app.add_option("args", cmd.args, "expressions");
    app.add_flag("--json", f.json, "emit the report as JSON");
    app.add_option("--prime", f.prime, "characteristic when no header is given");
    app.add_option("--vars", f.vars, "number of variables when no header is given");
    app.add_option("--seed", f.seed, "seed for random generators");
    app.add_option("--degree-bound", f.degree_bound, "degree bound for generators and searches");
    app.add_option("--step-budget", f.step_budget, "limit on expensive solver steps");
    app.add_option("--rank", f.rank, "p-rank for decompositions and presentations");
    app.add_option("--n", f.n, "index parameter for dn and oddlow");
    app.add_option("--place", f.place, "valuation place x_i, 1-based");
    app.add_option("--level", f.level, "filtration level for rho1");
    app.add_option("--prec", f.prec, "series precision");
    app.add_option("--count", f.count, "number of generated elements");
    app.add_flag_callback("--no-timing", [&f] { f.timing = false; }, "omit timing from reports");
    if (batch)
        app.add_option("--batch", *batch, "file with one command per line");
}

inline void validate(const Command& cmd)
{
    auto it = verbs().find(cmd.verb);
    if (it == verbs().end())
        fail(Errc::SyntaxError, "unknown verb '" + cmd.verb + "'");
    if (std::find(it->second.begin(), it->second.end(), cmd.action) == it->second.end())
        fail(Errc::SyntaxError, "unknown action '" + cmd.action + "' for " + cmd.verb);
}

inline Command parse_with(const std::function<void(CLI::App&)>& run)
{
    Command cmd;
    CLI::App app{"charp"};
    build_app(app, cmd, nullptr);
    try {
        run(app);
    } catch (const CLI::ParseError& e) {
        fail(Errc::SyntaxError, e.what());
    }
    validate(cmd);
    return cmd;
}

} // namespace detail

// tokens exclude the program name.
inline Command parse_command(std::vector<std::string> tokens)
{
    std::reverse(tokens.begin(), tokens.end());
    return detail::parse_with([&](CLI::App& app) { app.parse(tokens); });
}

// One command line with shell-style quoting.
inline Command parse_command_line(const std::string& line)
{
    return detail::parse_with([&](CLI::App& app) { app.parse(line, false); });
}

inline std::string Command::to_text() const
{
    std::string s = verb + " " + action;
    auto opt = [&](const char* name, const std::optional<int>& v) {
        if (v)
            s += std::string(" --") + name + " " + std::to_string(*v);
    };
    opt("prime", flags.prime);
    opt("vars", flags.vars);
    opt("rank", flags.rank);
    opt("n", flags.n);
    opt("place", flags.place);
    opt("level", flags.level);
    opt("prec", flags.prec);
    opt("count", flags.count);
    const Flags d;
    if (flags.seed != d.seed)
        s += " --seed " + std::to_string(flags.seed);
    if (flags.degree_bound != d.degree_bound)
        s += " --degree-bound " + std::to_string(flags.degree_bound);
    if (flags.step_budget != d.step_budget)
        s += " --step-budget " + std::to_string(flags.step_budget);
    if (flags.json)
        s += " --json";
    if (!flags.timing)
        s += " --no-timing";
    for (const auto& a : args)
        s += " " + detail::quote(a);
    return s;
}

// ------------------------------------------------------------ presentations

inline std::string to_text(const FormalUnit& u)
{
    std::string base = u.name;
    if (u.residue) {
        base = "(1 + pi^" + std::to_string(u.level);
        base += u.residue->is_one() ? ")" : "*" + coefficient_text(*u.residue) + ")";
    }
    int e = u.exponent < 0 ? -u.exponent : u.exponent;
    return e == 1 ? base : base + "^" + std::to_string(e);
}

inline std::string to_text(const SlotSide& s)
{
    std::string out;
    if (s.pi)
        out = "pi";
    else if (s.lift)
        out = s.units.empty() ? to_text(*s.lift) : coefficient_text(*s.lift);
    for (const auto& u : s.units) {
        if (u.exponent < 0)
            out = (out.empty() ? "1" : out) + "/" + to_text(u);
        else
            out += (out.empty() ? "" : "*") + to_text(u);
    }
    return out;
}

inline std::string to_text(const BrauerPresentation& b)
{
    std::string s;
    for (const auto& slot : b.slots)
        s += (s.empty() ? "(" : " + (") + to_text(slot.left) + ", " + to_text(slot.right) + ")";
    return s.empty() ? "0" : s;
}

// "(u, v) + (pi, w) + ..." with each side pi or a nonzero rational function.
inline BrauerPresentation parse_presentation(std::string_view text, const ParseContext& ctx)
{
    charp::detail::Parser p(text, skip_header(text, ctx));
    BrauerPresentation out{ctx.field, {}, 0};
    auto side = [&]() {
        charp::detail::Parser probe = p;
        std::size_t at = probe.pos();
        if (probe.ident() == "pi" && (probe.peek() == ',' || probe.peek() == ')')) {
            p = probe;
            return SlotSide::parameter();
        }
        charp::detail::ExprParser e(p, ctx);
        ParsedValue v = e.parse_one();
        auto* r = std::get_if<RatFunc>(&v);
        if (!r)
            p.error("slot entries must be rational functions or pi", at);
        if (r->is_zero())
            p.error("slot entry is zero", at);
        return SlotSide::residue(*r);
    };
    do {
        p.expect('(');
        Slot s;
        s.left = side();
        p.expect(',');
        s.right = side();
        p.expect(')');
        out.slots.push_back(std::move(s));
    } while (p.accept('+'));
    if (!p.at_end())
        p.error("expected '+' or end of input" + p.found());
    return out;
}

// -------------------------------------------------------------- dispatch

namespace detail {

inline json texts(const std::vector<RatFunc>& v)
{
    json a = json::array();
    for (const auto& e : v)
        a.push_back(charp::to_text(e));
    return a;
}

inline json optional_text(const std::optional<RatFunc>& v) { return v ? json(charp::to_text(*v)) : json(nullptr); }

inline std::string series_text(const LaurentModel& s)
{
    std::string out;
    for (auto [e, c] : s.terms()) {
        std::string mono = e == 0 ? "" : e == 1 ? "x1" : "x1^" + std::to_string(e);
        std::string term = mono.empty() ? std::to_string(c) : (c == 1 ? mono : std::to_string(c) + "*" + mono);
        out += (out.empty() ? "" : " + ") + term;
    }
    return (out.empty() ? "0" : out) + " + O(x1^" + std::to_string(s.precision()) + ")";
}

inline json presentation_json(const BrauerPresentation& b)
{
    json slots = json::array();
    for (const auto& s : b.slots)
        slots.push_back({{"left", to_text(s.left)},
                         {"right", to_text(s.right)},
                         {"kinds", {s.left.kind(), s.right.kind()}},
                         {"level", s.level}});
    return {{"text", to_text(b)}, {"symbol_count", b.symbol_count()}, {"slots", slots}};
}

inline json csa_json(const CsaReport& c)
{
    json j{{"associative", c.associative},
           {"triples_checked", c.triples_checked},
           {"exhaustive", c.exhaustive},
           {"relations_hold", c.relations_hold},
           {"relation_failures", c.relation_failures},
           {"center_dimension", c.center_dimension},
           {"ok", c.ok()}};
    if (c.first_failure)
        j["first_failure"] = *c.first_failure;
    return j;
}

inline json verdict_json(const RatFunc& a, const RatFunc& b, const SplitVerdict& v)
{
    json j{{"verdict", split_kind_name(v.kind)}};
    if (v.kind == SplitKind::Split) {
        j["witness"] = texts(v.witness);
        j["witness_source"] = v.witness_source;
        j["witness_checks"] = check_split_witness(a, b, v.witness);
    }
    if (v.certificate) {
        const auto& c = *v.certificate;
        j["certificate"] = {{"place", var_name(c.place_var)},
                            {"residue_a", c.residue_a},
                            {"residue_poly_values", c.residue_poly_values},
                            {"residue_irreducible", c.residue_irreducible},
                            {"norm_form_points", c.norm_form_points},
                            {"norm_form_anisotropic", c.norm_form_anisotropic},
                            {"valuation_b", c.valuation_b},
                            {"residue_degree", c.residue_degree},
                            {"residue_field_finite", c.residue_field_finite},
                            {"holds", c.holds()},
                            {"rechecked", check_nonsplit_certificate(a, b, c)}};
    }
    if (!v.reason.empty())
        j["reason"] = v.reason;
    return j;
}

inline json memberships_json(const std::vector<Membership>& ms)
{
    json a = json::array();
    for (const auto& m : ms)
        a.push_back({{"claim", m.claim}, {"holds", m.holds}});
    return a;
}

inline json mu_json(const Mu& mu)
{
    json a = json::array();
    for (auto e : mu)
        a.push_back(int(e));
    return a;
}

class Dispatch
{
public:
    Dispatch(const Command& cmd, Report& r) : cmd_(cmd), flags_(cmd.flags), r_(r) {}

    void run()
    {
        const std::string key = cmd_.verb + " " + cmd_.action;
        static const std::map<std::string, void (Dispatch::*)()> table{
            {"ff normalize", &Dispatch::ff_normalize},       {"ff gcd", &Dispatch::ff_gcd},
            {"ff valuation", &Dispatch::ff_valuation},       {"ff random", &Dispatch::ff_random},
            {"pb independent", &Dispatch::pb_independent},   {"pb complete", &Dispatch::pb_complete},
            {"pb decompose", &Dispatch::pb_decompose},       {"pb ppower", &Dispatch::pb_ppower},
            {"pb sab", &Dispatch::pb_sab},                   {"forms d", &Dispatch::forms_d},
            {"forms cartier", &Dispatch::forms_cartier},     {"forms boundary", &Dispatch::forms_boundary},
            {"forms nu-test", &Dispatch::forms_nu},          {"forms dlog-solve", &Dispatch::forms_dlog_solve},
            {"milnor decompose", &Dispatch::milnor_decompose}, {"milnor dlog", &Dispatch::milnor_dlog},
            {"milnor random", &Dispatch::milnor_random},     {"alg symbol", &Dispatch::alg_symbol},
            {"alg nrd", &Dispatch::alg_nrd},                 {"alg split", &Dispatch::alg_split},
            {"alg hensel", &Dispatch::alg_hensel},           {"alg dn", &Dispatch::alg_dn},
            {"kato rho0", &Dispatch::kato_rho0},             {"kato rho1", &Dispatch::kato_rho1},
            {"kato present", &Dispatch::kato_present},       {"kato oddlow", &Dispatch::kato_oddlow},
            {"kato division", &Dispatch::kato_division},
        };
        (this->*table.at(key))();
    }

private:
    // ------------------------------------------------------------ inputs

    void arity(std::size_t lo, std::size_t hi)
    {
        const auto n = cmd_.args.size();
        if (n < lo || n > hi) {
            std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
            fail(Errc::SyntaxError, cmd_.verb + " " + cmd_.action + " takes " + want + " argument(s), got " +
                                        std::to_string(n));
        }
    }

    const ParseContext& context()
    {
        if (!ctx_) {
            ctx_ = context_for(cmd_.args, flags_.prime, flags_.vars);
            r_.payload["field"] = header_text(ctx_->field, ctx_->base);
        }
        return *ctx_;
    }

    ParsedValue value(std::size_t i) { return parse_in_context(cmd_.args[i], context()); }

    RatFunc ratfunc(std::size_t i)
    {
        auto v = value(i);
        if (auto* r = std::get_if<RatFunc>(&v))
            return *r;
        fail(Errc::SyntaxError, "argument " + std::to_string(i + 1) + ": expected a rational function, got a " +
                                    value_kind(v));
    }

    Poly polynomial(std::size_t i)
    {
        RatFunc r = ratfunc(i);
        if (!r.is_polynomial())
            fail(Errc::PreconditionViolated, "argument " + std::to_string(i + 1) + " is not a polynomial");
        return r.num();
    }

    DiffForm form(std::size_t i)
    {
        auto v = value(i);
        if (auto* r = std::get_if<RatFunc>(&v))
            return DiffForm::scalar(context().tower(), *r);
        if (auto* w = std::get_if<DiffForm>(&v))
            return *w;
        fail(Errc::SyntaxError, "argument " + std::to_string(i + 1) + ": expected a form, got a symbol sum");
    }

    MilnorElem milnor(std::size_t i)
    {
        auto v = value(i);
        if (auto* m = std::get_if<MilnorElem>(&v))
            return *m;
        fail(Errc::SyntaxError, "argument " + std::to_string(i + 1) + ": expected a symbol sum like {f, g}");
    }

    std::vector<RatFunc> ratfuncs(std::size_t from)
    {
        std::vector<RatFunc> out;
        for (std::size_t i = from; i < cmd_.args.size(); ++i)
            out.push_back(ratfunc(i));
        return out;
    }

    FieldDesc generated_field()
    {
        FieldDesc f(flags_.prime.value_or(2), flags_.vars.value_or(2));
        r_.payload["field"] = header_text(f);
        return f;
    }

    int place()
    {
        int v = flags_.place.value_or(1);
        if (v < 1 || v > context().field.nvars)
            fail(Errc::DimensionMismatch, "--place must name one of x1..x" + std::to_string(context().field.nvars));
        return v - 1;
    }

    DecompOptions decomp_options() const
    {
        DecompOptions o;
        o.step_budget = flags_.step_budget;
        return o;
    }

    CDVFModel model() { return CDVFModel{context().field, "pi", std::nullopt, true}; }

    json& pay() { return r_.payload; }
    json& cert() { return r_.certificates; }

    // ----------------------------------------------------------------- ff

    void ff_normalize()
    {
        arity(1, 1);
        auto v = value(0);
        std::string t = std::visit([](const auto& x) { return charp::to_text(x); }, v);
        pay()["kind"] = value_kind(v);
        pay()["value"] = t;
        if (auto* r = std::get_if<RatFunc>(&v)) {
            pay()["numerator"] = charp::to_text(r->num());
            pay()["denominator"] = charp::to_text(r->den());
        }
        cert()["reparse_identical"] = parse_in_context(t, context()) == v;
    }

    void ff_gcd()
    {
        arity(2, 2);
        Poly a = polynomial(0), b = polynomial(1);
        Poly g = gcd(a, b);
        pay()["gcd"] = charp::to_text(g);
        if (g.is_zero())
            return;
        auto qa = Poly::exact_div(a, g), qb = Poly::exact_div(b, g);
        cert()["divides_first"] = qa.has_value();
        cert()["divides_second"] = qb.has_value();
        cert()["cofactors_coprime"] = qa && qb && gcd(*qa, *qb).is_one();
    }

    void ff_valuation()
    {
        arity(1, 1);
        RatFunc f = ratfunc(0);
        int v = place();
        auto res = valuation(f, DVal{v});
        pay()["place"] = var_name(v);
        pay()["order"] = res.order;
        pay()["residue"] = optional_text(res.residue);
    }

    void ff_random()
    {
        arity(0, 0);
        FieldDesc f = generated_field();
        RandomSource rs(flags_.seed);
        json out = json::array();
        bool canonical = true;
        ParseContext ctx{f, 0};
        for (int i = 0; i < flags_.count.value_or(5); ++i) {
            RatFunc e = rs.ratfunc(f, flags_.degree_bound);
            std::string t = charp::to_text(e);
            canonical = canonical && parse_in_context(t, ctx) == ParsedValue(e);
            out.push_back(t);
        }
        pay()["elements"] = out;
        cert()["reparse_identical"] = canonical;
    }

    // ----------------------------------------------------------------- pb

    void pb_independent()
    {
        arity(1, kMaxVars);
        auto elems = ratfuncs(0);
        auto r = p_independent(elems);
        pay()["independent"] = r.independent;
        cert()["wedge"] = charp::to_text(r.certificate);
    }

    void pb_complete()
    {
        arity(1, kMaxVars);
        auto b = complete_pbasis(ratfuncs(0));
        pay()["pbasis"] = texts(b.elems);
        auto check = p_independent(b.elems);
        cert()["independent"] = check.independent;
        cert()["wedge"] = charp::to_text(check.certificate);
    }

    void pb_decompose()
    {
        arity(1, 1);
        RatFunc c = ratfunc(0);
        TowerDesc t = context().tower();
        auto d = monomial_decompose(c, t);
        json parts = json::array();
        std::vector<std::string> free;
        for (int i : t.free_indices())
            free.push_back(var_name(i));
        for (const auto& [mu, a] : d.parts) {
            json e{{"mu", mu_json(mu)}, {"coefficient", charp::to_text(a)}};
            if (t.base == 0)
                e["root"] = optional_text(a.pth_root());
            parts.push_back(e);
        }
        pay()["free"] = free;
        pay()["parts"] = parts;
        cert()["reconstructs"] = reconstruct(d) == c;
    }

    void pb_ppower()
    {
        arity(3, 3);
        RatFunc c = ratfunc(0), a = ratfunc(1), b = ratfunc(2);
        bool crit = ppower_by_criterion(c, a, b);
        auto root = c.pth_root();
        pay()["ppower"] = crit;
        pay()["pth_root"] = optional_text(root);
        cert()["agrees_with_root"] = crit == root.has_value();
    }

    void pb_sab()
    {
        arity(3, 3);
        RatFunc c = ratfunc(0), a = ratfunc(1), b = ratfunc(2);
        auto s = sab_test(c, a, b);
        pay()["member"] = s.member;
        cert()["pbasis"] = texts(s.basis.elems);
        json sup = json::array();
        for (const auto& mu : s.support)
            sup.push_back(mu_json(mu));
        cert()["support"] = sup;
    }

    // -------------------------------------------------------------- forms

    void forms_d()
    {
        arity(1, 1);
        DiffForm w = form(0);
        DiffForm dw = differential(w);
        pay()["value"] = charp::to_text(dw);
        pay()["degree"] = dw.degree();
        cert()["d_of_value_zero"] = differential(dw).is_zero();
    }

    void forms_cartier()
    {
        arity(1, 1);
        DiffForm w = form(0);
        DiffForm c = cartier(w);
        pay()["value"] = charp::to_text(c);
        DiffForm diff = w - gamma(c);
        cert()["difference"] = charp::to_text(diff);
        cert()["difference_is_boundary"] = is_boundary(diff).boundary;
    }

    void forms_boundary()
    {
        arity(1, 1);
        DiffForm w = form(0);
        bool cycle = is_cycle(w);
        auto b = is_boundary(w);
        pay()["cycle"] = cycle;
        pay()["boundary"] = b.boundary;
        if (cycle)
            pay()["zero_component"] = charp::to_text(zero_component(w));
        pay()["antiderivative"] = b.antiderivative ? json(charp::to_text(*b.antiderivative)) : json(nullptr);
        if (b.antiderivative && w.degree() > 0)
            cert()["antiderivative_checks"] = differential(*b.antiderivative) == w;
    }

    void forms_nu()
    {
        arity(1, 1);
        DiffForm w = form(0);
        auto r = nu_member(w);
        pay()["member"] = r.member;
        pay()["witness"] = charp::to_text(r.witness);
        if (r.member && w.degree() > 0)
            cert()["witness_antiderivative_checks"] = differential(r.witness) == gamma(w) - w;
        else if (!r.member)
            cert()["witness_nonzero"] = !r.witness.is_zero();
    }

    void forms_dlog_solve()
    {
        arity(1, 1);
        DiffForm w = form(0);
        auto y = dlog_solve(w);
        pay()["solution"] = optional_text(y);
        if (y)
            cert()["dlog_matches"] = DiffForm::dlog(w.tower(), *y) == w;
    }

    // ------------------------------------------------------------- milnor

    DiffForm nu2_input(std::size_t i)
    {
        auto v = value(i);
        if (auto* m = std::get_if<MilnorElem>(&v))
            return dlog_map(*m);
        if (auto* w = std::get_if<DiffForm>(&v))
            return *w;
        fail(Errc::SyntaxError, "expected a symbol sum or a 2-form");
    }

    static json pair_json(const char* name, const SymbolPair& s)
    {
        return {{"name", name},
                {"first", optional_text(s.first)},
                {"second", optional_text(s.second)},
                {"zero", s.is_zero()}};
    }

    void milnor_decompose()
    {
        arity(1, 1);
        DiffForm theta = nu2_input(0);
        int rank = flags_.rank.value_or(theta.field().nvars);
        if (rank != theta.field().nvars)
            fail(Errc::RankMismatch, "--rank " + std::to_string(rank) + " but the field has " +
                                         std::to_string(theta.field().nvars) + " variables");
        pay()["input_form"] = charp::to_text(theta);
        if (rank == 3) {
            auto d = theorem_rep(theta, decomp_options());
            pay()["symbols"] = json::array({pair_json("x", d.x), pair_json("y", d.y), pair_json("z", d.z)});
            pay()["symbol_count"] = d.symbol_count();
            pay()["steps"] = d.steps;
            cert()["recomposes"] = recompose(d, theta.tower()) == theta;
            cert()["pbasis"] = texts(d.pbasis);
            cert()["pbasis_certified"] = d.pbasis_certified;
            cert()["pbasis_wedge"] = charp::to_text(d.pbasis_form);
            cert()["memberships"] = memberships_json(d.memberships);
        } else if (rank == 2) {
            auto d = decompose_rank2(theta, decomp_options());
            pay()["zero"] = d.zero;
            json syms = json::array();
            if (!d.zero)
                syms.push_back({{"first", charp::to_text(d.z1)}, {"second", charp::to_text(d.z2)}});
            pay()["symbols"] = syms;
            pay()["symbol_count"] = d.zero ? 0 : 1;
            DiffForm back = d.zero ? DiffForm(theta.tower(), 2) : dlog_wedge(theta.tower(), d.z1, d.z2);
            cert()["recomposes"] = back == theta;
            cert()["pbasis_certified"] = d.zero || d.pbasis_certified;
            cert()["memberships"] = memberships_json(d.memberships);
        } else {
            fail(Errc::RankMismatch, "decompose supports --rank 2 or 3");
        }
    }

    void milnor_dlog()
    {
        arity(1, 1);
        MilnorElem m = milnor(0);
        DiffForm w = dlog_map(m);
        pay()["symbols"] = m.symbols().size();
        pay()["value"] = charp::to_text(w);
        cert()["nu_member"] = nu_member(w).member;
    }

    void milnor_random()
    {
        arity(0, 0);
        FieldDesc f = generated_field();
        RandomSource rs(flags_.seed);
        json out = json::array();
        for (int i = 0; i < flags_.count.value_or(5); ++i)
            out.push_back(charp::to_text(rs.symbol_sum(f, 6, flags_.degree_bound)));
        pay()["elements"] = out;
    }

    // ---------------------------------------------------------------- alg

    void alg_symbol()
    {
        arity(2, 2);
        RatFunc a = ratfunc(0), b = ratfunc(1);
        auto A = build_symbol_algebra(a, b);
        pay()["symbol"] = "[" + charp::to_text(a) + ", " + charp::to_text(b) + ")";
        pay()["dimension"] = A.dim();
        json labels = json::array();
        for (std::size_t i = 0; i < A.dim(); ++i)
            labels.push_back(A.label(i));
        pay()["basis"] = labels;
        cert()["csa"] = csa_json(verify_csa(A));
    }

    void alg_nrd()
    {
        const FieldDesc probe = context().field;
        const std::size_t dim = static_cast<std::size_t>(probe.p) * probe.p;
        arity(3, 2 + dim);
        RatFunc a = ratfunc(0), b = ratfunc(1);
        auto A = build_symbol_algebra(a, b);
        AlgebraElement z(A.dim(), RatFunc(A.field));
        for (std::size_t i = 2; i < cmd_.args.size(); ++i)
            z[i - 2] = ratfunc(i);
        std::string et;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (!z[i].is_zero()) {
                std::string label = A.label(i);
                std::string term = label == "1" ? coefficient_text(z[i])
                                   : z[i].is_one() ? label
                                                   : coefficient_text(z[i]) + "*" + label;
                et += (et.empty() ? "" : " + ") + term;
            }
        pay()["element"] = et.empty() ? "0" : et;
        RatFunc n = reduced_norm(z, A);
        pay()["reduced_norm"] = charp::to_text(n);
        cert()["degree"] = probe.p;
    }

    void alg_split()
    {
        arity(2, 2);
        RatFunc a = ratfunc(0), b = ratfunc(1);
        int v = place();
        auto verdict = split_test_norm(a, b, DVal{v}, flags_.degree_bound);
        json j = verdict_json(a, b, verdict);
        pay()["verdict"] = j["verdict"];
        j.erase("verdict");
        cert() = j;
        if (verdict.kind == SplitKind::Unknown)
            r_.status = Status::Unknown;
    }

    void alg_hensel()
    {
        arity(1, 1);
        Poly a = polynomial(0);
        if (a.field().nvars != 1)
            fail(Errc::PreconditionViolated, "hensel works over F_p[[x1]]; give a polynomial in one variable");
        int prec = flags_.prec.value_or(kDefaultLaurentPrecision);
        LaurentModel s(a.prime(), prec);
        for (const auto& t : a.terms())
            s.set(static_cast<int>(t.m.e[0]), t.c);
        auto h = hensel_artin_schreier(s, prec);
        pay()["equation"] = "t^" + std::to_string(a.prime()) + " - t - " + coefficient_text(RatFunc(a));
        pay()["precision"] = prec;
        json roots = json::array();
        for (const auto& r : h.roots)
            roots.push_back(series_text(r));
        pay()["residue_roots"] = h.residue_roots;
        pay()["roots"] = roots;
        cert()["residuals_vanish"] = h.residuals_vanish;
        cert()["distinct_mod_x1"] = h.distinct_mod_t;
    }

    void alg_dn()
    {
        arity(0, 0);
        int n = flags_.n.value_or(1);
        int p = flags_.prime.value_or(2);
        auto d = construct_Dn(n, p);
        pay()["n"] = n;
        pay()["field"] = header_text(d.field);
        json pres = json::array();
        for (const auto& s : d.presentation)
            pres.push_back("[" + charp::to_text(s.a) + ", " + charp::to_text(s.b) + ")");
        pay()["presentation"] = pres;
        pay()["dimension"] = d.algebra.dim();
        FieldDesc f1{p, 1};
        cert()["csa"] = csa_json(d.csa);
        cert()["base_case"] = verdict_json(RatFunc::constant(f1, 1), RatFunc::var(f1, 0), d.base_case);
        json roots = json::array();
        for (const auto& r : d.hensel.roots)
            roots.push_back(series_text(r));
        cert()["hensel"] = {{"equation", "t^" + std::to_string(p) + " - t - x1"},
                            {"roots", roots},
                            {"residuals_vanish", d.hensel.residuals_vanish},
                            {"distinct_mod_x1", d.hensel.distinct_mod_t}};
        json un = json::array();
        for (const auto& u : d.unramified)
            un.push_back({{"slot", u.slot},
                          {"entries_are_units", u.entries_are_units},
                          {"extension_nonsplit", u.extension_nonsplit}});
        cert()["unramified"] = un;
        cert()["trusted"] = d.trusted;
    }

    // --------------------------------------------------------------- kato

    void kato_rho0()
    {
        arity(1, 1);
        auto pres = parse_presentation(cmd_.args[0], context());
        auto v = rho0_inverse(pres);
        pay()["presentation"] = to_text(pres);
        pay()["k2"] = charp::to_text(v.k2);
        pay()["unit"] = charp::to_text(v.unit);
        cert()["k2_form"] = charp::to_text(dlog_map(v.k2));
    }

    void kato_rho1()
    {
        arity(1, 1);
        DiffForm w = form(0);
        int level = flags_.level.value_or(1);
        BrauerPresentation b{w.field(), rho1_apply(w, level), level};
        pay()["level"] = level;
        pay()["presentation"] = presentation_json(b);
    }

    void kato_present()
    {
        arity(2, 2);
        MilnorElem g = milnor(0);
        RatFunc c = ratfunc(1);
        int rank = flags_.rank.value_or(g.field().nvars);
        PresentationResult res;
        if (rank == 2)
            res = present_rank2(g, c, decomp_options());
        else if (rank == 3)
            res = present_rank3(g, c, decomp_options());
        else
            fail(Errc::RankMismatch, "present supports --rank 2 or 3");
        pay()["presentation"] = presentation_json(res.presentation);
        const auto& k = res.certificate;
        cert()["k2_part"] = charp::to_text(k.k2_part);
        cert()["unit_part"] = charp::to_text(k.unit_part);
        cert()["k2_matches"] = k.k2_matches;
        cert()["unit_class_matches"] = k.unit_class_matches;
        cert()["pbasis"] = texts(k.pbasis);
        cert()["pbasis_certified"] = k.pbasis_certified;
        cert()["holds"] = k.holds();
        cert()["transcript"] = k.transcript;
    }

    void kato_oddlow()
    {
        arity(0, 2 * kMaxVars + 1);
        int n = flags_.n.value_or(1);
        auto a = ratfuncs(0);
        if (cmd_.args.empty()) {
            ctx_ = ParseContext{FieldDesc(flags_.prime.value_or(2), flags_.vars.value_or(2 * n + 1)), 0};
            pay()["field"] = header_text(ctx_->field);
        }
        auto r = oddlow_witness(n, model(), a);
        pay()["n"] = n;
        pay()["presentation"] = presentation_json(r.presentation);
        pay()["root_variable"] = var_name(r.root_variable);
        cert()["independent"] = r.independent;
        cert()["wedge_sum"] = charp::to_text(r.wedge_sum);
        cert()["wedge_nonzero"] = r.wedge_nonzero;
        cert()["extended_wedge_sum"] = charp::to_text(r.extended_wedge_sum);
        cert()["extended_wedge_nonzero"] = r.extended_wedge_nonzero;
        cert()["last_is_pth_power_in_extension"] = r.last_is_pth_power_in_extension;
        cert()["holds"] = r.holds();
        cert()["trusted"] = r.trusted;
    }

    void kato_division()
    {
        arity(3, 3);
        RatFunc a = ratfunc(0), b = ratfunc(1), c = ratfunc(2);
        auto w = division_witness(a, b, c, model());
        pay()["presentation"] = presentation_json(w.presentation);
        cert()["sab_member"] = w.sab.member;
        cert()["pbasis"] = texts(w.sab.basis.elems);
        json sup = json::array();
        for (const auto& mu : w.sab.support)
            sup.push_back(mu_json(mu));
        cert()["support"] = sup;
        cert()["trusted"] = w.trusted;
    }

    const Command& cmd_;
    const Flags& flags_;
    Report& r_;
    std::optional<ParseContext> ctx_;
};

} // namespace detail

inline Report run_command(const Command& cmd)
{
    Report r;
    r.command = cmd.to_text();
    auto t0 = std::chrono::steady_clock::now();
    try {
        detail::validate(cmd);
        detail::Dispatch(cmd, r).run();
    } catch (const Error& e) {
        r.status = errc_is_undecided(e.code()) ? Status::Unknown : Status::Error;
        r.error_name = std::string(e.name());
        r.error_message = e.what();
        r.payload = json::object();
        r.certificates = json::object();
    }
    if (cmd.flags.timing)
        r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ----------------------------------------------------------------- output

inline json to_json(const Report& r)
{
    json j{{"command", r.command}, {"status", status_name(r.status)}, {"payload", r.payload},
           {"certificates", r.certificates}};
    if (!r.error_name.empty())
        j["error"] = {{"name", r.error_name}, {"message", r.error_message}};
    if (r.timing_ms)
        j["timing_ms"] = std::round(*r.timing_ms * 1000.0) / 1000.0;
    return j;
}

namespace detail {

inline std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline bool is_flat(const json& v)
{
    if (!v.is_array())
        return v.is_primitive();
    for (const auto& e : v)
        if (!e.is_primitive() && !(e.is_array() && is_flat(e)))
            return false;
    return true;
}

inline std::string flat_text(const json& v)
{
    if (!v.is_array())
        return scalar_text(v);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + flat_text(v[i]);
    return s + "]";
}

inline void write_text(std::ostream& os, const json& v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [k, e] : v.items()) {
            if (is_flat(e)) {
                os << pad << k << ": " << flat_text(e) << '\n';
            } else {
                os << pad << k << ":\n";
                write_text(os, e, indent + 2);
            }
        }
        return;
    }
    for (const auto& e : v) {
        if (is_flat(e)) {
            os << pad << "- " << flat_text(e) << '\n';
        } else {
            os << pad << "-\n";
            write_text(os, e, indent + 2);
        }
    }
}

} // namespace detail

enum class Format { Text, Json };

inline std::string emit_report(const Report& r, Format fmt)
{
    if (fmt == Format::Json)
        return to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << "command: " << r.command << '\n' << "status: " << status_name(r.status) << '\n';
    if (!r.error_name.empty())
        os << "error: " << r.error_message << '\n';
    if (!r.payload.empty()) {
        os << "payload:\n";
        detail::write_text(os, r.payload, 2);
    }
    if (!r.certificates.empty()) {
        os << "certificates:\n";
        detail::write_text(os, r.certificates, 2);
    }
    if (r.timing_ms)
        os << "timing_ms: " << std::round(*r.timing_ms * 1000.0) / 1000.0 << '\n';
    return os.str();
}

// Runs every non-blank line of a batch file that does not start with '#'.
// Lines are independent; the exit code is 1 if any failed, else 2 if any
// was undecided, else 0. Flags given on the outer command line apply to
// lines that leave them unset.
inline int run_batch(std::istream& in, std::ostream& out, const Flags& outer)
{
    std::string line;
    int worst = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t q = line.find_first_not_of(" \t\r");
        if (q == std::string::npos || line[q] == '#')
            continue;
        Report r;
        try {
            Command cmd = parse_command_line(line);
            const Flags d;
            if (outer.json)
                cmd.flags.json = true;
            if (!outer.timing)
                cmd.flags.timing = false;
            if (!cmd.flags.prime)
                cmd.flags.prime = outer.prime;
            if (!cmd.flags.vars)
                cmd.flags.vars = outer.vars;
            if (cmd.flags.seed == d.seed)
                cmd.flags.seed = outer.seed;
            r = run_command(cmd);
            out << emit_report(r, cmd.flags.json ? Format::Json : Format::Text);
        } catch (const Error& e) {
            r.command = line.substr(q);
            r.status = Status::Error;
            r.error_name = std::string(e.name());
            r.error_message = "line " + std::to_string(lineno) + ": " + e.what();
            out << emit_report(r, outer.json ? Format::Json : Format::Text);
        }
        int code = exit_code(r.status);
        if (code == 1 || (code == 2 && worst == 0))
            worst = code;
    }
    return worst;
}

} // namespace charp::cli

#endif
