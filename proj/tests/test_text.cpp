#include <gtest/gtest.h>

#include "charp/random.hpp"
#include "util.hpp"

using namespace charp;

namespace {

ParseContext ctx(int p, int n, unsigned base = 0) { return ParseContext{FieldDesc(p, n), base}; }

std::string syntax_message(const std::string& s, const ParseContext& c)
{
    try {
        parse_in_context(s, c);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SyntaxError);
        return e.what();
    }
    ADD_FAILURE() << "no syntax error for '" << s << "'";
    return "";
}

} // namespace

TEST(Text, RatFuncRoundTrip)
{
    int checked = 0;
    for (int p : {2, 3, 5, 7}) {
        FieldDesc f(p, 3);
        RandomSource rs(2000 + p);
        for (int i = 0; i < 50; ++i, ++checked) {
            RatFunc a = rs.ratfunc(f, 3, 4);
            auto back = std::get<RatFunc>(parse_in_context(to_text(a), ctx(p, 3)));
            ASSERT_EQ(back, a) << to_text(a);
        }
    }
    EXPECT_EQ(checked, 200);
}

TEST(Text, FormRoundTrip)
{
    for (int p : {2, 3}) {
        auto t = TowerDesc::absolute(FieldDesc(p, 3));
        RandomSource rs(2100 + p);
        for (int i = 0; i < 30; ++i) {
            DiffForm w(t, 2);
            for (unsigned s : {3u, 5u, 6u})
                if (rs.below(2))
                    w.add_term(s, rs.ratfunc(t.field(), 2, 2));
            if (w.is_zero())
                continue;
            auto back = testutil::form(to_text(w), p, 3);
            ASSERT_EQ(back, w) << to_text(w);
        }
    }
}

TEST(Text, MilnorRoundTrip)
{
    FieldDesc f(3, 3);
    RandomSource rs(2200);
    for (int i = 0; i < 30; ++i) {
        MilnorElem m = rs.symbol_sum(f, 3, 2);
        ASSERT_EQ(testutil::milnor(to_text(m), 3, 3), m) << to_text(m);
    }
}

TEST(Text, ShortVariableNames)
{
    EXPECT_EQ(testutil::rf("x*y + z", 2, 3), testutil::rf("x1*x2 + x3", 2, 3));
    EXPECT_EQ(to_text(testutil::rf("y*x^2", 2, 2)), "x1^2*x2");
}

TEST(Text, Headers)
{
    auto in = parse_input("GF(3)(x1,x2,x3); x1 - x3");
    EXPECT_TRUE(in.had_header);
    EXPECT_EQ(in.context.field.p, 3);
    EXPECT_EQ(in.context.field.nvars, 3);
    auto rel = parse_input("GF(2)(x,y) over k^p(y); dlog(x*y)");
    EXPECT_EQ(rel.context.base, 2u);
    EXPECT_EQ(to_text(std::get<DiffForm>(rel.value)), "dlog(x1)");
    EXPECT_EQ(header_text(rel.context.field, rel.context.base), "GF(2)(x1,x2) over k^p(x2)");
    EXPECT_ERRC(parse_input("GF(3)(x); x", 2), Errc::FieldMismatch);
    EXPECT_ERRC(parse_in_context("GF(2)(x1,x2); x1", ctx(2, 3)), Errc::FieldMismatch);
    auto c = context_for({"x1 + x4", "x2"}, 5);
    EXPECT_EQ(c.field.nvars, 4);
    EXPECT_EQ(c.field.p, 5);
}

TEST(Text, SyntaxErrorLocations)
{
    auto c = ctx(2, 2);
    EXPECT_EQ(syntax_message("x + * y", c), "SyntaxError: line 1, column 5: unexpected '*'");
    EXPECT_EQ(syntax_message("x +", c), "SyntaxError: line 1, column 4: unexpected end of input");
    EXPECT_EQ(syntax_message("x +\n  w", c), "SyntaxError: line 2, column 3: unknown variable 'w'");
    EXPECT_NE(syntax_message("(x + y", c).find("column 7"), std::string::npos);
    EXPECT_NE(syntax_message("{x, 0}", c).find("column 1"), std::string::npos);
    EXPECT_NE(syntax_message("dlog(x)^2", c).find("only rational functions"), std::string::npos);
    EXPECT_ERRC(parse_input("GF(4)(x); x"), Errc::SyntaxError);
}

TEST(Text, DivisionByZeroIsNotASyntaxError)
{
    EXPECT_ERRC(parse_in_context("x/(y - y)", ctx(3, 2)), Errc::DivisionByZero);
}
