#ifndef CHARP_TESTS_UTIL_HPP
#define CHARP_TESTS_UTIL_HPP

#include <string>

#include <gtest/gtest.h>

#include "charp/text.hpp"

namespace testutil {

inline charp::RatFunc rf(const std::string& s, int p, int n)
{
    return std::get<charp::RatFunc>(charp::parse_in_context(s, charp::ParseContext{charp::FieldDesc(p, n), 0}));
}

inline charp::Poly poly(const std::string& s, int p, int n) { return rf(s, p, n).num(); }

inline charp::DiffForm form(const std::string& s, int p, int n, unsigned base = 0)
{
    auto v = charp::parse_in_context(s, charp::ParseContext{charp::FieldDesc(p, n), base});
    if (auto* r = std::get_if<charp::RatFunc>(&v))
        return charp::DiffForm::scalar(charp::TowerDesc::coordinate(r->field(), base), *r);
    return std::get<charp::DiffForm>(v);
}

inline charp::MilnorElem milnor(const std::string& s, int p, int n)
{
    return std::get<charp::MilnorElem>(charp::parse_in_context(s, charp::ParseContext{charp::FieldDesc(p, n), 0}));
}

} // namespace testutil

#define EXPECT_ERRC(stmt, errc)                                                                  \
    do {                                                                                         \
        try {                                                                                    \
            stmt;                                                                                \
            ADD_FAILURE() << "expected " << charp::errc_name(errc) << " from " #stmt;            \
        } catch (const charp::Error& e_) {                                                       \
            EXPECT_EQ(e_.name(), charp::errc_name(errc)) << e_.what();                           \
        }                                                                                        \
    } while (0)

#endif
