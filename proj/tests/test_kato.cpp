#include <gtest/gtest.h>

#include "charp/kato.hpp"
#include "charp/random.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace charp;
using testutil::milnor;
using testutil::rf;

namespace {

CDVFModel model(int p, int n) { return CDVFModel{FieldDesc(p, n), "pi", std::nullopt, true}; }

Slot residue_slot(const RatFunc& a, const RatFunc& b) { return {SlotSide::residue(a), SlotSide::residue(b), 0}; }

} // namespace

TEST(Rho0, SymbolsAndParameterSlots)
{
    FieldDesc f(3, 2);
    BrauerPresentation pres{f, {}, 0};
    pres.slots.push_back(residue_slot(rf("x1", 3, 2), rf("x2 + 1", 3, 2)));
    pres.slots.push_back({SlotSide::parameter(), SlotSide::residue(rf("x1^2", 3, 2)), 0});
    pres.slots.push_back({SlotSide::residue(rf("x2", 3, 2)), SlotSide::parameter(), 0});
    auto v = rho0_inverse(pres);
    EXPECT_EQ(v.k2, milnor("{x1, x2 + 1}", 3, 2));
    EXPECT_EQ(v.unit, rf("x1^2/x2", 3, 2));
}

TEST(Rho0, MalformedSlots)
{
    FieldDesc f(2, 2);
    BrauerPresentation twice{f, {{SlotSide::parameter(), SlotSide::parameter(), 0}}, 0};
    EXPECT_ERRC(rho0_inverse(twice), Errc::MalformedSlot);
    BrauerPresentation formal{f, {{SlotSide::unit({"u", 1, 1, std::nullopt}), SlotSide::residue(rf("x1", 2, 2)), 0}}, 0};
    EXPECT_ERRC(rho0_inverse(formal), Errc::MalformedSlot);
    EXPECT_EQ(residue_part(formal).slots.size(), 0u);
    EXPECT_ERRC(SlotSide::residue(RatFunc(f)), Errc::ZeroElement);
}

TEST(Rho1, OneSlotPerCoordinate)
{
    auto w = testutil::form("x2*dlog(x1) + dlog(x2)", 2, 2);
    auto slots = rho1_apply(w, 3);
    ASSERT_EQ(slots.size(), 2u);
    EXPECT_EQ(slots[0].level, 3);
    ASSERT_EQ(slots[0].left.units.size(), 1u);
    EXPECT_EQ(*slots[0].left.units[0].residue, rf("x2", 2, 2));
    EXPECT_EQ(*slots[0].right.lift, rf("x1", 2, 2));
    EXPECT_EQ(*slots[1].right.lift, rf("x2", 2, 2));
    EXPECT_ERRC(rho1_apply(w, 0), Errc::PreconditionViolated);
    EXPECT_TRUE(rho1_apply(RatFunc(w.field()), rf("x1", 2, 2), 1).empty());
}

TEST(Present, Rank2CertificateHolds)
{
    FieldDesc f(2, 2);
    RandomSource rs(1602);
    for (int i = 0; i < 4; ++i) {
        MilnorElem g = rs.symbol_sum(f, 2, 2);
        RatFunc c = rs.nonzero_ratfunc(f, 1, 2);
        auto r = present_rank2(g, c);
        EXPECT_TRUE(r.certificate.holds()) << to_text(g);
        EXPECT_EQ(r.presentation.symbol_count(), 3u);
        EXPECT_TRUE(oracle::is_pth_power(r.certificate.unit_part / c));
    }
}

TEST(Present, Rank2ZeroClass)
{
    auto r = present_rank2(milnor("{x1, x1}", 2, 2), rf("1", 2, 2));
    EXPECT_TRUE(r.certificate.holds());
    EXPECT_EQ(r.certificate.pbasis[0], rf("x1", 2, 2));
    EXPECT_EQ(r.certificate.pbasis[1], rf("x2", 2, 2));
}

TEST(Present, Rank3CertificateHolds)
{
    FieldDesc f(2, 3);
    RandomSource rs(1700);
    for (int i = 0; i < 3; ++i) {
        MilnorElem g = rs.symbol_sum(f, 2, 1);
        auto r = present_rank3(g, rf("x3 + 1", 2, 3));
        EXPECT_TRUE(r.certificate.holds()) << to_text(g);
        EXPECT_EQ(r.presentation.symbol_count(), 4u);
    }
    EXPECT_ERRC(present_rank3(milnor("{x1, x2}", 2, 2), rf("1", 2, 2)), Errc::RankMismatch);
    EXPECT_ERRC(present_rank2(milnor("{x1, x2}", 2, 2), rf("0", 2, 2)), Errc::ZeroElement);
}

TEST(Present, BudgetBecomesDecomposeFailed)
{
    DecompOptions tight;
    tight.step_budget = 1;
    EXPECT_ERRC(present_rank3(milnor("{x1 + x2*x3, x2 + x3} + {x3, x1 + x2}", 2, 3), rf("1", 2, 3), tight),
                Errc::DecomposeFailed);
}

TEST(Oddlow, DefaultEntriesForSeveralN)
{
    for (int p : {2, 3})
        for (int n : {1, 2}) {
            auto r = oddlow_witness(n, model(p, 2 * n + 1));
            EXPECT_TRUE(r.holds()) << "p=" << p << " n=" << n;
            EXPECT_EQ(r.presentation.symbol_count(), static_cast<std::size_t>(n + 1));
            EXPECT_EQ(r.root_variable, 2 * n);
        }
    EXPECT_ERRC(oddlow_witness(2, model(2, 4)), Errc::RankTooLow);
    EXPECT_ERRC(oddlow_witness(1, model(2, 3), {rf("x1", 2, 3), rf("x2", 2, 3), rf("x3 + 1", 2, 3)}),
                Errc::NonCoordinateRoot);
    CDVFModel no_root = model(2, 3);
    no_root.has_root_of_unity = false;
    EXPECT_ERRC(oddlow_witness(1, no_root), Errc::PreconditionViolated);
}

TEST(Oddlow, MonomialLastEntry)
{
    auto r = oddlow_witness(1, model(3, 3), {rf("x1", 3, 3), rf("x2", 3, 3), rf("2*x1^2*x3", 3, 3)});
    EXPECT_EQ(r.root_variable, 2);
    EXPECT_TRUE(r.last_is_pth_power_in_extension);
}

// Agrees with brute-force enumeration of S_{x,y} on a few cubics.
TEST(Division, MembershipDecidesWitness)
{
    FieldDesc f(2, 2);
    RatFunc x = rf("x", 2, 2), y = rf("y", 2, 2);
    for (auto s : {"x*y + x^2*y", "x + y", "x^3 + x*y^2", "x^2*y + y^3 + 1"}) {
        RatFunc c = rf(s, 2, 2);
        bool member = oracle::sab_brute(c.num());
        if (member) {
            auto w = division_witness(x, y, c, model(2, 2));
            EXPECT_TRUE(w.sab.member);
            EXPECT_EQ(w.presentation.symbol_count(), 2u);
        } else {
            EXPECT_ERRC(division_witness(x, y, c, model(2, 2)), Errc::NotInSab);
        }
    }
}

TEST(CDVFModel, LevelBoundAndValidation)
{
    CDVFModel m = model(3, 2);
    EXPECT_FALSE(m.level_bound());
    m.e_p = 2;
    EXPECT_EQ(*m.level_bound(), 3);
    m.e_p = 1;
    EXPECT_ERRC(m.validate(), Errc::PreconditionViolated);
}
