#include "lca/padmod.hpp"
#include "random_poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lca;

namespace {

MPoly s() { return 2 * lam() + del(); }
Element el(MPoly f, MPoly g) { return Element{{std::move(f), std::move(g)}}; }

} // namespace

TEST(Span, CollapsesToGcd)
{
    auto m = span({el(del(), MPoly()), el(MPoly(1), MPoly())});
    EXPECT_EQ(m.rank(), 1u);
    EXPECT_EQ(m.basis().front(), el(MPoly(1), MPoly()));
}

TEST(Span, Empty) { EXPECT_EQ(span({}).rank(), 0u); }

TEST(Span, FullRankProperSubmodule)
{
    auto m = span({el(del(), MPoly(1)), el(MPoly(1), del())});
    EXPECT_EQ(m.rank(), 2u);
    EXPECT_FALSE(m.contains(Element::basis(0)));
}

TEST(Span, GeneratorsAreMembers)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Element> gens;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i)
            gens.push_back(el(testutil::random_poly(rng, {Var::partial}, 3), testutil::random_poly(rng, {Var::partial}, 3)));
        auto m = span(gens);
        for (const auto& g : gens) EXPECT_TRUE(m.contains(g));
        EXPECT_TRUE(span(m.basis()) == m);
    }
}

TEST(DerivedAlgebra, Commutative) { EXPECT_EQ(derived_algebra(commutative2(), Submodule::full(), Submodule::full()).rank(), 0u); }

TEST(DerivedAlgebra, VirasoroPlusCentralLine)
{
    auto d = derived_algebra(r_cs(), Submodule::full(), Submodule::full());
    ASSERT_EQ(d.rank(), 1u);
    EXPECT_EQ(d.basis().front(), el(MPoly(), MPoly(1)));
}

TEST(DerivedAlgebra, SemidirectSum)
{
    EXPECT_EQ(derived_algebra(r_cdq(1, 0, MPoly()), Submodule::full(), Submodule::full()).rank(), 2u);
}

TEST(Series, NilpotentFamily)
{
    LCA2 r = r_nil(s() * del());
    auto lcs = lower_central_series(r);
    ASSERT_EQ(lcs.size(), 3u);
    EXPECT_EQ(lcs[1].rank(), 1u);
    EXPECT_TRUE(lcs[2].is_zero());
    EXPECT_TRUE(is_nilpotent(r));
    EXPECT_TRUE(is_solvable(r));
}

TEST(Series, SolvableNotNilpotent)
{
    LCA2 r = r_sol(lam() + 1);
    EXPECT_TRUE(is_solvable(r));
    EXPECT_FALSE(is_nilpotent(r));
}

TEST(Series, SemisimpleIsPerfect)
{
    auto ds = derived_series(r_ss());
    EXPECT_EQ(ds.back().rank(), 2u);
    EXPECT_FALSE(is_solvable(r_ss()));
}

TEST(Series, TermsAreIdeals)
{
    std::vector<LCA2> algebras{r_cs(), r_nil(s()), r_sol(lam().pow(2)), r_cdq(-4, 0, table_row(-4, 1)), r_cdq(3, 2, MPoly()),
                               current2(1, 0)};
    for (const auto& r : algebras) {
        for (const auto& term : derived_series(r)) EXPECT_TRUE(is_ideal(r, term));
        for (const auto& term : lower_central_series(r)) EXPECT_TRUE(is_ideal(r, term));
        if (is_nilpotent(r)) {
            EXPECT_TRUE(is_solvable(r));
        }
    }
}

TEST(Center, CentralLine)
{
    auto z = center(r_cs());
    ASSERT_EQ(z.rank(), 1u);
    EXPECT_EQ(z.basis().front(), el(MPoly(1), MPoly()));
}

TEST(Center, SemidirectFamiliesHaveNone)
{
    EXPECT_TRUE(center(r_cdq(2, 1, MPoly())).is_zero());
    EXPECT_TRUE(center(r_cdq(0, 0, table_row(0, 1, 1))).is_zero());
    EXPECT_TRUE(center(r_cdq(-6, 0, table_row(-6, 1))).is_zero());
}

TEST(Center, CommutativeIsEverything) { EXPECT_EQ(center(commutative2()).rank(), 2u); }

TEST(Center, ElementsBracketToZero)
{
    std::vector<LCA2> algebras{r_nil(s() * del()), r_sol(lam()), r_ss(), current2(0, 1)};
    for (const auto& r : algebras) {
        Submodule z_module = center(r);
        for (const auto& z : z_module.basis())
            for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(bracket(r, z, Element::basis(i)).is_zero());
    }
}

TEST(Saturate, DividesContent)
{
    EXPECT_EQ(saturate(span({el(del().pow(2), MPoly())})), el(MPoly(1), MPoly()));
    EXPECT_EQ(saturate(span({el(del(), del().pow(2))})), el(MPoly(1), del()));
    EXPECT_EQ(saturate(span({el(MPoly(2), MPoly())})), el(MPoly(1), MPoly()));
    EXPECT_THROW(saturate(Submodule::full()), std::invalid_argument);
}

TEST(Saturate, OutputIsPrimitive)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        Element g = el(testutil::random_poly(rng, {Var::partial}, 3), testutil::random_poly(rng, {Var::partial}, 3));
        if (g.is_zero()) continue;
        Element a = saturate(span({g}));
        EXPECT_EQ(ugcd(a[0], a[1]), MPoly(1));
        EXPECT_TRUE(span({a}).contains(g));
    }
}
