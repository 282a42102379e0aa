#include "lca/linalg.hpp"
#include "lca/skewsym.hpp"
#include "random_poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lca;

namespace {

MPoly x() { return MPoly::var(Var::x); }
MPoly y() { return MPoly::var(Var::y); }
MPoly u() { return x().pow(2) + x() * y(); }

} // namespace

TEST(IsSkew, VirasoroFactor) { EXPECT_TRUE(is_skew(2 * x() + y())); }

TEST(IsSkew, PlainXIsNot) { EXPECT_FALSE(is_skew(x())); }

TEST(IsSkew, SexticTableRow)
{
    EXPECT_TRUE(is_skew((2 * x() + y()) * (11 * u().pow(4) + 2 * u().pow(3) * y().pow(2))));
}

TEST(IsSkew, RejectsForeignVariables) { EXPECT_THROW(is_skew(lam() + y()), std::invalid_argument); }

TEST(IsSkew, LambdaWrapper)
{
    EXPECT_TRUE(is_skew_lambda(2 * lam() + del()));
    EXPECT_FALSE(is_skew_lambda(lam()));
}

TEST(SkewDecompose, Trivial)
{
    EXPECT_EQ(skew_decompose(2 * x() + y()).cofactor, MPoly(1));
    EXPECT_EQ(skew_decompose((2 * x() + y()) * y()).cofactor, y());
}

TEST(SkewDecompose, CubicInU)
{
    auto dec = skew_decompose((2 * x() + y()) * u().pow(3));
    EXPECT_EQ(dec.cofactor, x().pow(3)); // x slot stands for u
}

TEST(SkewDecompose, RejectsNonSkew)
{
    EXPECT_THROW(skew_decompose(x()), std::invalid_argument);
    EXPECT_THROW(skew_decompose(x() * (2 * x() + y())), std::invalid_argument);
}

TEST(SkewDecompose, RoundtripFromRandomCofactor)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        MPoly g = testutil::random_poly(rng, {Var::x, Var::y}, 4);
        SkewDecomposition built{g, {}};
        MPoly p = expand(built);
        ASSERT_TRUE(is_skew(p));
        auto dec = skew_decompose(p);
        EXPECT_EQ(dec.cofactor, g);
        EXPECT_EQ(expand(dec), p);
    }
}

TEST(SkewDecompose, TopYCoefficientHasLowXDegree)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        MPoly p = expand({testutil::random_poly(rng, {Var::x, Var::y}, 4), {}});
        if (p.is_zero()) continue;
        int n = p.deg_in(Var::y);
        MPoly top = p.coeff_in(Var::y, static_cast<unsigned>(n));
        EXPECT_LE(top.deg_in(Var::x), n - 1) << p;
    }
}

TEST(SkewBasis, SmallDegrees)
{
    auto b1 = skew_basis(1);
    ASSERT_EQ(b1.size(), 1u);
    EXPECT_EQ(b1[0], 2 * x() + y());

    auto b3 = skew_basis(3);
    ASSERT_EQ(b3.size(), 2u);
    EXPECT_EQ(b3[0], (2 * x() + y()) * y().pow(2));
    EXPECT_EQ(b3[1], (2 * x() + y()) * u());
    EXPECT_THROW(skew_basis(0), std::invalid_argument);
}

TEST(SkewBasis, SepticRowCoordinates)
{
    auto coords = skew_coordinates((2 * x() + y()) * u().pow(3), 7);
    ASSERT_TRUE(coords.has_value());
    EXPECT_EQ(*coords, (std::vector<Rat>{0, 0, 0, 1}));
}

TEST(SkewBasis, DimensionAndIndependence)
{
    for (int n = 1; n <= 12; ++n) {
        auto basis = skew_basis(n);
        EXPECT_EQ(static_cast<int>(basis.size()), (n + 1) / 2);
        EXPECT_EQ(coefficient_matrix(basis).rank(), basis.size());
        for (const auto& b : basis) {
            EXPECT_TRUE(is_skew(b));
            EXPECT_EQ(b.total_degree(), n);
        }
    }
}

TEST(SkewBasis, SpansAllHomogeneousSkewPolynomials)
{
    // Brute force: solve p(x,y) + p(-x-y,y) = 0 over all degree-n monomials.
    for (int n = 1; n <= 9; ++n) {
        std::vector<MPoly> monos;
        for (int i = 0; i <= n; ++i)
            monos.push_back(x().pow(static_cast<unsigned>(i)) * y().pow(static_cast<unsigned>(n - i)));
        std::vector<MPoly> images;
        for (const auto& m : monos) images.push_back(m + m.substitute({{Var::x, -x() - y()}}));
        auto kernel = coefficient_matrix(images).nullspace();
        EXPECT_EQ(kernel.size(), skew_basis(n).size());
        for (const auto& v : kernel) EXPECT_TRUE(skew_coordinates(combine(monos, v), n).has_value());
    }
}
