#include "lca/linalg.hpp"
#include "lca/mpoly.hpp"
#include "lca/polymatrix.hpp"
#include "random_poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lca;

namespace {

MPoly d(unsigned e = 1) { return del().pow(e); }

} // namespace

TEST(Rational, ReducedForm)
{
    Rat r = make_rat(6, -4);
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(to_string(Rat(0)), "0");
    EXPECT_EQ(parse_rat("-10/4"), make_rat(-5, 2));
    EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rat("abc"), std::invalid_argument);
}

TEST(Rational, SquareRoot)
{
    Rat root;
    EXPECT_TRUE(rational_sqrt(make_rat(9, 4), root));
    EXPECT_EQ(root, make_rat(3, 2));
    EXPECT_FALSE(rational_sqrt(Rat(2), root));
    EXPECT_FALSE(rational_sqrt(Rat(-4), root));
}

TEST(MPolyArith, SquareOfVirasoroFactor)
{
    MPoly s = 2 * lam() + del();
    EXPECT_EQ(s * s, 4 * lam().pow(2) + 4 * lam() * del() + del().pow(2));
}

TEST(MPolyArith, AdditiveIdentity)
{
    MPoly p = 3 * lam() * del() - mu() + MPoly(make_rat(1, 7));
    EXPECT_EQ(p + MPoly(), p);
    EXPECT_TRUE((p - p).is_zero());
}

TEST(MPolyArith, CubeOfUHasBinomialCoefficients)
{
    MPoly u = lam().pow(2) + lam() * del();
    MPoly cube = u.pow(3);
    ASSERT_EQ(cube.size(), 4u);
    // (λ² + λ∂)³ = Σ C(3,i) λ^{6-i} ∂^i
    for (unsigned i = 0; i <= 3; ++i) {
        Monomial m = Monomial::of(Var::lambda, 6 - i) * Monomial::of(Var::partial, i);
        EXPECT_EQ(cube.coefficient(m), binomial(3, i));
    }
}

TEST(MPolySubstitute, LinearReflection)
{
    MPoly s = 2 * lam() + del();
    EXPECT_EQ(subst(s, Var::lambda, -lam() - del()), -s);
}

TEST(MPolySubstitute, ZeroBinding)
{
    EXPECT_TRUE(subst2(lam() * del(), mu(), MPoly()).is_zero());
}

TEST(MPolySubstitute, TableRowIsAntiInvariant)
{
    MPoly p = (2 * lam() + del()) * (lam().pow(2) + lam() * del()).pow(3);
    EXPECT_EQ(subst(p, Var::lambda, -lam() - del()), -p);
}

TEST(MPolySubstitute, IsSimultaneous)
{
    MPoly p = lam() * del().pow(2);
    MPoly swapped = p.substitute({{Var::lambda, del()}, {Var::partial, lam()}});
    EXPECT_EQ(swapped, del() * lam().pow(2));
}

TEST(MPolyQueries, CoefficientExtraction)
{
    MPoly p = 4 * lam().pow(2) + 4 * lam() * del() + del().pow(2);
    EXPECT_EQ(p.coeff_in(Var::partial, 1), 4 * lam());
    EXPECT_EQ(p.deg_in(Var::lambda), 2);
    EXPECT_EQ(MPoly().deg_in(Var::partial), kMinusInfinity);
    EXPECT_EQ(MPoly().total_degree(), kMinusInfinity);
}

TEST(MPolyQueries, HomogeneousComponentsOfTableRows)
{
    MPoly s = 2 * lam() + del();
    MPoly p = 5 * s + make_rat(-2, 3) * s * del();
    auto comps = p.homogeneous_components();
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].first, 1);
    EXPECT_EQ(comps[1].first, 2);
    EXPECT_EQ(comps[0].second + comps[1].second, p);
}

TEST(MPolyQueries, CoefficientDecompositionSumsBack)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        MPoly p = testutil::random_poly(rng, {Var::lambda, Var::mu, Var::partial}, 4);
        MPoly sum;
        for (int k = 0; k <= std::max(0, p.deg_in(Var::partial)); ++k)
            sum += p.coeff_in(Var::partial, static_cast<unsigned>(k)) * del().pow(static_cast<unsigned>(k));
        EXPECT_EQ(sum, p);
    }
}

TEST(MPolyProperties, RingAxiomsOnRandomTriples)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        auto vars = {Var::lambda, Var::mu, Var::partial, Var::x, Var::y};
        MPoly a = testutil::random_poly(rng, vars, 3);
        MPoly b = testutil::random_poly(rng, vars, 3);
        MPoly c = testutil::random_poly(rng, vars, 3);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
    }
}

TEST(MPolyProperties, SubstitutionIsRingHomomorphism)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        auto vars = {Var::lambda, Var::mu, Var::partial};
        MPoly a = testutil::random_poly(rng, vars, 3);
        MPoly b = testutil::random_poly(rng, vars, 3);
        std::map<Var, MPoly> bind;
        bind[Var::lambda] = -lam() - del();
        bind[Var::mu] = lam() + 2 * mu();
        EXPECT_EQ((a * b).substitute(bind), a.substitute(bind) * b.substitute(bind));
        EXPECT_EQ((a + b).substitute(bind), a.substitute(bind) + b.substitute(bind));
    }
}

TEST(Bezout, CoprimeLinear)
{
    auto r = bezout(d(), d() + MPoly(1));
    EXPECT_EQ(r.gcd, MPoly(1));
    EXPECT_EQ(r.s, MPoly(-1));
    EXPECT_EQ(r.t, MPoly(1));
}

TEST(Bezout, DividingInput)
{
    EXPECT_EQ(bezout(d(2), d()).gcd, d());
    EXPECT_EQ(bezout(d(2) - MPoly(1), d() - MPoly(1)).gcd, d() - MPoly(1));
}

TEST(Bezout, BothZeroRejected)
{
    EXPECT_THROW(bezout(MPoly(), MPoly()), std::invalid_argument);
}

TEST(Bezout, RejectsMultivariate)
{
    EXPECT_THROW(bezout(lam(), d()), std::invalid_argument);
}

TEST(Bezout, IdentityOnRandomInputs)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        MPoly f = testutil::random_poly(rng, {Var::partial}, 5);
        MPoly g = testutil::random_poly(rng, {Var::partial}, 4);
        MPoly common = testutil::random_poly(rng, {Var::partial}, 2);
        if (common.is_zero()) common = MPoly(1);
        f *= common;
        g *= common;
        if (f.is_zero() && g.is_zero()) continue;
        auto r = bezout(f, g);
        EXPECT_EQ(r.s * f + r.t * g, r.gcd);
        EXPECT_EQ(leading_coeff_partial(r.gcd), 1);
        if (!f.is_zero()) {
            EXPECT_TRUE(udivmod(f, r.gcd).second.is_zero());
        }
        if (!g.is_zero()) {
            EXPECT_TRUE(udivmod(g, r.gcd).second.is_zero());
        }
        EXPECT_TRUE(udivmod(r.gcd, make_monic(common)).second.is_zero());
    }
}

TEST(Hermite, Identity)
{
    auto hf = hermite_form(PolyMatrix::identity(2));
    EXPECT_EQ(hf.h, PolyMatrix::identity(2));
    EXPECT_EQ(hf.u, PolyMatrix::identity(2));
}

TEST(Hermite, EuclidStepOnColumn)
{
    PolyMatrix m{{d(), MPoly()}, {MPoly(1), MPoly()}};
    auto hf = hermite_form(m);
    EXPECT_EQ(hf.h(0, 0), MPoly(1));
    EXPECT_TRUE(hf.h.row_is_zero(1));
    EXPECT_EQ(hf.u * m, hf.h);
}

TEST(Hermite, FullRankUpperTriangular)
{
    PolyMatrix m{{d(), MPoly(1)}, {MPoly(), d()}};
    auto hf = hermite_form(m);
    EXPECT_EQ(hf.pivot_cols.size(), 2u);
    EXPECT_TRUE(hf.h(1, 0).is_zero());
    EXPECT_EQ(hf.u * m, hf.h);
    auto det = det2(hf.u);
    EXPECT_TRUE(det.is_constant() && !det.is_zero());
    // The module has index deg det(m) = 2, so the pivots multiply to ∂².
    EXPECT_EQ(hf.h(0, 0) * hf.h(1, 1), d(2));
}

TEST(Hermite, RandomMatricesPreserveRowSpace)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 4;
        PolyMatrix m(rows, 2);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = testutil::random_poly(rng, {Var::partial}, 3);
        auto hf = hermite_form(m);
        EXPECT_EQ(hf.u * m, hf.h);
        MPoly det = hf.u.rows() == 2 ? det2(hf.u) : MPoly(1);
        if (hf.u.rows() == 2) {
            EXPECT_TRUE(det.is_constant() && !det.is_zero());
        }
        for (std::size_t r = 0; r < hf.pivot_cols.size(); ++r)
            EXPECT_EQ(leading_coeff_partial(hf.h(r, hf.pivot_cols[r])), 1);
        for (std::size_t r = hf.pivot_cols.size(); r < rows; ++r) EXPECT_TRUE(hf.h.row_is_zero(r));
    }
}

TEST(LinearAlgebra, NullspaceAndSolve)
{
    QMatrix m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    EXPECT_EQ(m.rank(), 1u);
    auto ns = m.nullspace();
    ASSERT_EQ(ns.size(), 2u);
    for (const auto& v : ns) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
    EXPECT_TRUE(m.solve({Rat(1), Rat(2)}).has_value());
    EXPECT_FALSE(m.solve({Rat(1), Rat(3)}).has_value());
}

TEST(LinearAlgebra, Proportionality)
{
    MPoly s = 2 * lam() + del();
    EXPECT_EQ(proportionality(make_rat(-3, 2) * s, s), make_rat(-3, 2));
    EXPECT_FALSE(proportionality(s + lam(), s).has_value());
}
