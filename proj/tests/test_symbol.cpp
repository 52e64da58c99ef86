#include <gtest/gtest.h>

#include "nres/symbol/expansion.hpp"

using namespace nres;

namespace {

const GaussRational I = GaussRational::i();

bool is_identity(const JetValue& j, int n)
{
    if (!(j.value() == SymbolElement::scalar(n, SymbolFunction(1))))
        return false;
    for (int m = 1; m <= j.order(); ++m)
        if (!j.jets[m].is_zero())
            return false;
    return true;
}

/// x_n-independent decorations; only the collar function moves.
struct Fixture {
    GeometricBundle geo;
    SymbolExpansion p, q;
    Fixture(int n, int jets, int depth, std::uint64_t seed)
    {
        Rng rng(seed);
        geo = GeometricBundle::random(n, rng);
        p = symbol_of_HX(geo, jets);
        q = invert_symbol(p, depth);
    }
};

} // namespace

TEST(SymbolFunction, ReductionIsCanonical)
{
    auto ctx = SymbolContext::make(4, make_alphabet(4));
    SymbolFunction xi = SymbolFunction::xi_n(ctx);
    SymbolFunction rho2 = lift(ctx, ctx->rho2);
    EXPECT_EQ(xi * xi + rho2, SymbolFunction::q_power(ctx, 1));
    EXPECT_EQ((xi * xi).d_xi_n(), xi * SymbolFunction(2));
    SymbolFunction inv = SymbolFunction::q_power(ctx, -1);
    EXPECT_EQ(inv.d_xi_n(), SymbolFunction::q_power(ctx, -2) * xi * SymbolFunction(-2));
    EXPECT_EQ(inv * SymbolFunction::q_power(ctx, 1), SymbolFunction(1));
}

TEST(SymbolFunction, TangentialDerivative)
{
    auto ctx = SymbolContext::make(4, make_alphabet(4));
    SymbolFunction inv = SymbolFunction::q_power(ctx, -1);
    ParamPoly x1 = ParamPoly::variable(ctx->alphabet, "xi1");
    EXPECT_EQ(inv.d_xi_tangential(1), SymbolFunction::q_power(ctx, -2, x1 * GaussRational(-2)));
}

TEST(SymbolFunction, NonUnitIsNotElliptic)
{
    auto ctx = SymbolContext::make(4, make_alphabet(4));
    try {
        (void)(SymbolFunction::q_power(ctx, 1) + SymbolFunction(1)).inverse();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotElliptic);
    }
}

TEST(Symbol, ParametrixLeadingTerms)
{
    Fixture f(4, 1, 2, 41);
    const auto& ctx = f.p.ctx;
    EXPECT_EQ(f.q.at(-2).value(), SymbolElement::scalar(4, SymbolFunction::q_power(ctx, -1)));
    // restricted to the unit sphere: 1/(1 + xi^2)
    EXPECT_EQ(restrict_to_sphere(f.q.at(-2).value()).scalar_part(), HalfPlaneRational::q_power(-1));

    // q_{-3} = -Q^{-2} p_1 - 2i h'(0) xi_n |xi'|^2 Q^{-3}
    const ParamPoly h = f.geo.hprime();
    SymbolElement expect = -(SymbolElement(f.p.at(1).value()).scale(SymbolFunction::q_power(ctx, -2)));
    expect += SymbolElement::scalar(
        4, SymbolFunction::xi_n(ctx, h * ctx->rho2 * (GaussRational(-2) * I)) * SymbolFunction::q_power(ctx, -3));
    EXPECT_EQ(f.q.at(-3).value(), expect);
}

TEST(Symbol, HomogeneityOfComponents)
{
    Fixture f(4, 2, 3, 42);
    for (const auto& [r, jv] : f.q.components)
        for (const auto& j : jv.jets)
            for (const auto& [mask, c] : j.blades()) {
                auto d = c.homogeneity();
                ASSERT_TRUE(d.has_value());
                EXPECT_EQ(*d, r);
            }
}

class Closure : public ::testing::TestWithParam<int> {};

TEST_P(Closure, ParametrixInvertsThroughOrderMinusTwo)
{
    const int n = GetParam();
    Fixture f(n, 3, 4, 43 + n);
    SymbolExpansion c = compose_symbols(f.p, f.q, 2);
    ASSERT_TRUE(c.has(0));
    EXPECT_TRUE(is_identity(c.at(0), n));
    for (int r : {-1, -2}) {
        if (c.has(r)) {
            EXPECT_TRUE(c.at(r).is_zero()) << "order " << r;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Dims, Closure, ::testing::Values(4, 6));

TEST(Symbol, MissingJetsAreReported)
{
    Fixture f(4, 1, 2, 44);
    try {
        (void)compose_symbols(f.p, f.q, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::JetOrderExceeded);
    }
    try {
        (void)symbol_of_HX(f.geo, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::JetOrderExceeded);
    }
}

TEST(Symbol, SecondXiDerivativeOfLeadingPower)
{
    for (int nbar : {4, 6, 8}) {
        Fixture f(nbar + 2, 1, 2, 45);
        const int k = nbar / 2 - 1;
        auto s = power_symbol(f.q, k);
        HalfPlaneRational lead = restrict_to_sphere(s.at(-2 * k).value()).scalar_part();
        HalfPlaneRational d2 = lead.derivative().derivative();
        XiPoly num(std::vector<ParamPoly>{ParamPoly(GaussRational(-2)), ParamPoly(), ParamPoly(GaussRational(2 * nbar - 2))});
        HalfPlaneRational expect = HalfPlaneRational(num) * HalfPlaneRational::q_power(-nbar / 2 - 1);
        expect.scale(ParamPoly(GaussRational::ratio(nbar - 2, 2)));
        EXPECT_EQ(d2, expect) << nbar;
    }
}

TEST(Symbol, SubleadingPowerMatchesDerivativeSum)
{
    // sigma_{-2k-1}(q^k) = k Q^{1-k} q_{-3} - i k(k-1) h'(0) xi_n |xi'|^2 Q^{-k-2}
    for (int nbar : {4, 6, 8, 10}) {
        const int n = nbar + 2, k = nbar / 2 - 1;
        Fixture f(n, 1, 2, 46);
        const auto& ctx = f.p.ctx;
        auto s = power_symbol(f.q, k);
        SymbolElement expect = SymbolElement(f.q.at(-3).value()).scale(SymbolFunction::q_power(ctx, 1 - k, ParamPoly(k)));
        ParamPoly c = f.geo.hprime() * ctx->rho2 * (GaussRational(-k * (k - 1)) * I);
        expect += SymbolElement::scalar(n, SymbolFunction::xi_n(ctx, c) * SymbolFunction::q_power(ctx, -k - 2));
        EXPECT_EQ(s.value(-2 * k - 1), expect) << nbar;
        EXPECT_EQ(s.at(-2 * k).value(), SymbolElement::scalar(n, SymbolFunction::q_power(ctx, -k)));
    }
}

TEST(Symbol, IdentityPowerForTwoDimensionalBoundary)
{
    Fixture f(4, 1, 2, 47);
    auto s = power_symbol(f.q, 0);
    EXPECT_EQ(s.top(), 0);
    EXPECT_TRUE(is_identity(s.at(0), 4));
}
