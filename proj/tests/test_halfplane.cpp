#include <gtest/gtest.h>

#include "nres/exact/random.hpp"
#include "nres/halfplane/rational.hpp"
#include "support/quadrature.hpp"

using namespace nres;

namespace {

const GaussRational I = GaussRational::i();

GaussRational q(long p, long d) { return GaussRational::ratio(p, d); }

XiPoly poly(std::vector<GaussRational> c)
{
    std::vector<ParamPoly> out(c.begin(), c.end());
    return XiPoly(std::move(out));
}

/// Random integrable rational with poles of order a at +i and b at -i.
HalfPlaneRational random_integrable(Rng& rng)
{
    std::uniform_int_distribution<int> pole(0, 4);
    int a = pole(rng), b = pole(rng);
    if (a + b < 2)
        a += 2 - (a + b);
    std::vector<ParamPoly> c(a + b - 1);
    for (auto& v : c)
        v = ParamPoly(random_gauss(rng));
    return HalfPlaneRational(XiPoly(std::move(c)), a, b);
}

HalfPlaneRational random_rational_fn(Rng& rng)
{
    std::uniform_int_distribution<int> pole(0, 4), extra(0, 3);
    int a = pole(rng), b = pole(rng);
    std::vector<ParamPoly> c(a + b + extra(rng));
    for (auto& v : c)
        v = ParamPoly(random_gauss(rng));
    return HalfPlaneRational(XiPoly(std::move(c)), a, b);
}

} // namespace

TEST(PartialFractions, Examples)
{
    auto pf = partial_fractions(HalfPlaneRational::q_power(-1));
    ASSERT_EQ(pf.plus.size(), 1u);
    EXPECT_EQ(pf.plus[0], ParamPoly(q(-1, 2) * I));
    EXPECT_EQ(pf.minus[0], ParamPoly(q(1, 2) * I));
    EXPECT_TRUE(pf.polynomial.is_zero());

    pf = partial_fractions(HalfPlaneRational::q_power(-2));
    ASSERT_EQ(pf.plus.size(), 2u);
    EXPECT_EQ(pf.plus[0], ParamPoly(q(-1, 4) * I));
    EXPECT_EQ(pf.plus[1], ParamPoly(q(-1, 4)));
    EXPECT_EQ(pf.minus[0], ParamPoly(q(1, 4) * I));
    EXPECT_EQ(pf.minus[1], ParamPoly(q(-1, 4)));
    EXPECT_EQ(pf.recombine(), HalfPlaneRational::q_power(-2));

    XiPoly p = poly({1, 2, 3});
    pf = partial_fractions(HalfPlaneRational(p));
    EXPECT_EQ(pf.polynomial, p);
    EXPECT_TRUE(pf.plus.empty() && pf.minus.empty());
}

TEST(PartialFractions, NonCanonicalInputRejected)
{
    auto f = HalfPlaneRational::raw(XiPoly::linear_power(I, 1), 1, 0);
    try {
        (void)partial_fractions(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonCanonicalInput);
    }
}

TEST(PartialFractions, RecombinationOnRandomInputs)
{
    Rng rng(31);
    for (int k = 0; k < 60; ++k) {
        HalfPlaneRational f = random_rational_fn(rng);
        EXPECT_EQ(partial_fractions(f).recombine(), f) << f.str();
    }
}

TEST(PiPlus, Examples)
{
    Alphabet a({"h'(0)"});
    ParamPoly h = ParamPoly::variable(a, "h'(0)");
    HalfPlaneRational f = HalfPlaneRational::q_power(-2) * (-h);
    // h'(0)(i xi + 2) / (4 (xi - i)^2)
    HalfPlaneRational expect(XiPoly({h * q(1, 2), h * (q(1, 4) * I)}), 2, 0);
    EXPECT_EQ(pi_plus(f), expect);

    EXPECT_TRUE(pi_plus(HalfPlaneRational(XiPoly(ParamPoly(1)), 0, 1)).is_zero());
    HalfPlaneRational up(XiPoly(ParamPoly(1)), 1, 0);
    EXPECT_EQ(pi_plus(up), up);
}

TEST(PiPrime, Examples)
{
    EXPECT_TRUE(pi_prime(HalfPlaneRational(XiPoly(ParamPoly(1)), 0, 1)).is_zero());
    EXPECT_EQ(pi_prime(HalfPlaneRational(XiPoly(ParamPoly(1)), 1, 0)), ParamPoly(I));
    EXPECT_EQ(pi_prime(HalfPlaneRational::q_power(-1)), ParamPoly(q(1, 2)));
}

TEST(DerivXi, Examples)
{
    HalfPlaneRational pp = pi_plus(HalfPlaneRational::q_power(-1));
    EXPECT_EQ(deriv_xi(pp, 2), HalfPlaneRational(XiPoly(ParamPoly(-I)), 3, 0));
    EXPECT_EQ(deriv_xi(pp, 1), HalfPlaneRational(XiPoly(ParamPoly(q(1, 2) * I)), 2, 0));
    EXPECT_EQ(deriv_xi(pp, 0), pp);
}

TEST(DerivAtI, Examples)
{
    EXPECT_EQ(deriv_at_i(1, 1, 2), q(1, 4));
    EXPECT_EQ(deriv_at_i(0, 1, 0), q(-1, 2) * I);
    EXPECT_EQ(deriv_at_i(1, 2, 3), q(3, 8));
}

TEST(DerivAtI, AgreesWithSymbolicDerivative)
{
    for (int m = 0; m <= 3; ++m)
        for (int p = 0; p <= 8; ++p)
            for (int k = 0; k <= 9; ++k) {
                HalfPlaneRational f(XiPoly::xi(m), 0, p);
                EXPECT_EQ(ParamPoly(deriv_at_i(m, p, k)), deriv_xi(f, k).eval(I)) << m << " " << p << " " << k;
            }
}

TEST(RealLineIntegral, Examples)
{
    EXPECT_EQ(real_line_integral(HalfPlaneRational::q_power(-1)), ParamPoly(1));
    EXPECT_EQ(real_line_integral(HalfPlaneRational::q_power(-2)), ParamPoly(q(1, 2)));
    try {
        (void)real_line_integral(HalfPlaneRational(XiPoly::xi(1), 1, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotIntegrable);
    }
}

TEST(RealLineIntegral, MatchesQuadratureOnFiftyIntegrands)
{
    Rng rng(32);
    for (int k = 0; k < 50; ++k) {
        HalfPlaneRational f = random_integrable(rng);
        auto exact = oracle::exact_integral(real_line_integral(f), {});
        auto numeric = oracle::quadrature_integral(f, {});
        EXPECT_LT(std::abs(exact - numeric), 1e-8L) << f.str();
    }
}

TEST(PiPlus, ProjectionProperties)
{
    Rng rng(33);
    for (int k = 0; k < 60; ++k) {
        HalfPlaneRational f = random_rational_fn(rng);
        HalfPlaneRational p = pi_plus(f);
        EXPECT_EQ(pi_plus(p), p);
        auto pf = partial_fractions(f);
        HalfPlaneRational minus;
        for (std::size_t j = 0; j < pf.minus.size(); ++j)
            minus += HalfPlaneRational(XiPoly(pf.minus[j]), 0, static_cast<int>(j) + 1);
        EXPECT_EQ(p + minus, f - HalfPlaneRational(pf.polynomial));
        EXPECT_EQ(pi_plus(f.derivative()), pi_plus(f).derivative());
    }
}

TEST(RealLineIntegral, IntegrationByParts)
{
    Rng rng(34);
    for (int k = 0; k < 40; ++k) {
        HalfPlaneRational f = random_integrable(rng), g = random_integrable(rng);
        EXPECT_EQ(real_line_integral(f.derivative() * g), -real_line_integral(f * g.derivative()));
    }
}
