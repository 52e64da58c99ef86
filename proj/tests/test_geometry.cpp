#include <gtest/gtest.h>

#include "nres/clifford/matrix_rep.hpp"
#include "nres/geometry/density.hpp"

using namespace nres;

namespace {

GaussRational q(long p, long d) { return GaussRational::ratio(p, d); }

/// Independent assembly of H at x0: square D + V with V = c(X)/4 + W as a
/// first-order operator, then add the Lie derivative and curvature terms.
LaplaceNormalForm square_oracle(const GeometricBundle& geo)
{
    const DecoratedOperator op = decorated_operator(geo);
    const int n = geo.n;
    const CliffordElement v = CliffordElement(op.cx).scale(q(1, 4)) + op.w;
    LaplaceNormalForm nf;
    nf.n = n;
    CliffordElement zeroth = v * v + op.moment + op.curvature;
    for (int i = 0; i < n; ++i) {
        const CliffordElement dv = CliffordElement(op.dcx[i]).scale(q(1, 4)) + op.dw[i];
        // coefficient of d_i in (c_j d_j + V)^2 + X_j d_j
        nf.a.push_back(-(op.gen[i] * v + v * op.gen[i] + CliffordElement::scalar(n, geo.x[i])));
        nf.da.push_back(-(op.gen[i] * dv + dv * op.gen[i] + CliffordElement::scalar(n, geo.dx[i][i])));
        zeroth += op.gen[i] * dv;
    }
    nf.b = -zeroth;
    return nf;
}

/// Expected trace of E, obtained by hand from the Clifford trace rules.
ParamPoly expected_trace(const GeometricBundle& geo)
{
    ParamPoly bracket = geo.dim_f * (geo.s * q(-1, 4) + geo.div_x * q(1, 2)) + geo.g_yx() * geo.tr_phi +
                        geo.sum_torsion_sq() * geo.tr_phi2 * GaussRational(2);
    return bracket * GaussRational(2).pow(geo.n / 2);
}

} // namespace

TEST(Bundle, AverageAndFTrace)
{
    GeometricBundle g = GeometricBundle::bare(4);
    ParamPoly x1 = g.xi(1), x2 = g.xi(2);
    EXPECT_EQ(sphere_average(x1 * x1, g), ParamPoly(q(1, 3)));
    EXPECT_EQ(sphere_average(g.rho2(), g), ParamPoly(1));
    EXPECT_EQ(sphere_average(x1.pow(4), g), ParamPoly(q(3, 15)));
    EXPECT_EQ(sphere_average(x1 * x1 * x2 * x2, g), ParamPoly(q(1, 15)));
    EXPECT_TRUE(sphere_average(x1 * x2, g).is_zero());
    EXPECT_EQ(f_trace(g.phi() * g.phi() + GaussRational(3), g), g.tr_phi2 + g.dim_f * GaussRational(3));
}

TEST(Bundle, ValidationErrors)
{
    GeometricBundle g = GeometricBundle::bare(4);
    g.torsion[{2, 1, 3}] = ParamPoly(1);
    try {
        g.validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonIncreasingTriple);
    }
}

class Geometry : public ::testing::TestWithParam<int> {};

TEST_P(Geometry, NormalFormMatchesOperatorSquare)
{
    const int n = GetParam();
    const GeometricBundle geo = GeometricBundle::symbolic(n);
    const LaplaceNormalForm a = lichnerowicz_normal_form(geo), b = square_oracle(geo);
    for (int i = 0; i < n; ++i) {
        EXPECT_EQ(a.a[i], b.a[i]);
        EXPECT_EQ(a.da[i], b.da[i]);
    }
    EXPECT_EQ(a.b, b.b);
}

TEST_P(Geometry, EndomorphismRecombines)
{
    const GeometricBundle geo = GeometricBundle::symbolic(GetParam());
    const LaplaceNormalForm nf = lichnerowicz_normal_form(geo);
    const auto ce = connection_and_E(nf);
    CliffordElement back = ce.e;
    for (int i = 0; i < geo.n; ++i)
        back += CliffordElement(nf.da[i]).scale(q(1, 2)) + ce.omega[i] * ce.omega[i];
    EXPECT_EQ(back, nf.b);
}

TEST_P(Geometry, TraceOfEndomorphism)
{
    const GeometricBundle geo = GeometricBundle::symbolic(GetParam());
    EXPECT_EQ(trace_E_density(geo, Mode::Oracle), expected_trace(geo));
}

TEST_P(Geometry, TermComparisonFlags)
{
    const GeometricBundle geo = GeometricBundle::symbolic(GetParam());
    std::map<std::string, std::string> flags;
    for (const auto& c : compare_trace_E(geo))
        flags[c.term] = c.flag;
    EXPECT_EQ(flags["s"], "prefactor");
    EXPECT_EQ(flags["divX"], "prefactor");
    EXPECT_EQ(flags["g(Y,X)"], "prefactor,rank-one-twist");
    EXPECT_EQ(flags["|T|^2"], "prefactor,rank-one-twist");
    EXPECT_EQ(flags["|Y|^2"], "mismatch");
}

TEST_P(Geometry, InteriorResidue)
{
    const int n = GetParam();
    const GeometricBundle geo = GeometricBundle::symbolic(n);
    const InteriorResidue o = interior_wres(geo, Mode::Oracle);
    EXPECT_EQ(o.pi_power, n / 2);
    EXPECT_EQ(o.prefactor, GaussRational(n - 2) / factorial(n / 2 - 1));
    const ParamPoly s_coeff = o.density.collect({geo.alphabet.index(names::s)}).at({{geo.alphabet.index(names::s), 1}});
    EXPECT_EQ(s_coeff, geo.dim_f * (q(-1, 12) * GaussRational(2).pow(n / 2)));
    // printed pipeline is self-consistent: s/6 tr(id) + printed Tr E reproduces the published closed form
    EXPECT_EQ(interior_wres(geo, Mode::Printed).density, printed_interior_density(geo));
}

INSTANTIATE_TEST_SUITE_P(Dims, Geometry, ::testing::Values(4, 6));

TEST(Geometry, MatrixTraceOfEndomorphism)
{
    Rng rng(51);
    const GeometricBundle geo = GeometricBundle::random(4, rng);
    const CliffordElement e = connection_and_E(lichnerowicz_normal_form(geo)).e;
    MatrixRepresentation rep(4);
    EXPECT_EQ(rep.represent(e).trace(), spinor_trace(e));
    EXPECT_EQ(f_trace(rep.represent(e).trace(), geo), expected_trace(geo));
}
