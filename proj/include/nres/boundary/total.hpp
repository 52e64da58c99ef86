#pragma once

#include <string>
#include <vector>

#include "nres/boundary/cases.hpp"
#include "nres/geometry/density.hpp"

namespace nres {

/// Sum of the five boundary terms, split by the boundary data it multiplies.
struct BoundaryTotal {
    int nbar = 4;
    std::vector<BoundaryCaseResult> cases;
    ParamPoly value;                 ///< coefficient of pi
    ParamPoly h_coeff, x_coeff, y_coeff;
    ParamPoly printed_bracket;       ///< published sum before the derivative closed forms
    ParamPoly printed_closed;        ///< published sum after them
    std::vector<std::string> closed_form_notes;
    std::vector<PrintedComparison> comparisons;
};

/// Published total, still written with derivatives evaluated at i.
inline ParamPoly printed_total_bracket(const GeometricBundle& geo, int nbar)
{
    const GaussRational I = GaussRational::i();
    const int h = nbar / 2, p = h + 1, k = h + 2;
    const auto D = [](int m, int pp, int kk) { return deriv_at_i(m, pp, kk); };
    GaussRational l = GaussRational(-2 * nbar + 4) * I * D(3, p, k) - GaussRational(4 * nbar) * D(2, p, k) +
                      GaussRational(2 * nbar + 4) * I * D(1, p, k);
    const ParamPoly xy = geo.var(names::x(nbar + 2)) - geo.var(names::y(nbar + 2)) * GaussRational(2);
    ParamPoly hpart = geo.var(names::h1) * geo.vol *
                      (GaussRational(h - 1) * GaussRational(2) * I / factorial(h + 2) * GaussRational(2).pow(h - 2) * l);
    ParamPoly xypart = xy * geo.vol *
                       (GaussRational(3 * nbar - 6) * GaussRational(2).pow(h - 2) / factorial(h + 1) * D(1, h, h + 1));
    return hpart + xypart;
}

/// The quartic-times-product factor shared by the published h'(0) and K terms.
inline GaussRational printed_quartic_product(int nbar)
{
    const GaussRational I = GaussRational::i();
    const GaussRational nb(nbar);
    GaussRational quartic = (GaussRational::ratio(-1, 2) * nb.pow(4) - nb.pow(3) + GaussRational::ratio(5, 4) * nb.pow(2) +
                             GaussRational::ratio(5, 2) * nb) *
                            I;
    return quartic * detail::product_range(nbar / 2 + 2, nbar - 1);
}

/// Published total after the derivative closed forms. Factorials of negative
/// integers make the X/Y bracket undefined for nbar = 2; it is then taken as 0
/// because its prefactor 3nbar - 6 vanishes, and a note is recorded.
inline ParamPoly printed_total_closed(const GeometricBundle& geo, int nbar, std::vector<std::string>* notes = nullptr)
{
    const GaussRational I = GaussRational::i();
    const int h = nbar / 2;
    if (notes && nbar / 2 + 2 > nbar - 1)
        notes->push_back("empty product (nbar/2+2)...(nbar-1) taken as 1");
    ParamPoly hpart = geo.var(names::h1) * geo.vol *
                      (GaussRational(h - 1) * GaussRational(2) * I / factorial(h + 2) * printed_quartic_product(nbar) /
                       GaussRational(2).pow(h + 2));
    GaussRational bracket;
    if (h >= 2)
        bracket = factorial(nbar - 1) / GaussRational(2).pow(nbar) / factorial(h - 2) +
                  factorial(nbar) / GaussRational(2).pow(nbar + 1) / factorial(h - 1);
    else if (notes)
        notes->push_back("X/Y bracket has (nbar/2-2)! of a negative integer; prefactor 3nbar-6 = 0, term taken as 0");
    const ParamPoly xy = geo.var(names::x(nbar + 2)) - geo.var(names::y(nbar + 2)) * GaussRational(2);
    ParamPoly xypart = xy * geo.vol * (GaussRational(3 * nbar - 6) * GaussRational(2).pow(h - 2) / factorial(h + 1) * bracket);
    return hpart + xypart;
}

inline BoundaryTotal total_boundary_phi(int nbar)
{
    BoundarySymbols sym(nbar);
    const GeometricBundle& geo = sym.geo;
    BoundaryTotal t;
    t.nbar = nbar;
    t.value = geo.zero();
    for (auto c : all_boundary_cases()) {
        t.cases.push_back(boundary_case(c, sym));
        t.value += t.cases.back().value;
    }
    t.h_coeff = detail::coefficient_of(t.value, geo, names::h1);
    t.x_coeff = detail::coefficient_of(t.value, geo, names::x(nbar + 2));
    t.y_coeff = detail::coefficient_of(t.value, geo, names::y(nbar + 2));
    const ParamPoly rebuilt = t.h_coeff * geo.var(names::h1) + t.x_coeff * geo.var(names::x(nbar + 2)) +
                              t.y_coeff * geo.var(names::y(nbar + 2));
    if (!(rebuilt == t.value))
        throw Error(ErrorCode::ValidationError, "boundary total has terms beyond h'(0), X_n and Y_n");
    t.printed_bracket = printed_total_bracket(geo, nbar);
    t.printed_closed = printed_total_closed(geo, nbar, &t.closed_form_notes);
    const ParamPoly unit = detail::unit_twist(t.value, geo);
    for (const std::string& term : {names::h1, names::x(nbar + 2), names::y(nbar + 2)}) {
        PrintedComparison cmp{term, detail::coefficient_of(unit, geo, term),
                              detail::coefficient_of(t.printed_closed, geo, term)};
        cmp.agrees = cmp.engine == cmp.printed;
        t.comparisons.push_back(std::move(cmp));
    }
    return t;
}

/// Mean curvature of the boundary in the collar metric h(x_n)^{-1} g_boundary + dx_n^2.
struct ExtrinsicCurvature {
    ParamPoly engine, printed;
};

inline ExtrinsicCurvature extrinsic_K(int nbar)
{
    const GeometricBundle geo = GeometricBundle::bare(nbar + 2);
    const ParamPoly hp = geo.hprime();
    ExtrinsicCurvature k;
    k.engine = geo.zero();
    for (int i = 1; i <= nbar + 1; ++i) {
        // g_ii = 1/h, so d_n g_ii = -h'/h^2 = -h'(0) at x0 and Gamma^n_ii = -d_n g_ii / 2
        const ParamPoly dg = -hp;
        const ParamPoly gamma = dg * GaussRational::ratio(-1, 2);
        k.engine -= gamma;
    }
    k.printed = hp * GaussRational::ratio(-(nbar + 1), 2);
    return k;
}

/// Full residue: interior part plus boundary part, the h'(0) term rewritten through K.
struct ResidueWithBoundary {
    InteriorResidue interior;
    ParamPoly boundary;        ///< coefficient of pi, in terms of K, X_n, Y_n
    ParamPoly printed_boundary;
    bool boundary_agrees = false;
};

inline ParamPoly printed_boundary_with_K(const GeometricBundle& geo, int nbar)
{
    const GaussRational I = GaussRational::i();
    const int h = nbar / 2;
    std::vector<std::string> ignored;
    ParamPoly closed = printed_total_closed(geo, nbar, &ignored);
    const ParamPoly xy = detail::coefficient_of(closed, geo, names::x(nbar + 2)) * geo.var(names::x(nbar + 2)) +
                         detail::coefficient_of(closed, geo, names::y(nbar + 2)) * geo.var(names::y(nbar + 2));
    ParamPoly kpart = geo.var(names::k_ext) * geo.vol *
                      (-GaussRational(nbar - 2) * I / (GaussRational(nbar + 1) * factorial(h + 2)) *
                       printed_quartic_product(nbar) / GaussRational(2).pow(h + 1));
    return kpart + xy;
}

inline ResidueWithBoundary wres_with_boundary(int nbar, Mode mode)
{
    const GeometricBundle interior_geo = GeometricBundle::symbolic(nbar + 2);
    ResidueWithBoundary r;
    r.interior = interior_wres(interior_geo, mode);
    const GeometricBundle geo = GeometricBundle::bare(nbar + 2);
    r.printed_boundary = printed_boundary_with_K(geo, nbar);
    const BoundaryTotal t = total_boundary_phi(nbar);
    ParamPoly engine = t.h_coeff * GaussRational::ratio(-2, nbar + 1) * geo.var(names::k_ext) +
                       t.x_coeff * geo.var(names::x(nbar + 2)) + t.y_coeff * geo.var(names::y(nbar + 2));
    r.boundary_agrees = detail::unit_twist(engine, geo) == r.printed_boundary;
    r.boundary = mode == Mode::Oracle ? engine : r.printed_boundary;
    return r;
}

/// One row of the audit of the three published derivative closed forms.
struct DerivativeAuditRow {
    int power = 1;   ///< n in [xi^m / (xi+i)^n]^{(n+1)} at xi = i
    int monomial = 1;
    GaussRational engine, printed;
    bool agrees() const { return engine == printed; }
};

inline GaussRational printed_derivative_closed_form(int m, int n)
{
    using detail::product_range;
    const GaussRational I = GaussRational::i();
    switch (m) {
    case 1: return -product_range(n + 2, 2 * n + 1) / GaussRational(2).pow(2 * n + 3);
    case 2: return -product_range(n - 1, 2 * n - 1) / (GaussRational(2).pow(2 * n) * I);
    case 3: return GaussRational(3) * product_range(n, 2 * n - 1) / GaussRational(2).pow(2 * n + 1);
    }
    throw Error(ErrorCode::ValidationError, "closed forms exist for xi^1..xi^3 only");
}

inline std::vector<DerivativeAuditRow> derivative_audit(int max_power = 6)
{
    std::vector<DerivativeAuditRow> rows;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= max_power; ++n)
            rows.push_back({n, m, deriv_at_i(m, n, n + 1), printed_derivative_closed_form(m, n)});
    return rows;
}

} // namespace nres
