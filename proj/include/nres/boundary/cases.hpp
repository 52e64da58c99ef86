#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nres/halfplane/rational.hpp"
#include "nres/symbol/expansion.hpp"

namespace nres {

/// Index data of one boundary term: r and l are the symbol orders of the two
/// factors, j and k count normal derivatives, alpha tangential ones.
struct BoundaryIndices {
    int r = -2, l = 0, j = 0, k = 0, alpha = 0;
    friend bool operator==(const BoundaryIndices&, const BoundaryIndices&) = default;
};

/// Solutions of r + l - k - j - |alpha| - 1 = -n with r <= -2, l <= 2 - nbar.
/// With `plus_alpha` the sign of |alpha| is flipped; then the set is unbounded
/// and the search stops at |alpha| <= alpha_cap.
inline std::vector<BoundaryIndices> enumerate_boundary_terms(int nbar, bool plus_alpha = false, int alpha_cap = 3)
{
    const int n = nbar + 2;
    std::vector<BoundaryIndices> out;
    for (int r = -2; r >= -6; --r)
        for (int l = 2 - nbar; l >= -nbar - 4; --l)
            for (int j = 0; j <= alpha_cap + 3; ++j)
                for (int k = 0; k <= alpha_cap + 3; ++k)
                    for (int a = 0; a <= alpha_cap; ++a) {
                        const int lhs = plus_alpha ? r - k + a + l - j - 1 : r + l - k - j - a - 1;
                        if (lhs == -n)
                            out.push_back({r, l, j, k, a});
                    }
    return out;
}

enum class BoundaryCase { aI, aII, aIII, b, c };

inline const std::vector<BoundaryCase>& all_boundary_cases()
{
    static const std::vector<BoundaryCase> v{BoundaryCase::aI, BoundaryCase::aII, BoundaryCase::aIII, BoundaryCase::b,
                                             BoundaryCase::c};
    return v;
}

inline std::string case_name(BoundaryCase c)
{
    switch (c) {
    case BoundaryCase::aI: return "a-I";
    case BoundaryCase::aII: return "a-II";
    case BoundaryCase::aIII: return "a-III";
    case BoundaryCase::b: return "b";
    case BoundaryCase::c: return "c";
    }
    return "?";
}

inline std::optional<BoundaryCase> parse_case(const std::string& s)
{
    for (auto c : all_boundary_cases())
        if (case_name(c) == s)
            return c;
    return std::nullopt;
}

inline BoundaryIndices case_indices(BoundaryCase c, int nbar)
{
    switch (c) {
    case BoundaryCase::aI: return {-2, 2 - nbar, 0, 0, 1};
    case BoundaryCase::aII: return {-2, 2 - nbar, 1, 0, 0};
    case BoundaryCase::aIII: return {-2, 2 - nbar, 0, 1, 0};
    case BoundaryCase::b: return {-2, 1 - nbar, 0, 0, 0};
    case BoundaryCase::c: return {-3, 2 - nbar, 0, 0, 0};
    }
    return {};
}

/// (-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!).
inline GaussRational case_prefactor(const BoundaryIndices& ix)
{
    return (-GaussRational::i()).pow(ix.alpha + ix.j + ix.k + 1) /
           (factorial(ix.alpha) * factorial(ix.j + ix.k + 1));
}

struct TraceStep {
    std::string operation, expression;
};

/// Engine and published value of one coefficient, per unit trace over F.
struct PrintedComparison {
    std::string term;
    ParamPoly engine, printed;
    bool agrees = false;
};

struct BoundaryCaseResult {
    BoundaryCase which = BoundaryCase::aI;
    int nbar = 4;
    BoundaryIndices indices;
    GaussRational prefactor;
    HalfPlaneRational integrand; ///< traced and sphere-averaged, before prefactor and Vol
    ParamPoly value;    ///< coefficient of pi; carries Vol, dimF and trPhi
    ParamPoly printed;  ///< coefficient of pi as published
    std::vector<PrintedComparison> comparisons;
    std::vector<TraceStep> trace;
    bool agrees() const
    {
        for (const auto& c : comparisons)
            if (!c.agrees)
                return false;
        return true;
    }
};

/// Decorations fully symbolic, derivative data dropped: boundary terms only see
/// pointwise values at x0.
inline GeometricBundle boundary_bundle(int nbar)
{
    if (nbar < 2 || nbar % 2 != 0)
        throw Error(ErrorCode::OddBarDimension, "boundary dimension must be even and >= 2, got " + std::to_string(nbar));
    if (nbar > 10)
        throw Error(ErrorCode::UnsupportedDimension, "boundary terms are supported for nbar <= 10");
    GeometricBundle geo = GeometricBundle::bare(nbar + 2);
    for (int j = 1; j <= geo.n; ++j) {
        geo.x[j - 1] = geo.var(names::x(j));
        geo.y[j - 1] = geo.var(names::y(j));
    }
    for (const auto& t : all_triples(geo.n))
        geo.torsion[t] = geo.var(names::torsion(t));
    return geo;
}

/// Symbols entering the boundary terms: the parametrix with one normal jet and
/// the top two components of its (nbar/2 - 1)-th power.
struct BoundarySymbols {
    int nbar = 4;
    GeometricBundle geo;
    SymbolExpansion p, q, power;

    explicit BoundarySymbols(int nbar_, GeometricBundle g) : nbar(nbar_), geo(std::move(g))
    {
        p = symbol_of_HX(geo, 1);
        q = invert_symbol(p, 2);
        power = power_symbol(q, nbar / 2 - 1);
    }
    explicit BoundarySymbols(int nbar_) : BoundarySymbols(nbar_, boundary_bundle(nbar_)) {}

    const JetValue& lead() const { return power.at(2 - nbar); }
    SymbolElement sub() const { return power.value(1 - nbar); }
};

namespace detail {

inline RationalElement pi_plus(const RationalElement& a)
{
    return a.map([](const HalfPlaneRational& f) { return nres::pi_plus(f); });
}

inline RationalElement d_xi(const RationalElement& a, int times = 1)
{
    return a.map([&](const HalfPlaneRational& f) { return deriv_xi(f, times); });
}

/// Spinor trace, F-trace and sphere average of a product, as a function of xi_n.
inline HalfPlaneRational traced_integrand(const RationalElement& left, const RationalElement& right,
                                          const GeometricBundle& geo)
{
    const HalfPlaneRational tr = spinor_trace(left * right);
    return tr.map_coefficients([&](const ParamPoly& c) { return sphere_average(f_trace(c, geo), geo); });
}

inline ParamPoly unit_twist(const ParamPoly& p, const GeometricBundle& geo)
{
    const ParamPoly one(geo.alphabet, GaussRational(1));
    return p.substitute({{names::dim_f, one}, {names::tr_phi, one}, {names::tr_phi2, one}});
}

/// Part of p linear in the named parameter, as the coefficient polynomial.
inline ParamPoly coefficient_of(const ParamPoly& p, const GeometricBundle& geo, const std::string& name)
{
    const std::uint32_t v = geo.alphabet.index(name);
    const auto parts = p.collect({v});
    auto it = parts.find(Monomial{{v, 1}});
    return it == parts.end() ? geo.zero() : it->second;
}

inline GaussRational product_range(int from, int to)
{
    GaussRational r(1);
    for (int k = from; k <= to; ++k)
        r *= GaussRational(k);
    return r;
}

} // namespace detail

/// Published value of each case, as coefficient of pi.
inline ParamPoly printed_case_value(BoundaryCase c, const GeometricBundle& geo, int nbar)
{
    const GaussRational I = GaussRational::i();
    const int h = nbar / 2;
    const ParamPoly hp = geo.var(names::h1), vol = geo.vol;
    const ParamPoly xy = geo.var(names::x(nbar + 2)) - geo.var(names::y(nbar + 2)) * GaussRational(2);
    const auto D = [](int m, int p, int k) { return deriv_at_i(m, p, k); };
    const GaussRational two_h1 = GaussRational(2).pow(h + 1);
    const GaussRational fact = factorial(h + 2);
    const GaussRational xy_coeff = GaussRational(2 - nbar) * GaussRational(2).pow(h - 2) / factorial(h + 1) * D(1, h, h + 1);
    switch (c) {
    case BoundaryCase::aI: return geo.zero();
    case BoundaryCase::aII: {
        const int p = h + 1, k = h + 2;
        GaussRational l0 = GaussRational(2 * nbar - 2) * I * D(3, p, k) + GaussRational(4 * nbar - 4) * D(2, p, k) -
                           GaussRational(2) * I * D(1, p, k) - GaussRational(4) * D(0, p, k);
        return hp * vol * (GaussRational::ratio(-1, 4) * GaussRational(h - 1) * I / fact * two_h1 * l0);
    }
    case BoundaryCase::aIII: {
        GaussRational l1 = D(0, h, h + 2);
        return hp * vol * (-I * GaussRational(1 - h) * two_h1 * I / fact * l1);
    }
    case BoundaryCase::b: {
        const int p = h + 1, k = h + 2;
        GaussRational l2 = GaussRational(-(nbar - 2) * (nbar + 1)) * D(3, p, k) +
                           GaussRational(-2 * nbar * nbar + 3 * nbar - 2) * D(1, p, k);
        return hp * vol * (GaussRational(2).pow(h - 1) / fact * l2) + xy * vol * xy_coeff;
    }
    case BoundaryCase::c: {
        GaussRational l3 = GaussRational(nbar) * I * D(2, h, h + 2) + GaussRational(nbar + 2) * D(1, h, h + 2);
        return hp * vol * (GaussRational(1 - h) * GaussRational(2).pow(h - 1) * GaussRational(2) * I / fact * l3) +
               xy * vol * xy_coeff;
    }
    }
    return geo.zero();
}

/// One boundary term evaluated by the engine, with its derivation trace.
inline BoundaryCaseResult boundary_case(BoundaryCase which, const BoundarySymbols& sym)
{
    const int nbar = sym.nbar;
    const GeometricBundle& geo = sym.geo;
    BoundaryCaseResult res;
    res.which = which;
    res.nbar = nbar;
    res.indices = case_indices(which, nbar);
    res.prefactor = case_prefactor(res.indices);
    auto step = [&](std::string op, std::string ex) { res.trace.push_back({std::move(op), std::move(ex)}); };
    step("indices", "r=" + std::to_string(res.indices.r) + " l=" + std::to_string(res.indices.l) +
                        " j=" + std::to_string(res.indices.j) + " k=" + std::to_string(res.indices.k) +
                        " |alpha|=" + std::to_string(res.indices.alpha));
    step("prefactor", res.prefactor.str());

    const JetValue& q2 = sym.q.at(-2);
    RationalElement left, right;
    bool tangential = false;
    switch (which) {
    case BoundaryCase::aI:
        // d_{x'} of any symbol vanishes in the translation-invariant collar
        tangential = true;
        break;
    case BoundaryCase::aII:
        left = detail::pi_plus(restrict_to_sphere(q2.jets.at(1)));
        right = detail::d_xi(restrict_to_sphere(sym.lead().value()), 2);
        break;
    case BoundaryCase::aIII:
        left = detail::d_xi(detail::pi_plus(restrict_to_sphere(q2.value())));
        right = detail::d_xi(restrict_to_sphere(sym.lead().jets.at(1)));
        break;
    case BoundaryCase::b:
        left = detail::pi_plus(restrict_to_sphere(q2.value()));
        right = detail::d_xi(restrict_to_sphere(sym.sub()));
        break;
    case BoundaryCase::c:
        left = detail::pi_plus(restrict_to_sphere(sym.q.at(-3).value()));
        right = detail::d_xi(restrict_to_sphere(sym.lead().value()));
        break;
    }
    if (tangential) {
        step("tangential derivative", "d_{x'} sigma = 0 at x0");
        res.value = geo.zero();
    } else {
        step("left factor, scalar part", left.scalar_part().str());
        step("right factor, scalar part", right.scalar_part().str());
        if (which == BoundaryCase::c) {
            const HalfPlaneRational b1 = detail::pi_plus(left).scalar_part().map_coefficients(
                [&](const ParamPoly& c) { return sphere_average(detail::coefficient_of(c, geo, names::h1), geo); });
            step("h'(0) coefficient of pi+ q_{-3}, sphere average", b1.str());
        }
        res.integrand = detail::traced_integrand(left, right, geo);
        step("trace over S and F, sphere average", res.integrand.str());
        const ParamPoly integral = real_line_integral(res.integrand);
        step("real-line integral / pi", integral.str());
        res.value = integral * res.prefactor * geo.vol;
    }
    step("value / pi", res.value.str());

    res.printed = printed_case_value(which, geo, nbar);
    const ParamPoly unit = detail::unit_twist(res.value, geo);
    for (const std::string& term : {names::h1, names::x(nbar + 2), names::y(nbar + 2)}) {
        PrintedComparison cmp{term, detail::coefficient_of(unit, geo, term), detail::coefficient_of(res.printed, geo, term)};
        cmp.agrees = cmp.engine == cmp.printed;
        res.comparisons.push_back(std::move(cmp));
    }
    return res;
}

inline BoundaryCaseResult boundary_case(BoundaryCase which, int nbar)
{
    return boundary_case(which, BoundarySymbols(nbar));
}

} // namespace nres
