#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nres/geometry/bundle.hpp"

namespace nres {

/// H = -(g^{ij} d_i d_j + A^i d_i + B) at x0, in normal coordinates with an
/// orthonormal frame, so g^{ij} = delta and the spin connection vanishes there.
struct LaplaceNormalForm {
    int n = 4;
    std::vector<CliffordElement> a;   ///< A^i
    std::vector<CliffordElement> da;  ///< d_i A^i (no sum)
    CliffordElement b;
};

/// Building blocks of the twisted Dirac operator D + c(X)/4 + W at x0.
struct DecoratedOperator {
    int n = 4;
    std::vector<CliffordElement> gen; ///< c(e_i)
    CliffordElement cx, w;            ///< c(X), W = (c(T) + c(Y)) Phi
    std::vector<CliffordElement> dcx, dw;
    CliffordElement curvature;        ///< s/4 + 1/2 Sum R^F(e_i,e_j) c_i c_j
    CliffordElement moment;           ///< -1/4 Sum_{j<l} dX*(e_j,e_l) c_j c_l
};

inline DecoratedOperator decorated_operator(const GeometricBundle& geo)
{
    geo.validate();
    const int n = geo.n;
    DecoratedOperator op;
    op.n = n;
    const ParamPoly one(geo.alphabet, GaussRational(1));
    for (int i = 1; i <= n; ++i)
        op.gen.push_back(CliffordElement::generator(n, i, one));
    op.cx = CliffordElement::vector(n, geo.x);
    const CliffordElement ct = torsion_element(n, geo.torsion);
    op.w = (ct + CliffordElement::vector(n, geo.y)).scale(geo.phi());
    for (int i = 1; i <= n; ++i) {
        op.dcx.push_back(CliffordElement::vector(n, geo.dx[i - 1]));
        TorsionComponents dt;
        if (auto it = geo.dtorsion.find(i); it != geo.dtorsion.end())
            dt = it->second;
        CliffordElement dw = (torsion_element(n, dt) + CliffordElement::vector(n, geo.dy[i - 1])).scale(geo.phi());
        dw += (ct + CliffordElement::vector(n, geo.y)).scale(geo.dphi(i));
        op.dw.push_back(std::move(dw));
    }
    op.curvature = CliffordElement::scalar(n, geo.s * GaussRational::ratio(1, 4));
    op.moment = CliffordElement(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const std::uint32_t mask = (1u << (i - 1)) | (1u << (j - 1));
            if (auto it = geo.rf.find({i, j}); it != geo.rf.end())
                op.curvature.add_term(mask, it->second);
            ParamPoly dxs = geo.dx[j - 1][i - 1] - geo.dx[i - 1][j - 1];
            op.moment.add_term(mask, dxs * GaussRational::ratio(-1, 4));
        }
    return op;
}

inline CliffordElement anticommutator(const CliffordElement& a, const CliffordElement& b) { return a * b + b * a; }

/// Normal form of the decorated Laplacian at x0.
inline LaplaceNormalForm lichnerowicz_normal_form(const GeometricBundle& geo)
{
    const DecoratedOperator op = decorated_operator(geo);
    const int n = geo.n;
    const GaussRational half = GaussRational::ratio(1, 2), quarter = GaussRational::ratio(1, 4);
    LaplaceNormalForm nf;
    nf.n = n;
    CliffordElement zeroth = op.curvature + op.moment + op.w * op.w + anticommutator(op.w, op.cx).scale(quarter);
    zeroth += CliffordElement::scalar(n, geo.norm_x2() * GaussRational::ratio(-1, 16));
    for (int i = 0; i < n; ++i) {
        const ParamPoly xi_comp = geo.x[i] * half;
        nf.a.push_back(-(CliffordElement::scalar(n, xi_comp) + anticommutator(op.gen[i], op.w)));
        nf.da.push_back(
            -(CliffordElement::scalar(n, geo.dx[i][i] * half) + anticommutator(op.gen[i], op.dw[i])));
        zeroth += op.gen[i] * op.dw[i] + (op.gen[i] * op.dcx[i]).scale(quarter);
    }
    nf.b = -zeroth;
    return nf;
}

struct ConnectionAndEndomorphism {
    std::vector<CliffordElement> omega; ///< omega_i = A^i / 2 at x0
    CliffordElement e;
};

/// E = B - Sum_i (d_i omega_i + omega_i omega_i), valid where g = delta and Gamma = 0.
inline ConnectionAndEndomorphism connection_and_E(const LaplaceNormalForm& nf)
{
    const GaussRational half = GaussRational::ratio(1, 2);
    ConnectionAndEndomorphism out;
    out.e = nf.b;
    for (int i = 0; i < nf.n; ++i) {
        CliffordElement w = CliffordElement(nf.a[i]).scale(half);
        out.e -= CliffordElement(nf.da[i]).scale(half) + w * w;
        out.omega.push_back(std::move(w));
    }
    return out;
}

enum class Mode { Oracle, Printed };

inline std::string mode_name(Mode m) { return m == Mode::Oracle ? "oracle" : "printed"; }

/// Tr over S (x) F of E. The oracle route traces the assembled endomorphism; the
/// printed route evaluates the closed form as published, including its 2^n normalisation.
inline ParamPoly trace_E_density(const GeometricBundle& geo, Mode mode)
{
    if (mode == Mode::Printed) {
        const GaussRational half = GaussRational::ratio(1, 2);
        ParamPoly bracket = geo.s * GaussRational::ratio(-1, 4) + geo.div_x * half + geo.g_yx() * geo.tr_phi +
                            geo.sum_torsion_sq() * geo.tr_phi2 * GaussRational(2) + geo.norm_y2() * geo.tr_phi2 * half;
        return bracket * geo.dim_f * GaussRational(2).pow(geo.n);
    }
    const CliffordElement e = connection_and_E(lichnerowicz_normal_form(geo)).e;
    return f_trace(spinor_trace(e), geo);
}

/// One named coefficient of the trace of E, in both routes.
struct TermComparison {
    std::string term;
    ParamPoly oracle, printed;
    ParamPoly oracle_normalized, printed_normalized; ///< divided by the route's own identity trace
    std::string flag;                                ///< match | prefactor | prefactor,rank-one-twist | mismatch
};

namespace detail {

/// Splits a trace density into s, divX, g(Y,X), Sum T^2 and |Y|^2 coefficients.
/// Fails if anything is left over or a coefficient is not uniform across components.
inline std::vector<std::pair<std::string, ParamPoly>> split_density(const ParamPoly& p, const GeometricBundle& geo)
{
    const Alphabet& a = geo.alphabet;
    std::vector<std::uint32_t> vars{a.index(names::s), a.index(names::divx)};
    for (int j = 1; j <= geo.n; ++j) {
        vars.push_back(a.index(names::x(j)));
        vars.push_back(a.index(names::y(j)));
    }
    for (const auto& t : all_triples(geo.n))
        vars.push_back(a.index(names::torsion(t)));
    const auto parts = p.collect(vars);
    auto coeff = [&](Monomial m) {
        auto it = parts.find(m);
        return it == parts.end() ? geo.zero() : it->second;
    };
    const auto ix = [&](const std::string& nm) { return a.index(nm); };
    auto sorted_pair = [](std::uint32_t u, std::uint32_t v) {
        return u < v ? Monomial{{u, 1}, {v, 1}} : Monomial{{v, 1}, {u, 1}};
    };
    std::vector<std::pair<std::string, ParamPoly>> out{
        {"s", coeff({{ix(names::s), 1}})},
        {"divX", coeff({{ix(names::divx), 1}})},
        {"g(Y,X)", coeff(sorted_pair(ix(names::x(1)), ix(names::y(1))))},
        {"|T|^2", coeff({{ix(names::torsion({1, 2, 3})), 2}})},
        {"|Y|^2", coeff({{ix(names::y(1)), 2}})},
    };
    ParamPoly rebuilt = out[0].second * geo.var(names::s) + out[1].second * geo.var(names::divx);
    for (int j = 1; j <= geo.n; ++j) {
        rebuilt += out[2].second * geo.var(names::x(j)) * geo.var(names::y(j));
        rebuilt += out[4].second * geo.var(names::y(j)).pow(2);
    }
    for (const auto& t : all_triples(geo.n))
        rebuilt += out[3].second * geo.var(names::torsion(t)).pow(2);
    if (!(rebuilt == p))
        throw Error(ErrorCode::ValidationError, "trace density has terms outside the five-term ansatz");
    return out;
}

} // namespace detail

/// Term-by-term comparison of the two routes. Needs a fully symbolic bundle.
inline std::vector<TermComparison> compare_trace_E(const GeometricBundle& geo)
{
    const auto oracle = detail::split_density(trace_E_density(geo, Mode::Oracle), geo);
    const auto printed = detail::split_density(trace_E_density(geo, Mode::Printed), geo);
    const GaussRational id_oracle = GaussRational(2).pow(geo.n / 2);
    const GaussRational id_printed = GaussRational(2).pow(geo.n);
    std::vector<TermComparison> out;
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        TermComparison c;
        c.term = oracle[k].first;
        c.oracle = oracle[k].second;
        c.printed = printed[k].second;
        c.oracle_normalized = c.oracle * (GaussRational(1) / id_oracle);
        c.printed_normalized = c.printed * (GaussRational(1) / id_printed);
        const std::map<std::string, ParamPoly> rank_one{{names::dim_f, ParamPoly(geo.alphabet, GaussRational(1))}};
        const auto same_rank_one = [&](const ParamPoly& u, const ParamPoly& v) {
            return u.substitute(rank_one) == v.substitute(rank_one);
        };
        if (c.oracle == c.printed)
            c.flag = "match";
        else if (c.oracle_normalized == c.printed_normalized)
            c.flag = "prefactor";
        else if (same_rank_one(c.oracle_normalized, c.printed_normalized))
            c.flag = "prefactor,rank-one-twist";
        else
            c.flag = "mismatch";
        out.push_back(std::move(c));
    }
    return out;
}

/// Interior residue density: Wres = prefactor * pi^{n/2} * Int density dvol,
/// prefactor = (n-2)/(n/2-1)!, density = s/6 * tr(id) + Tr E.
struct InteriorResidue {
    int n = 4;
    GaussRational prefactor;
    int pi_power = 2;
    ParamPoly density;
};

inline InteriorResidue interior_wres(const GeometricBundle& geo, Mode mode)
{
    const int n = geo.n;
    if (n < 4 || n % 2 != 0)
        throw Error(ErrorCode::UnsupportedDimension, "interior residue needs even n >= 4");
    InteriorResidue r;
    r.n = n;
    r.pi_power = n / 2;
    r.prefactor = GaussRational(n - 2) / GaussRational(factorial(n / 2 - 1));
    const GaussRational id_spinor = GaussRational(2).pow(mode == Mode::Oracle ? n / 2 : n);
    r.density = geo.s * geo.dim_f * id_spinor * GaussRational::ratio(1, 6) + trace_E_density(geo, mode);
    return r;
}

/// Interior residue density in its published closed form.
inline ParamPoly printed_interior_density(const GeometricBundle& geo)
{
    const GaussRational half = GaussRational::ratio(1, 2);
    ParamPoly bracket = geo.s * GaussRational::ratio(-1, 12) + geo.div_x * half + geo.g_yx() * geo.tr_phi +
                        geo.sum_torsion_sq() * geo.tr_phi2 * GaussRational(2) + geo.norm_y2() * geo.tr_phi2 * half;
    return bracket * geo.dim_f * GaussRational(2).pow(geo.n);
}

} // namespace nres
