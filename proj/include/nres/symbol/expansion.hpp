#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "nres/clifford/multivector.hpp"
#include "nres/geometry/density.hpp"
#include "nres/symbol/symbol_function.hpp"

namespace nres {

using SymbolElement = Multivector<SymbolFunction>;
using RationalElement = Multivector<HalfPlaneRational>;

/// Normal-direction jets of one homogeneous symbol component at x0.
/// jets[m] is the m-th derivative in x_n; tangential derivatives vanish in the
/// collar model, which is translation invariant along the boundary.
struct JetValue {
    std::vector<SymbolElement> jets;

    int order() const { return static_cast<int>(jets.size()) - 1; }
    const SymbolElement& value() const { return jets.at(0); }
    bool is_zero() const
    {
        for (const auto& j : jets)
            if (!j.is_zero())
                return false;
        return true;
    }
    friend bool operator==(const JetValue& a, const JetValue& b) { return a.jets == b.jets; }
};

inline JetValue jet_sum(const JetValue& a, const JetValue& b)
{
    const int k = std::min(a.order(), b.order());
    JetValue out;
    for (int m = 0; m <= k; ++m)
        out.jets.push_back(a.jets[m] + b.jets[m]);
    return out;
}

inline JetValue jet_scale(JetValue a, const SymbolFunction& s)
{
    for (auto& j : a.jets)
        j.scale(s);
    return a;
}

/// Leibniz rule; the result carries as many jets as the shorter factor.
inline JetValue jet_product(const JetValue& a, const JetValue& b)
{
    const int k = std::min(a.order(), b.order());
    JetValue out;
    for (int m = 0; m <= k; ++m) {
        SymbolElement sum(a.jets[0].dim());
        for (int i = 0; i <= m; ++i) {
            if (a.jets[i].is_zero() || b.jets[m - i].is_zero())
                continue;
            sum += (a.jets[i] * b.jets[m - i]).scale(SymbolFunction(binomial(m, i)));
        }
        out.jets.push_back(std::move(sum));
    }
    return out;
}

inline SymbolElement d_xi_n(const SymbolElement& a, int times = 1)
{
    SymbolElement r = a;
    for (int t = 0; t < times; ++t)
        r = r.map([](const SymbolFunction& f) { return f.d_xi_n(); });
    return r;
}

inline JetValue jet_d_xi_n(const JetValue& a, int times)
{
    JetValue out;
    for (const auto& j : a.jets)
        out.jets.push_back(d_xi_n(j, times));
    return out;
}

/// D_{x_n}^m = (-i d/dx_n)^m.
inline JetValue jet_dx_n(const JetValue& a, int m)
{
    if (a.order() < m)
        throw Error(ErrorCode::JetOrderExceeded, "needs " + std::to_string(m) + " normal jets, only " +
                                                     std::to_string(a.order()) + " available");
    const SymbolFunction phase((-GaussRational::i()).pow(m));
    JetValue out;
    for (int k = m; k <= a.order(); ++k)
        out.jets.push_back(SymbolElement(a.jets[k]).scale(phase));
    return out;
}

/// Formal sum of homogeneous components, keyed by order.
struct SymbolExpansion {
    int n = 4;
    SymbolFunction::Ctx ctx;
    std::map<int, JetValue, std::greater<int>> components;

    int top() const
    {
        if (components.empty())
            throw Error(ErrorCode::ValidationError, "empty symbol expansion");
        return components.begin()->first;
    }
    bool has(int order) const { return components.count(order) > 0; }
    const JetValue& at(int order) const
    {
        auto it = components.find(order);
        if (it == components.end())
            throw Error(ErrorCode::ValidationError, "symbol component of order " + std::to_string(order) + " absent");
        return it->second;
    }
    /// Order-r component, or a zero element when the expansion has none there.
    SymbolElement value(int order) const
    {
        auto it = components.find(order);
        return it == components.end() ? SymbolElement(n) : it->second.value();
    }
};

inline SymbolFunction lift(const SymbolFunction::Ctx& ctx, const ParamPoly& c) { return SymbolFunction::q_power(ctx, 0, c); }

inline SymbolElement lift(const SymbolFunction::Ctx& ctx, const CliffordElement& e)
{
    return e.map([&](const ParamPoly& c) { return lift(ctx, c); });
}

/// Normal jets of Gamma^n = g^{ij} Gamma^n_{ij} in the collar metric h(x_n)^{-1} g_boundary + dx_n^2,
/// where it equals (n-1) h'/(2h).
inline std::vector<ParamPoly> normal_christoffel_jets(const GeometricBundle& geo)
{
    const ParamPoly &h1 = geo.h_jets.at(0), &h2 = geo.h_jets.at(1), &h3 = geo.h_jets.at(2);
    const GaussRational c = GaussRational::ratio(geo.n - 1, 2);
    return {h1 * c, (h2 - h1 * h1) * c, (h3 - h1 * h2 * GaussRational(3) + h1.pow(3) * GaussRational(2)) * c};
}

/// Symbol of H_X near a boundary point, with `jet_order` normal jets on the
/// principal part, one fewer on the first-order part and two fewer on the rest.
/// Decorations are taken constant along the normal direction.
inline SymbolExpansion symbol_of_HX(const GeometricBundle& geo, int jet_order)
{
    if (jet_order < 0 || jet_order > 3)
        throw Error(ErrorCode::JetOrderExceeded, "collar jets are available up to order 3");
    const int n = geo.n;
    SymbolExpansion p;
    p.n = n;
    p.ctx = SymbolContext::make(n, geo.alphabet);
    const auto& ctx = p.ctx;
    const LaplaceNormalForm nf = lichnerowicz_normal_form(geo);
    const auto gamma = normal_christoffel_jets(geo);
    const GaussRational I = GaussRational::i();

    JetValue p2;
    p2.jets.push_back(SymbolElement::scalar(n, SymbolFunction::q_power(ctx, 1)));
    for (int m = 1; m <= jet_order; ++m)
        p2.jets.push_back(SymbolElement::scalar(n, lift(ctx, geo.h_jets[m - 1] * ctx->rho2)));
    p.components[2] = std::move(p2);

    // p1 = -i A^j xi_j, with Gamma^n the only Christoffel contraction in the collar.
    JetValue p1;
    SymbolElement v(n);
    for (int j = 1; j < n; ++j)
        v += lift(ctx, nf.a[j - 1]).scale(lift(ctx, geo.xi(j) * (-I)));
    SymbolElement an = lift(ctx, nf.a[n - 1]) - SymbolElement::scalar(n, lift(ctx, gamma[0]));
    v += an.scale(SymbolFunction::xi_n(ctx, ParamPoly(-I)));
    p1.jets.push_back(std::move(v));
    for (int m = 1; m <= jet_order - 1; ++m)
        p1.jets.push_back(SymbolElement::scalar(n, SymbolFunction::xi_n(ctx, gamma[m] * I)));
    p.components[1] = std::move(p1);

    JetValue p0;
    p0.jets.push_back(lift(ctx, -nf.b));
    for (int m = 1; m <= jet_order - 2; ++m)
        p0.jets.push_back(SymbolElement(n));
    p.components[0] = std::move(p0);
    return p;
}

namespace detail {

/// Order-r part of a o b, or nullopt when no term reaches that order.
inline std::optional<JetValue> compose_component(const SymbolExpansion& a, const SymbolExpansion& b, int r)
{
    std::optional<JetValue> acc;
    for (const auto& [ra, ja] : a.components)
        for (const auto& [rb, jb] : b.components) {
            const int m = ra + rb - r;
            if (m < 0)
                continue;
            JetValue da = jet_d_xi_n(ja, m);
            if (da.is_zero())
                continue;
            JetValue term = jet_product(da, jet_dx_n(jb, m));
            term = jet_scale(std::move(term), SymbolFunction(GaussRational(1) / factorial(m)));
            acc = acc ? jet_sum(*acc, term) : term;
        }
    return acc;
}

} // namespace detail

/// a o b = Sum_alpha (1/alpha!) d_xi^alpha a D_x^alpha b, keeping orders top..top-max_drop.
/// Only normal multi-indices contribute in the collar model.
inline SymbolExpansion compose_symbols(const SymbolExpansion& a, const SymbolExpansion& b, int max_drop)
{
    SymbolExpansion out;
    out.n = a.n;
    out.ctx = a.ctx ? a.ctx : b.ctx;
    const int top = a.top() + b.top();
    for (int r = top; r >= top - max_drop; --r)
        if (auto c = detail::compose_component(a, b, r))
            out.components[r] = std::move(*c);
    return out;
}

/// Jet-level inverse of a scalar principal part.
inline JetValue jet_inverse(const JetValue& p)
{
    for (const auto& j : p.jets)
        if (!j.is_scalar())
            throw Error(ErrorCode::NotElliptic, "principal symbol is not scalar");
    const int n = p.jets[0].dim();
    const SymbolFunction inv = p.jets[0].scalar_part().inverse();
    JetValue q;
    q.jets.push_back(SymbolElement::scalar(n, inv));
    for (int m = 1; m <= p.order(); ++m) {
        SymbolFunction s;
        for (int i = 1; i <= m; ++i)
            s += p.jets[i].scalar_part() * q.jets[m - i].scalar_part() * SymbolFunction(binomial(m, i));
        q.jets.push_back(SymbolElement::scalar(n, -(inv * s)));
    }
    return q;
}

/// Parametrix symbol q_{-2}, q_{-3}, ... with `depth` components.
inline SymbolExpansion invert_symbol(const SymbolExpansion& p, int depth)
{
    if (p.top() != 2)
        throw Error(ErrorCode::NotElliptic, "expected a second-order symbol");
    SymbolExpansion q;
    q.n = p.n;
    q.ctx = p.ctx;
    q.components[-2] = jet_inverse(p.at(2));
    const JetValue& lead = q.components[-2];
    for (int m = 1; m < depth; ++m) {
        auto rest = detail::compose_component(p, q, -m);
        if (!rest)
            continue;
        JetValue next = jet_product(lead, *rest);
        for (auto& j : next.jets)
            j = -j;
        q.components[-2 - m] = std::move(next);
    }
    return q;
}

/// Top two components of the symbol of q^{power} for a parametrix q with
/// components -2 and -3; power 0 gives the identity.
inline SymbolExpansion power_symbol(const SymbolExpansion& q, int power)
{
    if (power == 0) {
        SymbolExpansion id;
        id.n = q.n;
        id.ctx = q.ctx;
        JetValue one;
        one.jets.push_back(SymbolElement::scalar(q.n, lift(q.ctx, ParamPoly(1))));
        for (int m = 1; m <= q.at(-2).order(); ++m)
            one.jets.push_back(SymbolElement(q.n));
        id.components[0] = std::move(one);
        return id;
    }
    SymbolExpansion base;
    base.n = q.n;
    base.ctx = q.ctx;
    for (int r : {-2, -3})
        if (q.has(r))
            base.components[r] = q.at(r);
    SymbolExpansion acc = base;
    for (int k = 2; k <= power; ++k)
        acc = compose_symbols(acc, base, 1);
    return acc;
}

inline RationalElement restrict_to_sphere(const SymbolElement& a)
{
    return a.map([](const SymbolFunction& f) { return f.restrict_to_sphere(); });
}

} // namespace nres
