#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "nres/clifford/multivector.hpp"
#include "nres/error.hpp"
#include "nres/exact/param_poly.hpp"
#include "nres/exact/random.hpp"

namespace nres {

/// Parameter names shared by every module. Indices are 1-based in names.
namespace names {
inline std::string xi(int j) { return "xi" + std::to_string(j); }
inline std::string x(int j) { return "X_" + std::to_string(j); }
inline std::string y(int j) { return "Y_" + std::to_string(j); }
inline std::string torsion(const Triple& t)
{
    return "T_" + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
}
inline std::string dx(int i, int k) { return "dX_" + std::to_string(i) + "_" + std::to_string(k); }
inline std::string dy(int i, int k) { return "dY_" + std::to_string(i) + "_" + std::to_string(k); }
inline std::string dtorsion(int i, const Triple& t) { return "d" + std::to_string(i) + torsion(t); }
inline std::string dphi(int i) { return "dPhi_" + std::to_string(i); }
inline std::string trdphi(int i) { return "trdPhi_" + std::to_string(i); }
inline std::string rf(int i, int j) { return "RF_" + std::to_string(i) + std::to_string(j); }
inline std::string trrf(int i, int j) { return "trRF_" + std::to_string(i) + std::to_string(j); }
inline const std::string phi = "Phi";
inline const std::string s = "s";
inline const std::string divx = "divX";
inline const std::string dim_f = "dimF";
inline const std::string tr_phi = "trPhi";
inline const std::string tr_phi2 = "trPhi2";
inline const std::string vol = "Vol";
inline const std::string h1 = "h'(0)";
inline const std::string h2 = "h''(0)";
inline const std::string h3 = "h'''(0)";
inline const std::string k_ext = "K";
} // namespace names

inline std::vector<Triple> all_triples(int n)
{
    std::vector<Triple> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                out.push_back({a, b, c});
    return out;
}

namespace detail {

inline Alphabet build_alphabet(int n)
{
    std::vector<std::string> v;
    for (int j = 1; j < n; ++j)
        v.push_back(names::xi(j));
    for (const auto& s : {names::phi, names::s, names::divx, names::dim_f, names::tr_phi, names::tr_phi2, names::vol,
                          names::h1, names::h2, names::h3, names::k_ext})
        v.push_back(s);
    for (int j = 1; j <= n; ++j) {
        v.push_back(names::x(j));
        v.push_back(names::y(j));
        v.push_back(names::dphi(j));
        v.push_back(names::trdphi(j));
    }
    for (const auto& t : all_triples(n))
        v.push_back(names::torsion(t));
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) {
            if (!(i == 1 && k == 1))
                v.push_back(names::dx(i, k));
            v.push_back(names::dy(i, k));
        }
    for (int i = 1; i <= n; ++i)
        for (const auto& t : all_triples(n))
            v.push_back(names::dtorsion(i, t));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            v.push_back(names::rf(i, j));
            v.push_back(names::trrf(i, j));
        }
    return Alphabet(std::move(v));
}

} // namespace detail

/// Every name a session in dimension n may refer to. One shared alphabet per
/// dimension, so polynomials from different bundles of equal n combine.
inline Alphabet make_alphabet(int n)
{
    static std::mutex guard;
    static std::map<int, Alphabet> cache;
    std::lock_guard lock(guard);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, detail::build_alphabet(n)).first;
    return it->second;
}

/// Geometric data at one point x0, in a frame that is orthonormal there.
/// Every entry is a parameter polynomial: either a named symbol or a number.
struct GeometricBundle {
    int n = 4;
    Alphabet alphabet;
    std::vector<ParamPoly> x, y;             ///< components X_j, Y_j
    TorsionComponents torsion;               ///< strictly increasing triples only
    ParamPoly s, div_x, dim_f, tr_phi, tr_phi2, vol;
    std::vector<ParamPoly> h_jets;           ///< h'(0), h''(0), h'''(0)
    std::vector<std::vector<ParamPoly>> dx;  ///< dx[i-1][k-1] = d_i X_k at x0
    std::vector<std::vector<ParamPoly>> dy;
    std::map<int, TorsionComponents> dtorsion;
    std::map<std::pair<int, int>, ParamPoly> rf; ///< R^F(e_i,e_j), i<j, formal End(F) values

    ParamPoly var(const std::string& name) const { return ParamPoly::variable(alphabet, name); }
    ParamPoly zero() const { return ParamPoly(alphabet, GaussRational()); }
    ParamPoly phi() const { return var(names::phi); }
    ParamPoly dphi(int i) const { return var(names::dphi(i)); }
    ParamPoly xi(int j) const { return var(names::xi(j)); }
    ParamPoly hprime() const { return h_jets.at(0); }

    /// Sum_j Y_j X_j.
    ParamPoly g_yx() const
    {
        ParamPoly r = zero();
        for (int j = 0; j < n; ++j)
            r += y[j] * x[j];
        return r;
    }
    ParamPoly norm_y2() const
    {
        ParamPoly r = zero();
        for (int j = 0; j < n; ++j)
            r += y[j] * y[j];
        return r;
    }
    ParamPoly norm_x2() const
    {
        ParamPoly r = zero();
        for (int j = 0; j < n; ++j)
            r += x[j] * x[j];
        return r;
    }
    ParamPoly sum_torsion_sq() const
    {
        ParamPoly r = zero();
        for (const auto& [t, v] : torsion)
            r += v * v;
        return r;
    }

    /// |xi'|^2 as a polynomial in the tangential covariables.
    ParamPoly rho2() const
    {
        ParamPoly r = zero();
        for (int j = 1; j < n; ++j)
            r += xi(j) * xi(j);
        return r;
    }

    void validate() const
    {
        if (n < 2 || n % 2 != 0)
            throw Error(ErrorCode::OddDimension, "bundle dimension must be even, got " + std::to_string(n));
        if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
            throw Error(ErrorCode::DimMismatch, "X and Y need n components");
        for (const auto& [t, v] : torsion)
            validate_triple(n, t);
        for (const auto& [i, tc] : dtorsion)
            for (const auto& [t, v] : tc)
                validate_triple(n, t);
    }

    /// Every decoration set to zero; s, divX, h-jets, twist traces and Vol stay symbolic.
    static GeometricBundle bare(int n)
    {
        GeometricBundle b;
        b.n = n;
        b.alphabet = make_alphabet(n);
        b.x.assign(n, b.zero());
        b.y.assign(n, b.zero());
        b.s = b.var(names::s);
        b.div_x = b.zero();
        b.dim_f = b.var(names::dim_f);
        b.tr_phi = b.var(names::tr_phi);
        b.tr_phi2 = b.var(names::tr_phi2);
        b.vol = b.var(names::vol);
        b.h_jets = {b.var(names::h1), b.var(names::h2), b.var(names::h3)};
        b.dx.assign(n, std::vector<ParamPoly>(n, b.zero()));
        b.dy.assign(n, std::vector<ParamPoly>(n, b.zero()));
        return b;
    }

    /// All data symbolic. d_1 X_1 is eliminated in favour of divX.
    static GeometricBundle symbolic(int n)
    {
        GeometricBundle b = bare(n);
        b.div_x = b.var(names::divx);
        for (int j = 1; j <= n; ++j) {
            b.x[j - 1] = b.var(names::x(j));
            b.y[j - 1] = b.var(names::y(j));
        }
        for (const auto& t : all_triples(n))
            b.torsion[t] = b.var(names::torsion(t));
        b.set_symbolic_derivatives();
        return b;
    }

    /// Random rational decorations; the collar jets, the twist traces, s, divX and Vol stay symbolic.
    static GeometricBundle random(int n, Rng& rng, double torsion_density = 0.6)
    {
        GeometricBundle b = bare(n);
        b.div_x = b.var(names::divx);
        for (int j = 0; j < n; ++j) {
            b.x[j] = ParamPoly(b.alphabet, random_rational(rng));
            b.y[j] = ParamPoly(b.alphabet, random_rational(rng));
        }
        for (const auto& t : all_triples(n))
            if (coin(rng, torsion_density))
                b.torsion[t] = ParamPoly(b.alphabet, random_nonzero_rational(rng));
        b.set_symbolic_derivatives();
        return b;
    }

    void set_symbolic_derivatives()
    {
        dx.assign(n, std::vector<ParamPoly>(n, zero()));
        dy.assign(n, std::vector<ParamPoly>(n, zero()));
        ParamPoly rest = zero();
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k) {
                dy[i - 1][k - 1] = var(names::dy(i, k));
                if (i == 1 && k == 1)
                    continue;
                dx[i - 1][k - 1] = var(names::dx(i, k));
                if (i == k)
                    rest += dx[i - 1][k - 1];
            }
        dx[0][0] = div_x - rest;
        dtorsion.clear();
        for (int i = 1; i <= n; ++i)
            for (const auto& t : all_triples(n))
                dtorsion[i][t] = var(names::dtorsion(i, t));
        rf.clear();
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                rf[{i, j}] = var(names::rf(i, j));
    }

    /// Only the X decoration kept.
    GeometricBundle only_x() const
    {
        GeometricBundle b = *this;
        b.y.assign(n, zero());
        b.torsion.clear();
        return b;
    }
    /// Only the torsion and Y decorations kept.
    GeometricBundle only_twist() const
    {
        GeometricBundle b = *this;
        b.x.assign(n, zero());
        return b;
    }
    GeometricBundle undecorated() const
    {
        GeometricBundle b = *this;
        b.x.assign(n, zero());
        b.y.assign(n, zero());
        b.torsion.clear();
        return b;
    }
};

/// Trace over F: a monomial carrying Phi^a, dPhi_i or RF_ij is replaced by the matching
/// trace symbol; a monomial with no F-endomorphism picks up dim F.
inline ParamPoly f_trace(const ParamPoly& p, const GeometricBundle& geo)
{
    const Alphabet& a = geo.alphabet;
    std::vector<std::uint32_t> fvars{a.index(names::phi)};
    std::map<std::uint32_t, std::string> single;
    for (int i = 1; i <= geo.n; ++i) {
        fvars.push_back(a.index(names::dphi(i)));
        single[fvars.back()] = names::trdphi(i);
    }
    for (int i = 1; i <= geo.n; ++i)
        for (int j = i + 1; j <= geo.n; ++j) {
            fvars.push_back(a.index(names::rf(i, j)));
            single[fvars.back()] = names::trrf(i, j);
        }
    const std::uint32_t phi = a.index(names::phi);
    ParamPoly out = geo.zero();
    for (const auto& [mono, coeff] : p.collect(fvars)) {
        ParamPoly factor;
        if (mono.empty())
            factor = geo.dim_f;
        else if (mono.size() == 1 && mono[0].first == phi && mono[0].second == 1)
            factor = geo.tr_phi;
        else if (mono.size() == 1 && mono[0].first == phi && mono[0].second == 2)
            factor = geo.tr_phi2;
        else if (mono.size() == 1 && mono[0].second == 1 && single.count(mono[0].first))
            factor = geo.var(single[mono[0].first]);
        else
            throw Error(ErrorCode::ValidationError, "F-trace of an unsupported endomorphism product");
        out += coeff * factor;
    }
    return out;
}

/// Average over the unit sphere S^{d-1} in the tangential covariables xi_1..xi_d, d = n-1.
inline ParamPoly sphere_average(const ParamPoly& p, const GeometricBundle& geo)
{
    const int d = geo.n - 1;
    std::vector<std::uint32_t> xs;
    for (int j = 1; j <= d; ++j)
        xs.push_back(geo.alphabet.index(names::xi(j)));
    ParamPoly out = geo.zero();
    for (const auto& [mono, coeff] : p.collect(xs)) {
        GaussRational num(1), den(1);
        int total = 0;
        bool odd = false;
        for (const auto& [v, e] : mono) {
            if (e % 2) {
                odd = true;
                break;
            }
            for (int k = static_cast<int>(e) - 1; k > 0; k -= 2)
                num *= GaussRational(k);
            total += static_cast<int>(e);
        }
        if (odd)
            continue;
        for (int k = 0; k < total / 2; ++k)
            den *= GaussRational(d + 2 * k);
        out += coeff * (num / den);
    }
    return out;
}

} // namespace nres
