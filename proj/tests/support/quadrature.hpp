#pragma once

// Numeric cross-check for exact real-line integrals. Works entirely in
// long double and never touches the partial-fraction code path.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "nres/halfplane/rational.hpp"

namespace nres::oracle {

using Complex = std::complex<long double>;
using Assignment = std::map<std::string, GaussRational>;

inline Complex numeric_value(const HalfPlaneRational& f, const Assignment& at, long double xi)
{
    const auto& c = f.numerator().coeffs();
    Complex num = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        num = num * xi + it->eval(at).to_complex();
    const Complex I(0, 1);
    return num / (std::pow(Complex(xi) - I, f.pole_plus()) * std::pow(Complex(xi) + I, f.pole_minus()));
}

/// Integral over the real line via xi = tan(theta), so the interval is finite
/// and the integrand stays bounded for any f decaying like xi^-2.
inline Complex quadrature_integral(const HalfPlaneRational& f, const Assignment& at)
{
    using boost::math::quadrature::gauss_kronrod;
    const long double half_pi = boost::math::constants::half_pi<long double>();
    auto part = [&](bool imag) {
        auto g = [&](long double theta) -> long double {
            long double t = std::tan(theta);
            long double sec2 = 1 + t * t;
            Complex v = numeric_value(f, at, t) * sec2;
            return imag ? v.imag() : v.real();
        };
        return gauss_kronrod<long double, 61>::integrate(g, -half_pi, half_pi, 20, 1e-15L);
    };
    return {part(false), part(true)};
}

/// Exact coefficient-of-pi result as a complex number.
inline Complex exact_integral(const ParamPoly& coefficient_of_pi, const Assignment& at)
{
    return coefficient_of_pi.eval(at).to_complex() * boost::math::constants::pi<long double>();
}

} // namespace nres::oracle
