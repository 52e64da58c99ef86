#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nres/error.hpp"
#include "nres/exact/gauss_rational.hpp"
#include "nres/exact/param_poly.hpp"

namespace nres {

/// Polynomial in the normal covariable xi with parameter-polynomial coefficients.
/// coeffs()[k] multiplies xi^k; trailing zeros are trimmed.
class XiPoly {
public:
    XiPoly() = default;
    XiPoly(ParamPoly c) : coeffs_{std::move(c)} { trim(); }
    explicit XiPoly(std::vector<ParamPoly> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static XiPoly xi(int power = 1)
    {
        std::vector<ParamPoly> c(power + 1);
        c[power] = ParamPoly(1);
        return XiPoly(std::move(c));
    }

    /// (xi - root)^e with root a Gaussian rational.
    static XiPoly linear_power(const GaussRational& root, int e)
    {
        XiPoly out(ParamPoly(1));
        const XiPoly lin(std::vector<ParamPoly>{ParamPoly(-root), ParamPoly(1)});
        for (int k = 0; k < e; ++k)
            out *= lin;
        return out;
    }

    const std::vector<ParamPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    ParamPoly coefficient(int k) const
    {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : ParamPoly();
    }

    XiPoly operator-() const
    {
        XiPoly r(*this);
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    XiPoly& operator+=(const XiPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }

    XiPoly& operator-=(const XiPoly& o) { return *this += -o; }

    XiPoly& operator*=(const XiPoly& o)
    {
        if (is_zero() || o.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        std::vector<ParamPoly> out(coeffs_.size() + o.coeffs_.size() - 1);
        for (std::size_t a = 0; a < coeffs_.size(); ++a) {
            if (coeffs_[a].is_zero())
                continue;
            for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
                if (!o.coeffs_[b].is_zero())
                    out[a + b] += coeffs_[a] * o.coeffs_[b];
        }
        coeffs_ = std::move(out);
        trim();
        return *this;
    }

    XiPoly& scale(const ParamPoly& s)
    {
        for (auto& c : coeffs_)
            c *= s;
        trim();
        return *this;
    }

    friend XiPoly operator+(XiPoly a, const XiPoly& b) { return a += b; }
    friend XiPoly operator-(XiPoly a, const XiPoly& b) { return a -= b; }
    friend XiPoly operator*(XiPoly a, const XiPoly& b) { return a *= b; }
    friend bool operator==(const XiPoly& a, const XiPoly& b) { return a.coeffs_ == b.coeffs_; }

    XiPoly derivative() const
    {
        if (coeffs_.size() <= 1)
            return XiPoly();
        std::vector<ParamPoly> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * GaussRational(static_cast<long>(k));
        return XiPoly(std::move(d));
    }

    ParamPoly eval(const GaussRational& at) const
    {
        ParamPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= at;
            acc += *it;
        }
        return acc;
    }

    /// Coefficients of N(root + t) as a polynomial in t.
    XiPoly shifted(const GaussRational& root) const
    {
        std::vector<ParamPoly> out(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero())
                continue;
            // xi^k = sum_j C(k,j) root^{k-j} t^j
            for (std::size_t j = 0; j <= k; ++j)
                out[j] += coeffs_[k] * (binomial(static_cast<int>(k), static_cast<int>(j)) *
                                        root.pow(static_cast<int>(k - j)));
        }
        return XiPoly(std::move(out));
    }

    /// Quotient by (xi - root), assuming root is a root (remainder is discarded).
    XiPoly divide_linear(const GaussRational& root) const
    {
        if (coeffs_.size() <= 1)
            return XiPoly();
        std::vector<ParamPoly> q(coeffs_.size() - 1);
        ParamPoly carry;
        for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) {
            carry = coeffs_[k] + carry * root;
            q[k - 1] = carry;
        }
        return XiPoly(std::move(q));
    }

    template <class F>
    XiPoly map(F&& f) const
    {
        std::vector<ParamPoly> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_)
            out.push_back(f(c));
        return XiPoly(std::move(out));
    }

    std::string str() const
    {
        if (coeffs_.empty())
            return "0";
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            if (coeffs_[k].is_zero())
                continue;
            if (!out.empty())
                out += " + ";
            out += "(" + coeffs_[k].str() + ")";
            if (k == 1)
                out += "*xi";
            else if (k > 1)
                out += "*xi^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<ParamPoly> coeffs_;
};

/// N(xi) / ((xi - i)^a (xi + i)^b), kept in lowest terms at the two poles.
class HalfPlaneRational {
public:
    HalfPlaneRational() = default;
    HalfPlaneRational(XiPoly num, int pole_plus = 0, int pole_minus = 0)
        : num_(std::move(num)), a_(pole_plus), b_(pole_minus)
    {
        if (a_ < 0 || b_ < 0)
            throw Error(ErrorCode::NonCanonicalInput, "negative pole order");
        canonicalize();
    }
    HalfPlaneRational(const ParamPoly& c) : HalfPlaneRational(XiPoly(c)) {}
    HalfPlaneRational(const GaussRational& c) : HalfPlaneRational(XiPoly(ParamPoly(c))) {}

    /// Builds without cancelling common factors; used to exercise input validation.
    static HalfPlaneRational raw(XiPoly num, int pole_plus, int pole_minus)
    {
        HalfPlaneRational f;
        f.num_ = std::move(num);
        f.a_ = pole_plus;
        f.b_ = pole_minus;
        return f;
    }

    /// (1 + xi^2)^k for any integer k.
    static HalfPlaneRational q_power(int k)
    {
        if (k >= 0)
            return HalfPlaneRational(XiPoly::linear_power(GaussRational::i(), k) *
                                     XiPoly::linear_power(-GaussRational::i(), k));
        return HalfPlaneRational(XiPoly(ParamPoly(1)), -k, -k);
    }

    const XiPoly& numerator() const { return num_; }
    int pole_plus() const { return a_; }
    int pole_minus() const { return b_; }
    bool is_zero() const { return num_.is_zero(); }

    bool is_canonical() const
    {
        if (a_ < 0 || b_ < 0)
            return false;
        if (is_zero())
            return a_ == 0 && b_ == 0;
        if (a_ > 0 && num_.eval(GaussRational::i()).is_zero())
            return false;
        if (b_ > 0 && num_.eval(-GaussRational::i()).is_zero())
            return false;
        return true;
    }

    HalfPlaneRational operator-() const { return raw(-num_, a_, b_); }

    HalfPlaneRational& operator+=(const HalfPlaneRational& o)
    {
        const int a = std::max(a_, o.a_), b = std::max(b_, o.b_);
        XiPoly lhs = num_ * lift(a - a_, b - b_);
        XiPoly rhs = o.num_ * lift(a - o.a_, b - o.b_);
        *this = HalfPlaneRational(lhs + rhs, a, b);
        return *this;
    }
    HalfPlaneRational& operator-=(const HalfPlaneRational& o) { return *this += -o; }

    HalfPlaneRational& operator*=(const HalfPlaneRational& o)
    {
        *this = HalfPlaneRational(num_ * o.num_, a_ + o.a_, b_ + o.b_);
        return *this;
    }

    HalfPlaneRational& scale(const ParamPoly& s)
    {
        num_.scale(s);
        canonicalize();
        return *this;
    }

    friend HalfPlaneRational operator+(HalfPlaneRational x, const HalfPlaneRational& y) { return x += y; }
    friend HalfPlaneRational operator-(HalfPlaneRational x, const HalfPlaneRational& y) { return x -= y; }
    friend HalfPlaneRational operator*(HalfPlaneRational x, const HalfPlaneRational& y) { return x *= y; }
    friend HalfPlaneRational operator*(const ParamPoly& s, HalfPlaneRational x) { return x.scale(s); }
    friend HalfPlaneRational operator*(HalfPlaneRational x, const ParamPoly& s) { return x.scale(s); }

    friend bool operator==(const HalfPlaneRational& x, const HalfPlaneRational& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.num_ == y.num_;
    }

    /// d/dxi.
    HalfPlaneRational derivative() const
    {
        if (is_zero())
            return {};
        const XiPoly xm = XiPoly::linear_power(GaussRational::i(), 1);
        const XiPoly xp = XiPoly::linear_power(-GaussRational::i(), 1);
        XiPoly n = num_.derivative() * xm * xp;
        n -= (num_ * xp).scale(ParamPoly(GaussRational(a_)));
        n -= (num_ * xm).scale(ParamPoly(GaussRational(b_)));
        return HalfPlaneRational(std::move(n), a_ + 1, b_ + 1);
    }

    ParamPoly eval(const GaussRational& at) const
    {
        const GaussRational I = GaussRational::i();
        GaussRational den = (at - I).pow(a_) * (at + I).pow(b_);
        if (den.is_zero())
            throw Error(ErrorCode::DivisionByZero, "evaluation at a pole");
        return num_.eval(at) * (GaussRational(1) / den);
    }

    template <class F>
    HalfPlaneRational map_coefficients(F&& f) const
    {
        return HalfPlaneRational(num_.map(f), a_, b_);
    }

    std::string str() const
    {
        std::string out = "[" + num_.str() + "]";
        if (a_ > 0)
            out += "/(xi-i)^" + std::to_string(a_);
        if (b_ > 0)
            out += "/(xi+i)^" + std::to_string(b_);
        return out;
    }

private:
    static XiPoly lift(int da, int db)
    {
        return XiPoly::linear_power(GaussRational::i(), da) * XiPoly::linear_power(-GaussRational::i(), db);
    }

    void canonicalize()
    {
        if (num_.is_zero()) {
            a_ = b_ = 0;
            return;
        }
        const GaussRational I = GaussRational::i();
        while (a_ > 0 && num_.eval(I).is_zero()) {
            num_ = num_.divide_linear(I);
            --a_;
        }
        while (b_ > 0 && num_.eval(-I).is_zero()) {
            num_ = num_.divide_linear(-I);
            --b_;
        }
    }

    XiPoly num_;
    int a_ = 0;
    int b_ = 0;
};

/// f = polynomial + sum_k plus[k-1]/(xi-i)^k + sum_k minus[k-1]/(xi+i)^k.
struct PartialFractions {
    XiPoly polynomial;
    std::vector<ParamPoly> plus;
    std::vector<ParamPoly> minus;

    HalfPlaneRational recombine() const
    {
        HalfPlaneRational out(polynomial);
        for (std::size_t k = 0; k < plus.size(); ++k)
            out += HalfPlaneRational(XiPoly(plus[k]), static_cast<int>(k) + 1, 0);
        for (std::size_t k = 0; k < minus.size(); ++k)
            out += HalfPlaneRational(XiPoly(minus[k]), 0, static_cast<int>(k) + 1);
        return out;
    }
};

namespace detail {

/// Laurent coefficients at xi = root of N(xi) / ((xi-root)^p (xi-other)^q):
/// returns c[k-1] for the (xi-root)^{-k} terms, k = 1..p.
inline std::vector<ParamPoly> principal_part(const XiPoly& num, const GaussRational& root, int p,
                                             const GaussRational& other, int q)
{
    std::vector<ParamPoly> out(p);
    if (p == 0)
        return out;
    const XiPoly shifted = num.shifted(root); // N(root + t)
    // (t + d)^{-q} with d = root - other: d^{-q} sum_m C(q+m-1, m) (-t/d)^m
    const GaussRational d = root - other;
    std::vector<GaussRational> series(p);
    const GaussRational base = GaussRational(1) / d.pow(q);
    for (int m = 0; m < p; ++m) {
        GaussRational s = binomial(q + m - 1, m) * base / d.pow(m);
        series[m] = (m % 2) ? -s : s;
    }
    if (q == 0) {
        for (int m = 1; m < p; ++m)
            series[m] = GaussRational();
        series[0] = GaussRational(1);
    }
    // coefficient of t^{p-k} in N(root+t) * series
    for (int k = 1; k <= p; ++k) {
        ParamPoly acc;
        const int want = p - k;
        for (int j = 0; j <= want; ++j)
            acc += shifted.coefficient(j) * series[want - j];
        out[k - 1] = acc;
    }
    return out;
}

/// Quotient of N by the monic polynomial D.
inline XiPoly poly_quotient(XiPoly num, const XiPoly& den)
{
    const int dd = den.degree();
    if (num.degree() < dd)
        return XiPoly();
    std::vector<ParamPoly> q(num.degree() - dd + 1);
    std::vector<ParamPoly> r = num.coeffs();
    for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
        ParamPoly lead = r[k];
        if (lead.is_zero())
            continue;
        q[k - dd] = lead;
        for (int j = 0; j <= dd; ++j)
            r[k - dd + j] -= lead * den.coefficient(j);
    }
    return XiPoly(std::move(q));
}

} // namespace detail

inline PartialFractions partial_fractions(const HalfPlaneRational& f)
{
    if (!f.is_canonical())
        throw Error(ErrorCode::NonCanonicalInput, "partial fractions need a canonical rational " + f.str());
    const GaussRational I = GaussRational::i();
    PartialFractions pf;
    const XiPoly den = XiPoly::linear_power(I, f.pole_plus()) * XiPoly::linear_power(-I, f.pole_minus());
    pf.polynomial = detail::poly_quotient(f.numerator(), den);
    pf.plus = detail::principal_part(f.numerator(), I, f.pole_plus(), -I, f.pole_minus());
    pf.minus = detail::principal_part(f.numerator(), -I, f.pole_minus(), I, f.pole_plus());
    return pf;
}

/// Part of f with poles at xi = +i only (the polynomial part is dropped).
inline HalfPlaneRational pi_plus(const HalfPlaneRational& f)
{
    PartialFractions pf = partial_fractions(f);
    HalfPlaneRational out;
    for (std::size_t k = 0; k < pf.plus.size(); ++k)
        out += HalfPlaneRational(XiPoly(pf.plus[k]), static_cast<int>(k) + 1, 0);
    return out;
}

inline ParamPoly residue_at_i(const HalfPlaneRational& f)
{
    PartialFractions pf = partial_fractions(f);
    return pf.plus.empty() ? ParamPoly() : pf.plus.front();
}

/// i times the residue at +i.
inline ParamPoly pi_prime(const HalfPlaneRational& f) { return residue_at_i(f) * GaussRational::i(); }

inline HalfPlaneRational deriv_xi(const HalfPlaneRational& f, int k)
{
    HalfPlaneRational out = f;
    for (int j = 0; j < k; ++j)
        out = out.derivative();
    return out;
}

/// k-th derivative of xi^m / (xi+i)^p at xi = i, by expanding
/// xi^m = sum_j C(m,j) (-i)^{m-j} (xi+i)^j and differentiating each power.
inline GaussRational deriv_at_i(int m, int p, int k)
{
    const GaussRational I = GaussRational::i();
    GaussRational total;
    for (int j = 0; j <= m; ++j) {
        const int e = j - p;
        GaussRational falling(1);
        for (int s = 0; s < k; ++s)
            falling *= GaussRational(e - s);
        if (falling.is_zero())
            continue;
        total += binomial(m, j) * (-I).pow(m - j) * falling * (GaussRational(2) * I).pow(e - k);
    }
    return total;
}

/// Integral over the real line, returned as the coefficient of pi.
inline ParamPoly real_line_integral(const HalfPlaneRational& f)
{
    if (f.is_zero())
        return {};
    if (f.numerator().degree() > f.pole_plus() + f.pole_minus() - 2)
        throw Error(ErrorCode::NotIntegrable, "integrand does not decay fast enough: " + f.str());
    // 2 pi i Res_{+i}
    return residue_at_i(f) * (GaussRational(2) * GaussRational::i());
}

} // namespace nres
