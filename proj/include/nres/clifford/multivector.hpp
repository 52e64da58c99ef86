#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nres/error.hpp"
#include "nres/exact/param_poly.hpp"

namespace nres {

/// Sign of e_A * e_B in Cl(n) with e_k^2 = -1, for blade bitmasks A and B
/// (bit k-1 stands for e_k, blades written in increasing index order).
inline int blade_product_sign(std::uint32_t a, std::uint32_t b)
{
    int swaps = 0;
    for (std::uint32_t s = a >> 1; s != 0; s >>= 1)
        swaps += std::popcount(s & b);
    swaps += std::popcount(a & b); // every shared generator squares to -1
    return (swaps & 1) ? -1 : 1;
}

/// Element of Cl(n) with coefficients in a commutative ring C.
/// Generators are 1-based: generator(n, k) is c(e_k).
template <class C>
class Multivector {
public:
    using Blades = std::map<std::uint32_t, C>;

    Multivector() = default;
    explicit Multivector(int dim) : dim_(dim)
    {
        if (dim < 1 || dim > 30)
            throw Error(ErrorCode::UnsupportedDimension, "Clifford dimension " + std::to_string(dim));
    }

    static Multivector scalar(int dim, const C& c)
    {
        Multivector m(dim);
        m.add_term(0, c);
        return m;
    }

    static Multivector blade(int dim, std::uint32_t mask, const C& c)
    {
        Multivector m(dim);
        if (mask >> dim)
            throw Error(ErrorCode::IndexOutOfRange, "blade mask outside dimension");
        m.add_term(mask, c);
        return m;
    }

    static Multivector generator(int dim, int k, const C& c = C(1))
    {
        if (k < 1 || k > dim)
            throw Error(ErrorCode::IndexOutOfRange, "generator index " + std::to_string(k));
        return blade(dim, std::uint32_t{1} << (k - 1), c);
    }

    /// Sum_k v[k-1] c(e_k).
    static Multivector vector(int dim, const std::vector<C>& v)
    {
        if (static_cast<int>(v.size()) != dim)
            throw Error(ErrorCode::DimMismatch, "vector has wrong number of components");
        Multivector m(dim);
        for (int k = 1; k <= dim; ++k)
            m.add_term(std::uint32_t{1} << (k - 1), v[k - 1]);
        return m;
    }

    int dim() const { return dim_; }
    const Blades& blades() const { return blades_; }
    bool is_zero() const { return blades_.empty(); }

    C coefficient(std::uint32_t mask) const
    {
        auto it = blades_.find(mask);
        return it == blades_.end() ? C() : it->second;
    }

    C scalar_part() const { return coefficient(0); }

    /// Only grade-0 content present.
    bool is_scalar() const { return blades_.empty() || (blades_.size() == 1 && blades_.begin()->first == 0); }

    Multivector grade(int g) const
    {
        Multivector m(dim_);
        for (const auto& [mask, c] : blades_)
            if (std::popcount(mask) == g)
                m.blades_.emplace(mask, c);
        return m;
    }

    void add_term(std::uint32_t mask, const C& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = blades_.try_emplace(mask, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                blades_.erase(it);
        }
    }

    Multivector operator-() const
    {
        Multivector m(*this);
        for (auto& [mask, c] : m.blades_)
            c = -c;
        return m;
    }

    Multivector& operator+=(const Multivector& o)
    {
        check_dim(o);
        for (const auto& [mask, c] : o.blades_)
            add_term(mask, c);
        return *this;
    }

    Multivector& operator-=(const Multivector& o)
    {
        check_dim(o);
        for (const auto& [mask, c] : o.blades_)
            add_term(mask, -c);
        return *this;
    }

    /// Right multiplication by a ring element.
    Multivector& scale(const C& s)
    {
        if (s.is_zero()) {
            blades_.clear();
            return *this;
        }
        for (auto it = blades_.begin(); it != blades_.end();) {
            it->second = it->second * s;
            if (it->second.is_zero())
                it = blades_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(Multivector a, const C& s) { return a.scale(s); }
    friend Multivector operator*(const C& s, Multivector a) { return a.scale(s); }

    friend Multivector operator*(const Multivector& a, const Multivector& b)
    {
        a.check_dim(b);
        Multivector out(a.dim_);
        for (const auto& [ma, ca] : a.blades_)
            for (const auto& [mb, cb] : b.blades_) {
                C prod = ca * cb;
                if (blade_product_sign(ma, mb) < 0)
                    prod = -prod;
                out.add_term(ma ^ mb, prod);
            }
        return out;
    }

    friend bool operator==(const Multivector& a, const Multivector& b)
    {
        return a.dim_ == b.dim_ && a.blades_ == b.blades_;
    }

    /// Applies f to each coefficient, producing a multivector over another ring.
    template <class F>
    auto map(F&& f) const -> Multivector<decltype(f(std::declval<const C&>()))>
    {
        using D = decltype(f(std::declval<const C&>()));
        Multivector<D> out(dim_);
        for (const auto& [mask, c] : blades_)
            out.add_term(mask, f(c));
        return out;
    }

    std::string str() const
    {
        if (blades_.empty())
            return "0";
        std::string out;
        for (const auto& [mask, c] : blades_) {
            if (!out.empty())
                out += " + ";
            out += "(" + c.str() + ")";
            if (mask != 0)
                out += "*" + blade_name(mask);
        }
        return out;
    }

    static std::string blade_name(std::uint32_t mask)
    {
        std::string s = "e";
        bool first = true;
        for (int k = 1; mask != 0; ++k, mask >>= 1)
            if (mask & 1) {
                s += (first ? "" : "_") + std::to_string(k);
                first = false;
            }
        return s;
    }

private:
    void check_dim(const Multivector& o) const
    {
        if (dim_ != o.dim_)
            throw Error(ErrorCode::DimMismatch,
                        "Clifford dimensions " + std::to_string(dim_) + " and " + std::to_string(o.dim_));
    }

    int dim_ = 2;
    Blades blades_;
};

using CliffordElement = Multivector<ParamPoly>;

/// Trace in the irreducible spinor module: 2^{n/2} times the scalar coefficient.
template <class C>
C spinor_trace(const Multivector<C>& a)
{
    if (a.dim() % 2 != 0)
        throw Error(ErrorCode::OddDimension, "spinor trace needs even dimension, got " + std::to_string(a.dim()));
    C s = a.scalar_part();
    return s * C(GaussRational(2).pow(a.dim() / 2));
}

inline std::uint32_t triple_mask(int a, int b, int c)
{
    return (std::uint32_t{1} << (a - 1)) | (std::uint32_t{1} << (b - 1)) | (std::uint32_t{1} << (c - 1));
}

using Triple = std::array<int, 3>;
using TorsionComponents = std::map<Triple, ParamPoly>;

inline void validate_triple(int n, const Triple& t)
{
    for (int k : t)
        if (k < 1 || k > n)
            throw Error(ErrorCode::IndexOutOfRange,
                        "torsion index " + std::to_string(k) + " outside 1.." + std::to_string(n));
    if (!(t[0] < t[1] && t[1] < t[2]))
        throw Error(ErrorCode::NonIncreasingTriple, "torsion triple (" + std::to_string(t[0]) + "," +
                                                        std::to_string(t[1]) + "," + std::to_string(t[2]) +
                                                        ") is not strictly increasing");
}

/// Sum over a<b<c of T_abc c(e_a)c(e_b)c(e_c).
inline CliffordElement torsion_element(int n, const TorsionComponents& torsion)
{
    CliffordElement out(n);
    for (const auto& [t, v] : torsion) {
        validate_triple(n, t);
        out.add_term(triple_mask(t[0], t[1], t[2]), v);
    }
    return out;
}

} // namespace nres
