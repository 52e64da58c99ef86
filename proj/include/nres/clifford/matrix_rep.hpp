#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nres/clifford/multivector.hpp"
#include "nres/error.hpp"
#include "nres/exact/gauss_rational.hpp"

namespace nres {

/// Dense square matrix over a commutative ring S. Used as a brute-force
/// oracle for the blade engine, so it stays deliberately naive.
template <class S>
class SpinorMatrix {
public:
    SpinorMatrix() = default;
    explicit SpinorMatrix(std::size_t size) : size_(size), entries_(size * size) {}

    static SpinorMatrix identity(std::size_t size)
    {
        SpinorMatrix m(size);
        for (std::size_t k = 0; k < size; ++k)
            m(k, k) = S(1);
        return m;
    }

    std::size_t size() const { return size_; }
    S& operator()(std::size_t r, std::size_t c) { return entries_[r * size_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return entries_[r * size_ + c]; }

    S trace() const
    {
        S t;
        for (std::size_t k = 0; k < size_; ++k)
            t += (*this)(k, k);
        return t;
    }

    SpinorMatrix& operator+=(const SpinorMatrix& o)
    {
        check_size(o);
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (!o.entries_[k].is_zero())
                entries_[k] += o.entries_[k];
        return *this;
    }

    SpinorMatrix& operator-=(const SpinorMatrix& o)
    {
        check_size(o);
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (!o.entries_[k].is_zero())
                entries_[k] -= o.entries_[k];
        return *this;
    }

    friend SpinorMatrix operator+(SpinorMatrix a, const SpinorMatrix& b) { return a += b; }
    friend SpinorMatrix operator-(SpinorMatrix a, const SpinorMatrix& b) { return a -= b; }

    friend SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b)
    {
        a.check_size(b);
        const std::size_t n = a.size_;
        SpinorMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const S& x = a(r, k);
                if (x.is_zero())
                    continue;
                for (std::size_t c = 0; c < n; ++c) {
                    const S& y = b(k, c);
                    if (!y.is_zero())
                        out(r, c) += x * y;
                }
            }
        return out;
    }

    friend SpinorMatrix operator*(const S& s, SpinorMatrix m)
    {
        for (auto& e : m.entries_)
            if (!e.is_zero())
                e = s * e;
        return m;
    }

    friend bool operator==(const SpinorMatrix& a, const SpinorMatrix& b)
    {
        return a.size_ == b.size_ && a.entries_ == b.entries_;
    }

    /// Kronecker product a (x) b.
    friend SpinorMatrix kron(const SpinorMatrix& a, const SpinorMatrix& b)
    {
        SpinorMatrix out(a.size_ * b.size_);
        for (std::size_t r1 = 0; r1 < a.size_; ++r1)
            for (std::size_t c1 = 0; c1 < a.size_; ++c1) {
                if (a(r1, c1).is_zero())
                    continue;
                for (std::size_t r2 = 0; r2 < b.size_; ++r2)
                    for (std::size_t c2 = 0; c2 < b.size_; ++c2)
                        if (!b(r2, c2).is_zero())
                            out(r1 * b.size_ + r2, c1 * b.size_ + c2) = a(r1, c1) * b(r2, c2);
            }
        return out;
    }

private:
    void check_size(const SpinorMatrix& o) const
    {
        if (size_ != o.size_)
            throw Error(ErrorCode::DimMismatch, "matrix sizes differ");
    }

    std::size_t size_ = 0;
    std::vector<S> entries_;
};

/// Gamma matrices for Cl(n), n even, built as i times Jordan-Wigner strings
/// of Pauli matrices: sigma3 x ... x sigma3 x sigma{1,2} x 1 x ... x 1.
inline std::vector<SpinorMatrix<GaussRational>> clifford_matrix_rep(int n)
{
    if (n < 2 || n > 12 || n % 2 != 0)
        throw Error(ErrorCode::UnsupportedDimension,
                    "matrix representation needs even n in [2,12], got " + std::to_string(n));
    using M = SpinorMatrix<GaussRational>;
    const GaussRational I = GaussRational::i();
    M id2 = M::identity(2), s1(2), s2(2), s3(2);
    s1(0, 1) = 1;
    s1(1, 0) = 1;
    s2(0, 1) = -I;
    s2(1, 0) = I;
    s3(0, 0) = 1;
    s3(1, 1) = -1;

    const int m = n / 2;
    std::vector<M> gens;
    for (int k = 0; k < m; ++k)
        for (const M* pauli : {&s1, &s2}) {
            M g = M::identity(1);
            for (int slot = 0; slot < m; ++slot)
                g = kron(g, slot < k ? s3 : slot == k ? *pauli : id2);
            gens.push_back(I * g);
        }
    return gens;
}

/// Caches blade matrices so multivectors can be mapped to matrices quickly.
class MatrixRepresentation {
public:
    explicit MatrixRepresentation(int n) : n_(n), gens_(clifford_matrix_rep(n)) {}

    int dim() const { return n_; }
    std::size_t spinor_dim() const { return gens_.front().size(); }
    const std::vector<SpinorMatrix<GaussRational>>& generators() const { return gens_; }

    /// Product of generators in increasing index order.
    const SpinorMatrix<GaussRational>& blade(std::uint32_t mask)
    {
        auto it = blades_.find(mask);
        if (it != blades_.end())
            return it->second;
        SpinorMatrix<GaussRational> m = SpinorMatrix<GaussRational>::identity(spinor_dim());
        for (int k = 0; k < n_; ++k)
            if (mask & (std::uint32_t{1} << k))
                m = m * gens_[k];
        return blades_.emplace(mask, std::move(m)).first->second;
    }

    template <class C>
    SpinorMatrix<C> represent(const Multivector<C>& a)
    {
        if (a.dim() != n_)
            throw Error(ErrorCode::DimMismatch, "multivector dimension differs from representation");
        const std::size_t size = spinor_dim();
        SpinorMatrix<C> out(size);
        for (const auto& [mask, coeff] : a.blades()) {
            const auto& b = blade(mask);
            for (std::size_t r = 0; r < size; ++r)
                for (std::size_t c = 0; c < size; ++c)
                    if (!b(r, c).is_zero())
                        out(r, c) += coeff * C(b(r, c));
        }
        return out;
    }

private:
    int n_;
    std::vector<SpinorMatrix<GaussRational>> gens_;
    std::map<std::uint32_t, SpinorMatrix<GaussRational>> blades_;
};

} // namespace nres
