#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nres/exact/param_poly.hpp"
#include "nres/halfplane/rational.hpp"

namespace nres {

/// Fixed data every symbol in one session shares: the tangential covariables
/// xi_1..xi_{n-1} live in the parameter alphabet and rho2 = Sum_j xi_j^2.
struct SymbolContext {
    int n = 4;
    Alphabet alphabet;
    std::vector<std::uint32_t> tangential;
    ParamPoly rho2;

    static std::shared_ptr<const SymbolContext> make(int n, const Alphabet& a)
    {
        auto ctx = std::make_shared<SymbolContext>();
        ctx->n = n;
        ctx->alphabet = a;
        ctx->rho2 = ParamPoly(a, GaussRational());
        for (int j = 1; j < n; ++j) {
            const auto v = a.index("xi" + std::to_string(j));
            ctx->tangential.push_back(v);
            ctx->rho2 += ParamPoly::variable(a, "xi" + std::to_string(j), 2);
        }
        return ctx;
    }
};

/// Sum_k (a_k + b_k xi_n) Q^k with Q = |xi|^2 and k any integer.
/// Reducing xi_n^2 = Q - rho2 makes the representation unique, so structural
/// equality is equality of functions.
class SymbolFunction {
public:
    using Ctx = std::shared_ptr<const SymbolContext>;
    using Terms = std::map<int, std::pair<ParamPoly, ParamPoly>>;

    SymbolFunction() = default;
    template <std::integral I>
    SymbolFunction(I v) : SymbolFunction(ParamPoly(v))
    {
    }
    SymbolFunction(const GaussRational& c) : SymbolFunction(ParamPoly(c)) {}
    SymbolFunction(const ParamPoly& c)
    {
        if (!c.is_zero())
            terms_[0] = {c, ParamPoly()};
    }

    /// a Q^k.
    static SymbolFunction q_power(const Ctx& ctx, int k, const ParamPoly& a = ParamPoly(1))
    {
        SymbolFunction f;
        f.ctx_ = ctx;
        if (!a.is_zero())
            f.terms_[k] = {a, ParamPoly()};
        return f;
    }
    /// b xi_n.
    static SymbolFunction xi_n(const Ctx& ctx, const ParamPoly& b = ParamPoly(1))
    {
        SymbolFunction f;
        f.ctx_ = ctx;
        if (!b.is_zero())
            f.terms_[0] = {ParamPoly(), b};
        return f;
    }

    const Terms& terms() const { return terms_; }
    const Ctx& context() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }

    SymbolFunction operator-() const
    {
        SymbolFunction f(*this);
        for (auto& [k, ab] : f.terms_) {
            ab.first = -ab.first;
            ab.second = -ab.second;
        }
        return f;
    }

    SymbolFunction& operator+=(const SymbolFunction& o)
    {
        adopt(o);
        for (const auto& [k, ab] : o.terms_)
            add(k, ab.first, ab.second);
        return *this;
    }
    SymbolFunction& operator-=(const SymbolFunction& o) { return *this += -o; }

    SymbolFunction& operator*=(const SymbolFunction& o)
    {
        adopt(o);
        Terms prod;
        SymbolFunction out;
        out.ctx_ = ctx_;
        for (const auto& [k, ab] : terms_)
            for (const auto& [l, cd] : o.terms_) {
                const auto& [a, b] = ab;
                const auto& [c, d] = cd;
                ParamPoly bd = b * d;
                out.add(k + l, a * c, a * d + b * c);
                if (!bd.is_zero()) {
                    out.add(k + l + 1, bd, ParamPoly());
                    out.add(k + l, -(bd * rho2()), ParamPoly());
                }
            }
        *this = std::move(out);
        return *this;
    }

    SymbolFunction& scale(const ParamPoly& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second.first *= s;
            it->second.second *= s;
            if (it->second.first.is_zero() && it->second.second.is_zero())
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    friend SymbolFunction operator+(SymbolFunction a, const SymbolFunction& b) { return a += b; }
    friend SymbolFunction operator-(SymbolFunction a, const SymbolFunction& b) { return a -= b; }
    friend SymbolFunction operator*(SymbolFunction a, const SymbolFunction& b) { return a *= b; }
    friend bool operator==(const SymbolFunction& a, const SymbolFunction& b) { return a.terms_ == b.terms_; }

    /// d/dxi_n.
    SymbolFunction d_xi_n() const
    {
        SymbolFunction out;
        out.ctx_ = ctx_;
        for (const auto& [k, ab] : terms_) {
            const auto& [a, b] = ab;
            out.add(k, b, ParamPoly());
            if (k != 0) {
                // k (a + b xi) 2 xi Q^{k-1} = 2k (a xi + b (Q - rho2)) Q^{k-1}
                const GaussRational two_k(2 * k);
                out.add(k - 1, -(b * rho2()) * two_k, a * two_k);
                out.add(k, b * two_k, ParamPoly());
            }
        }
        return out;
    }

    /// d/dxi_j for a tangential covariable, j in 1..n-1.
    SymbolFunction d_xi_tangential(int j) const
    {
        const std::uint32_t v = ctx_->tangential.at(j - 1);
        const ParamPoly xj = ParamPoly::variable(ctx_->alphabet, ctx_->alphabet.name(v));
        SymbolFunction out;
        out.ctx_ = ctx_;
        for (const auto& [k, ab] : terms_) {
            const auto& [a, b] = ab;
            out.add(k, a.derivative(v), b.derivative(v));
            if (k != 0) {
                const GaussRational two_k(2 * k);
                out.add(k - 1, a * xj * two_k, b * xj * two_k);
            }
        }
        return out;
    }

    /// Inverse of a unit: a nonzero constant times a power of Q.
    SymbolFunction inverse() const
    {
        if (terms_.size() != 1 || !terms_.begin()->second.second.is_zero() ||
            !terms_.begin()->second.first.is_constant() || terms_.begin()->second.first.is_zero())
            throw Error(ErrorCode::NotElliptic, "leading symbol is not an invertible multiple of a power of |xi|^2");
        const auto& [k, ab] = *terms_.begin();
        return q_power(ctx_, -k, ParamPoly(GaussRational(1) / ab.first.constant_term()));
    }

    /// Degree of homogeneity in (xi', xi_n), or nullopt if mixed.
    std::optional<int> homogeneity() const
    {
        std::optional<int> deg;
        bool ok = true;
        auto check = [&](const ParamPoly& p, int base) {
            for (const auto& [m, c] : p.terms()) {
                int d = base;
                for (const auto& [v, e] : m)
                    if (std::find(ctx_->tangential.begin(), ctx_->tangential.end(), v) != ctx_->tangential.end())
                        d += static_cast<int>(e);
                if (deg && *deg != d)
                    ok = false;
                deg = d;
            }
        };
        for (const auto& [k, ab] : terms_) {
            check(ab.first, 2 * k);
            check(ab.second, 2 * k + 1);
        }
        if (!ok)
            return std::nullopt;
        return deg ? deg : std::optional<int>(0);
    }

    /// Restriction to |xi'| = 1, as a rational function of xi_n. The tangential
    /// covariables stay in the coefficients until the sphere average.
    HalfPlaneRational restrict_to_sphere() const
    {
        HalfPlaneRational out;
        for (const auto& [k, ab] : terms_) {
            XiPoly num(std::vector<ParamPoly>{ab.first, ab.second});
            out += HalfPlaneRational(num) * HalfPlaneRational::q_power(k);
        }
        return out;
    }

    template <class F>
    SymbolFunction map_coefficients(F&& f) const
    {
        SymbolFunction out;
        out.ctx_ = ctx_;
        for (const auto& [k, ab] : terms_)
            out.add(k, f(ab.first), f(ab.second));
        return out;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [k, ab] : terms_) {
            if (!out.empty())
                out += " + ";
            std::string inner;
            if (!ab.first.is_zero())
                inner = ab.first.str();
            if (!ab.second.is_zero())
                inner += (inner.empty() ? "" : " + ") + std::string("(") + ab.second.str() + ")*xi_n";
            out += "(" + inner + ")";
            if (k != 0)
                out += "*Q^" + std::to_string(k);
        }
        return out;
    }

private:
    const ParamPoly& rho2() const
    {
        if (!ctx_)
            throw Error(ErrorCode::ValidationError, "symbol product needs a symbol context");
        return ctx_->rho2;
    }

    void adopt(const SymbolFunction& o)
    {
        if (!ctx_)
            ctx_ = o.ctx_;
    }

    void add(int k, const ParamPoly& a, const ParamPoly& b)
    {
        if (a.is_zero() && b.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, a, b);
        if (!inserted) {
            it->second.first += a;
            it->second.second += b;
            if (it->second.first.is_zero() && it->second.second.is_zero())
                terms_.erase(it);
        }
    }

    Ctx ctx_;
    Terms terms_;
};

} // namespace nres
