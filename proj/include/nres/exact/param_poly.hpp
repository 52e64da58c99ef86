#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nres/error.hpp"
#include "nres/exact/gauss_rational.hpp"

namespace nres {

namespace detail {
struct AlphabetData {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint32_t> index;
};
} // namespace detail

/// Immutable list of parameter names. Two alphabets are compatible only if
/// they are the same object, so a session declares its alphabet once.
class Alphabet {
public:
    Alphabet() : data_(std::make_shared<detail::AlphabetData>()) {}

    explicit Alphabet(std::vector<std::string> names)
    {
        auto d = std::make_shared<detail::AlphabetData>();
        for (auto& n : names) {
            if (d->index.count(n))
                throw Error(ErrorCode::ValidationError, "duplicate parameter name '" + n + "'");
            d->index.emplace(n, static_cast<std::uint32_t>(d->names.size()));
            d->names.push_back(std::move(n));
        }
        data_ = std::move(d);
    }

    std::size_t size() const { return data_->names.size(); }
    const std::string& name(std::uint32_t i) const { return data_->names.at(i); }
    const std::vector<std::string>& names() const { return data_->names; }

    std::optional<std::uint32_t> find(std::string_view name) const
    {
        auto it = data_->index.find(std::string(name));
        if (it == data_->index.end())
            return std::nullopt;
        return it->second;
    }

    std::uint32_t index(std::string_view name) const
    {
        auto i = find(name);
        if (!i)
            throw Error(ErrorCode::UnboundParameter, "parameter '" + std::string(name) + "' is not declared");
        return *i;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.data_ == b.data_; }

    const detail::AlphabetData* raw() const { return data_.get(); }

private:
    friend class ParamPoly;
    explicit Alphabet(std::shared_ptr<const detail::AlphabetData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::AlphabetData> data_;
};

/// Sparse exponent vector: (parameter index, exponent > 0), sorted by index.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b)
{
    Monomial out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first)
            out.push_back(*ia++);
        else if (ib->first < ia->first)
            out.push_back(*ib++);
        else {
            out.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    out.insert(out.end(), ia, a.end());
    out.insert(out.end(), ib, b.end());
    return out;
}

/// Polynomial over GaussRational in the parameters of an Alphabet.
/// A polynomial without an alphabet is a pure constant and combines with any alphabet.
class ParamPoly {
public:
    using Terms = std::map<Monomial, GaussRational>;

    ParamPoly() = default;

    template <std::integral I>
    ParamPoly(I v) : ParamPoly(GaussRational(v))
    {
    }

    ParamPoly(const GaussRational& c)
    {
        if (!c.is_zero())
            terms_.emplace(Monomial{}, c);
    }

    ParamPoly(const Alphabet& alphabet, const GaussRational& c) : alpha_(alphabet.data_)
    {
        if (!c.is_zero())
            terms_.emplace(Monomial{}, c);
    }

    static ParamPoly variable(const Alphabet& alphabet, std::string_view name, std::uint32_t power = 1)
    {
        ParamPoly p;
        p.alpha_ = alphabet.data_;
        Monomial m;
        if (power > 0)
            m.emplace_back(alphabet.index(name), power);
        p.terms_.emplace(std::move(m), GaussRational(1));
        return p;
    }

    static ParamPoly from_terms(const Alphabet& alphabet, Terms terms)
    {
        ParamPoly p;
        p.alpha_ = alphabet.data_;
        for (auto& [m, c] : terms)
            if (!c.is_zero())
                p.terms_.emplace(m, c);
        return p;
    }

    bool has_alphabet() const { return alpha_ != nullptr; }
    std::optional<Alphabet> alphabet() const
    {
        if (!alpha_)
            return std::nullopt;
        return Alphabet(alpha_);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    GaussRational constant_term() const
    {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? GaussRational(0) : it->second;
    }

    GaussRational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? GaussRational(0) : it->second;
    }

    ParamPoly operator-() const
    {
        ParamPoly r(*this);
        for (auto& [m, c] : r.terms_)
            c = -c;
        return r;
    }

    ParamPoly& operator+=(const ParamPoly& o)
    {
        adopt(o);
        for (const auto& [m, c] : o.terms_)
            accumulate(terms_, m, c);
        return *this;
    }

    ParamPoly& operator-=(const ParamPoly& o)
    {
        adopt(o);
        for (const auto& [m, c] : o.terms_)
            accumulate(terms_, m, -c);
        return *this;
    }

    ParamPoly& operator*=(const GaussRational& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        if (s.is_one())
            return *this;
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    ParamPoly& operator*=(const ParamPoly& o)
    {
        adopt(o);
        if (o.is_constant()) {
            return *this *= o.constant_term();
        }
        if (is_constant()) {
            GaussRational s = constant_term();
            Terms t = o.terms_;
            terms_ = std::move(t);
            return *this *= s;
        }
        Terms out;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                accumulate(out, monomial_product(ma, mb), ca * cb);
        terms_ = std::move(out);
        return *this;
    }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(ParamPoly a, const ParamPoly& b) { return a *= b; }
    friend ParamPoly operator*(ParamPoly a, const GaussRational& s) { return a *= s; }
    friend ParamPoly operator*(const GaussRational& s, ParamPoly a) { return a *= s; }

    /// Structural equality; alphabets must be compatible.
    friend bool operator==(const ParamPoly& a, const ParamPoly& b)
    {
        if (a.alpha_ && b.alpha_ && a.alpha_ != b.alpha_)
            throw Error(ErrorCode::AlphabetMismatch, "comparing polynomials over different alphabets");
        return a.terms_ == b.terms_;
    }

    ParamPoly pow(unsigned e) const
    {
        ParamPoly r(alpha_, GaussRational(1));
        for (unsigned k = 0; k < e; ++k)
            r *= *this;
        return r;
    }

    /// Substitution of every occurring parameter; missing ones raise UnboundParameter.
    GaussRational eval(const std::map<std::string, GaussRational>& assignment) const
    {
        GaussRational total;
        for (const auto& [m, c] : terms_) {
            GaussRational t = c;
            for (const auto& [v, e] : m) {
                const std::string& nm = alpha_->names[v];
                auto it = assignment.find(nm);
                if (it == assignment.end())
                    throw Error(ErrorCode::UnboundParameter, "no value for parameter '" + nm + "'");
                t *= it->second.pow(static_cast<int>(e));
            }
            total += t;
        }
        return total;
    }

    /// Partial substitution by polynomials; unlisted parameters stay symbolic.
    ParamPoly substitute(const std::map<std::string, ParamPoly>& values) const
    {
        if (!alpha_)
            return *this;
        std::vector<const ParamPoly*> by_index(alpha_->names.size(), nullptr);
        for (const auto& [name, p] : values) {
            auto it = alpha_->index.find(name);
            if (it != alpha_->index.end())
                by_index[it->second] = &p;
        }
        ParamPoly out(alpha_, GaussRational(0));
        for (const auto& [m, c] : terms_) {
            ParamPoly t(alpha_, c);
            Monomial kept;
            for (const auto& [v, e] : m) {
                if (by_index[v])
                    t *= by_index[v]->pow(e);
                else
                    kept.emplace_back(v, e);
            }
            if (!kept.empty()) {
                ParamPoly k;
                k.alpha_ = alpha_;
                k.terms_.emplace(std::move(kept), GaussRational(1));
                t *= k;
            }
            out += t;
        }
        return out;
    }

    /// Splits the polynomial by its exponents in `vars`: key = part in vars, value = cofactor.
    std::map<Monomial, ParamPoly> collect(const std::vector<std::uint32_t>& vars) const
    {
        std::map<Monomial, ParamPoly> out;
        for (const auto& [m, c] : terms_) {
            Monomial key, rest;
            for (const auto& ve : m) {
                if (std::find(vars.begin(), vars.end(), ve.first) != vars.end())
                    key.push_back(ve);
                else
                    rest.push_back(ve);
            }
            ParamPoly& slot = out[key];
            slot.alpha_ = alpha_;
            accumulate(slot.terms_, rest, c);
        }
        for (auto it = out.begin(); it != out.end();) {
            if (it->second.is_zero())
                it = out.erase(it);
            else
                ++it;
        }
        return out;
    }

    std::uint32_t degree_in(std::uint32_t var) const
    {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m)
                if (v == var)
                    d = std::max(d, e);
        return d;
    }

    /// Set of parameter indices that occur.
    std::vector<std::uint32_t> variables() const
    {
        std::vector<std::uint32_t> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m)
                vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    /// Partial derivative in one parameter.
    ParamPoly derivative(std::uint32_t var) const
    {
        ParamPoly out;
        out.alpha_ = alpha_;
        for (const auto& [m, c] : terms_) {
            Monomial d;
            GaussRational k;
            for (const auto& [v, e] : m) {
                if (v == var) {
                    k = GaussRational(static_cast<long>(e));
                    if (e > 1)
                        d.emplace_back(v, e - 1);
                } else
                    d.emplace_back(v, e);
            }
            if (!k.is_zero())
                accumulate(out.terms_, d, c * k);
        }
        return out;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string mono;
            for (const auto& [v, e] : m) {
                if (!mono.empty())
                    mono += "*";
                mono += alpha_->names[v];
                if (e > 1)
                    mono += "^" + std::to_string(e);
            }
            std::string coef;
            bool negative = false;
            if (c.is_real()) {
                negative = sgn(c.re()) < 0;
                mpq_class mag = abs(c.re());
                if (!(mag == 1 && !mono.empty()))
                    coef = mag.get_str();
            } else if (sgn(c.re()) == 0) {
                negative = sgn(c.im()) < 0;
                mpq_class mag = abs(c.im());
                coef = mag == 1 ? "i" : mag.get_str() + "*i";
            } else {
                coef = "(" + c.str() + ")";
            }
            std::string term = coef;
            if (!mono.empty())
                term += (term.empty() ? "" : "*") + mono;
            if (first)
                out += negative ? "-" + term : term;
            else
                out += (negative ? "-" : "+") + term;
            first = false;
        }
        return out;
    }

private:
    ParamPoly(std::shared_ptr<const detail::AlphabetData> a, const GaussRational& c) : alpha_(std::move(a))
    {
        if (!c.is_zero())
            terms_.emplace(Monomial{}, c);
    }

    static void accumulate(Terms& t, const Monomial& m, const GaussRational& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = t.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                t.erase(it);
        }
    }

    void adopt(const ParamPoly& o)
    {
        if (!o.alpha_)
            return;
        if (!alpha_)
            alpha_ = o.alpha_;
        else if (alpha_ != o.alpha_)
            throw Error(ErrorCode::AlphabetMismatch, "polynomials over different alphabets");
    }

    std::shared_ptr<const detail::AlphabetData> alpha_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.str(); }

} // namespace nres
