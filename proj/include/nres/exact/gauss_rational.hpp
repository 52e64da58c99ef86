#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

#include "nres/error.hpp"

namespace nres {

/// Exact complex number re + im*i with arbitrary-precision rational parts.
class GaussRational {
public:
    GaussRational() = default;

    template <std::integral I>
    GaussRational(I v) : re_(static_cast<long>(v))
    {
    }

    GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }

    /// p/q as an exact real value; q must be nonzero.
    static GaussRational ratio(long p, long q)
    {
        if (q == 0)
            throw Error(ErrorCode::DivisionByZero, "ratio with zero denominator");
        mpq_class r(p, q);
        r.canonicalize();
        return GaussRational(r);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussRational conj() const { return GaussRational(re_, -im_); }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }

    GaussRational& operator+=(const GaussRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o)
    {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o)
    {
        if (o.is_zero())
            throw Error(ErrorCode::DivisionByZero, "division of " + str() + " by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class d = o.norm2();
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
        mpq_class m = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Total order used only for canonical containers (lexicographic on re, im).
    friend bool operator<(const GaussRational& a, const GaussRational& b)
    {
        if (a.re_ != b.re_)
            return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    GaussRational pow(int e) const
    {
        if (e < 0)
            return GaussRational(1) / pow(-e);
        GaussRational result(1), base(*this);
        while (e > 0) {
            if (e & 1)
                result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    std::complex<long double> to_complex() const
    {
        return {static_cast<long double>(re_.get_d()), static_cast<long double>(im_.get_d())};
    }

    /// Canonical rendering: "3/4", "-i", "1/2*i", "1/2-3/4*i".
    std::string str() const
    {
        const bool has_re = sgn(re_) != 0;
        const bool has_im = sgn(im_) != 0;
        if (!has_re && !has_im)
            return "0";
        std::string out;
        if (has_re)
            out = re_.get_str();
        if (has_im) {
            mpq_class mag = abs(im_);
            if (sgn(im_) < 0)
                out += "-";
            else if (has_re)
                out += "+";
            if (mag == 1)
                out += "i";
            else
                out += mag.get_str() + "*i";
        }
        return out;
    }

    /// Inverse of str(); also accepts surrounding blanks and a leading '+'.
    static GaussRational parse(std::string_view text)
    {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)))
                s.push_back(c);
        if (s.empty())
            throw Error(ErrorCode::ParseError, "empty number");
        GaussRational total;
        std::size_t pos = 0;
        while (pos < s.size()) {
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            }
            std::size_t end = pos;
            while (end < s.size() && s[end] != '+' && s[end] != '-')
                ++end;
            std::string token = s.substr(pos, end - pos);
            if (token.empty())
                throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
            bool imag = false;
            if (token.back() == 'i') {
                imag = true;
                token.pop_back();
                if (!token.empty() && token.back() == '*')
                    token.pop_back();
                if (token.empty())
                    token = "1";
            }
            mpq_class q;
            if (q.set_str(token, 10) != 0)
                throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
            if (mpz_sgn(q.get_den_mpz_t()) == 0)
                throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
            q.canonicalize();
            if (sign < 0)
                q = -q;
            total += imag ? GaussRational(0, q) : GaussRational(q);
            pos = end;
        }
        return total;
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussRational& g) { return os << g.str(); }

inline GaussRational factorial(int k)
{
    mpz_class f = 1;
    for (int j = 2; j <= k; ++j)
        f *= j;
    return GaussRational(mpq_class(f));
}

inline GaussRational binomial(int n, int k)
{
    if (k < 0 || k > n)
        return GaussRational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return GaussRational(mpq_class(r));
}

} // namespace nres
