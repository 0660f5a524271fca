#include "bergman/rational.hpp"

#include "bergman/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace bergman {

namespace {

std::int64_t checked(__int128 v)
{
    if (v > INT64_MAX || v < -INT64_MAX) {
        throw CalculusError("rational coefficient overflow");
    }
    return static_cast<std::int64_t>(v);
}

Rational make(__int128 num, __int128 den)
{
    if (den == 0) {
        throw CalculusError("rational division by zero");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(checked(num), checked(den));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw CalculusError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

std::string Rational::str() const
{
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const
{
    return Rational(-num_, den_);
}

Rational& Rational::operator+=(const Rational& o)
{
    *this = make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o)
{
    *this = make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    *this = make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    return *this;
}

GaussRational& GaussRational::operator+=(const GaussRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o)
{
    const Rational re = re_ * o.re_ - im_ * o.im_;
    const Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    im_ = im;
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o)
{
    const Rational n = o.re_ * o.re_ + o.im_ * o.im_;
    if (n.is_zero()) {
        throw CalculusError("Gaussian rational division by zero");
    }
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

GaussRational GaussRational::pow(int n) const
{
    if (n < 0) {
        return GaussRational(1) / pow(-n);
    }
    GaussRational out(1);
    for (int k = 0; k < n; ++k) {
        out *= *this;
    }
    return out;
}

std::string GaussRational::str() const
{
    if (im_.is_zero()) {
        return re_.str();
    }
    const std::string im = (im_ == Rational(1)) ? "i" : (im_ == Rational(-1)) ? "-i" : im_.str() + "i";
    if (re_.is_zero()) {
        return im;
    }
    const bool neg = im_.num() < 0;
    const std::string mag = neg ? im.substr(1) : im;
    return "(" + re_.str() + (neg ? " - " : " + ") + mag + ")";
}

std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n || n < 0) {
        return 0;
    }
    k = std::min(k, n - k);
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        checked(r);
    }
    return checked(r);
}

std::int64_t factorial_exact(int n)
{
    if (n < 0) {
        throw CalculusError("factorial of a negative number");
    }
    __int128 r = 1;
    for (int i = 2; i <= n; ++i) {
        r *= i;
        checked(r);
    }
    return checked(r);
}

} // namespace bergman
