#pragma once

// Exact rational and Gaussian-rational arithmetic on 64-bit integers, used
// by the symbolic calculus. Overflow raises CalculusError.

#include <complex>
#include <cstdint>
#include <string>

namespace bergman {

class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// re + i im with rational parts.
class GaussRational {
public:
    constexpr GaussRational() = default;
    GaussRational(Rational re, Rational im = {}) : re_(re), im_(im) {}
    GaussRational(std::int64_t re) : re_(re) {}

    static GaussRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }
    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    GaussRational conj() const { return {re_, -im_}; }
    GaussRational pow(int n) const;
    std::string str() const;

    GaussRational operator-() const { return {-re_, -im_}; }
    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend bool operator==(const GaussRational&, const GaussRational&) = default;

private:
    Rational re_;
    Rational im_;
};

/// Exact binomial coefficient; CalculusError on overflow.
std::int64_t binomial(int n, int k);
/// Exact n!; CalculusError on overflow (n > 20).
std::int64_t factorial_exact(int n);

} // namespace bergman
