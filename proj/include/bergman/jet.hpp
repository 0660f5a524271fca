#pragma once

// Truncated Taylor arithmetic.
//
// Jet   : power series in one complex variable, used for exact analytic
//         derivatives of basis functions.
// BiJet : power series in two independent variables (u, v) standing for
//         (z - z0, conj(z) - conj(z0)); the coefficient of u^p v^q times p! q!
//         is the Wirtinger derivative d^p dbar^q at z0.

#include <complex>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

double factorial(int n);

class Jet {
public:
    explicit Jet(int order);
    static Jet constant(Complex value, int order);
    /// The identity map z0 + delta.
    static Jet variable(Complex z0, int order);

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    Complex operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    Complex& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    /// k-th complex derivative at the expansion point; DomainError beyond the order.
    Complex derivative(int k) const;

    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Jet& other);
    Jet& operator*=(Complex s);

    /// 1 / f; the constant coefficient must be non-zero.
    Jet reciprocal() const;

private:
    std::vector<Complex> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(Jet a, const Jet& b);
Jet operator*(Complex s, Jet a);

class BiJet {
public:
    explicit BiJet(int order);
    static BiJet constant(Complex value, int order);
    /// z0 + u
    static BiJet z(Complex z0, int order);
    /// conj(z0) + v
    static BiJet zbar(Complex z0, int order);
    /// Re z = (z + conj z)/2 and Im z = (z - conj z)/(2i) expanded at z0.
    static BiJet x(Complex z0, int order);
    static BiJet y(Complex z0, int order);

    int order() const noexcept { return order_; }
    Complex coeff(int p, int q) const { return c_[index(p, q)]; }
    Complex& coeff(int p, int q) { return c_[index(p, q)]; }
    Complex value() const { return c_[0]; }

    /// d^p dbar^q at the expansion point.
    Complex wirtinger(int p, int q) const;

    BiJet& operator+=(const BiJet& other);
    BiJet& operator-=(const BiJet& other);
    BiJet& operator*=(const BiJet& other);
    BiJet& operator*=(Complex s);
    BiJet& operator+=(Complex s);

    BiJet exp() const;
    BiJet reciprocal() const;
    BiJet pow(int n) const;

private:
    std::size_t index(int p, int q) const
    {
        return static_cast<std::size_t>(p * (order_ + 1) + q);
    }

    int order_;
    std::vector<Complex> c_;
};

BiJet operator+(BiJet a, const BiJet& b);
BiJet operator-(BiJet a, const BiJet& b);
BiJet operator*(BiJet a, const BiJet& b);
BiJet operator*(Complex s, BiJet a);

} // namespace bergman
