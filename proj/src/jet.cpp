#include "bergman/jet.hpp"

#include "bergman/errors.hpp"

#include <array>
#include <cmath>

namespace bergman {

double factorial(int n)
{
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            t[i] = t[i - 1] * static_cast<double>(i);
        }
        return t;
    }();
    if (n < 0 || n >= static_cast<int>(table.size())) {
        throw NumericRangeError("factorial argument out of range");
    }
    return table[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------- Jet

Jet::Jet(int order) : c_(static_cast<std::size_t>(order + 1), Complex{})
{
    if (order < 0) {
        throw DomainError("jet order must be non-negative");
    }
}

Jet Jet::constant(Complex value, int order)
{
    Jet j(order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(Complex z0, int order)
{
    Jet j(order);
    j.c_[0] = z0;
    if (order >= 1) {
        j.c_[1] = 1.0;
    }
    return j;
}

Complex Jet::derivative(int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size())) {
        throw DomainError("requested derivative exceeds the jet order");
    }
    return c_[static_cast<std::size_t>(k)] * factorial(k);
}

Jet& Jet::operator+=(const Jet& other)
{
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] += other.c_[k];
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& other)
{
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] -= other.c_[k];
    }
    return *this;
}

Jet& Jet::operator*=(const Jet& other)
{
    const int n = order();
    std::vector<Complex> out(c_.size(), Complex{});
    for (int i = 0; i <= n; ++i) {
        if (c_[static_cast<std::size_t>(i)] == Complex{}) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            out[static_cast<std::size_t>(i + j)] +=
                c_[static_cast<std::size_t>(i)] * other.c_[static_cast<std::size_t>(j)];
        }
    }
    c_ = std::move(out);
    return *this;
}

Jet& Jet::operator*=(Complex s)
{
    for (auto& v : c_) {
        v *= s;
    }
    return *this;
}

Jet Jet::reciprocal() const
{
    if (c_[0] == Complex{}) {
        throw DomainError("reciprocal of a jet with zero constant term");
    }
    const int n = order();
    Jet r(n);
    r.c_[0] = 1.0 / c_[0];
    for (int k = 1; k <= n; ++k) {
        Complex acc{};
        for (int i = 1; i <= k; ++i) {
            acc += c_[static_cast<std::size_t>(i)] * r.c_[static_cast<std::size_t>(k - i)];
        }
        r.c_[static_cast<std::size_t>(k)] = -acc * r.c_[0];
    }
    return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, const Jet& b) { return a *= b; }
Jet operator*(Complex s, Jet a) { return a *= s; }

// ---------------------------------------------------------------- BiJet

BiJet::BiJet(int order)
    : order_(order), c_(static_cast<std::size_t>((order + 1) * (order + 1)), Complex{})
{
    if (order < 0) {
        throw DomainError("jet order must be non-negative");
    }
}

BiJet BiJet::constant(Complex value, int order)
{
    BiJet j(order);
    j.c_[0] = value;
    return j;
}

BiJet BiJet::z(Complex z0, int order)
{
    BiJet j = constant(z0, order);
    if (order >= 1) {
        j.coeff(1, 0) = 1.0;
    }
    return j;
}

BiJet BiJet::zbar(Complex z0, int order)
{
    BiJet j = constant(std::conj(z0), order);
    if (order >= 1) {
        j.coeff(0, 1) = 1.0;
    }
    return j;
}

BiJet BiJet::x(Complex z0, int order)
{
    BiJet j = constant(z0.real(), order);
    if (order >= 1) {
        j.coeff(1, 0) = 0.5;
        j.coeff(0, 1) = 0.5;
    }
    return j;
}

BiJet BiJet::y(Complex z0, int order)
{
    BiJet j = constant(z0.imag(), order);
    if (order >= 1) {
        // (u - v) / (2i)
        j.coeff(1, 0) = Complex(0.0, -0.5);
        j.coeff(0, 1) = Complex(0.0, 0.5);
    }
    return j;
}

Complex BiJet::wirtinger(int p, int q) const
{
    if (p < 0 || q < 0 || p + q > order_) {
        throw DomainError("requested derivative exceeds the jet order");
    }
    return coeff(p, q) * factorial(p) * factorial(q);
}

BiJet& BiJet::operator+=(const BiJet& other)
{
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] += other.c_[k];
    }
    return *this;
}

BiJet& BiJet::operator-=(const BiJet& other)
{
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] -= other.c_[k];
    }
    return *this;
}

BiJet& BiJet::operator*=(const BiJet& other)
{
    BiJet out(order_);
    for (int p1 = 0; p1 <= order_; ++p1) {
        for (int q1 = 0; p1 + q1 <= order_; ++q1) {
            const Complex a = coeff(p1, q1);
            if (a == Complex{}) {
                continue;
            }
            for (int p2 = 0; p1 + q1 + p2 <= order_; ++p2) {
                for (int q2 = 0; p1 + q1 + p2 + q2 <= order_; ++q2) {
                    out.coeff(p1 + p2, q1 + q2) += a * other.coeff(p2, q2);
                }
            }
        }
    }
    c_ = std::move(out.c_);
    return *this;
}

BiJet& BiJet::operator*=(Complex s)
{
    for (auto& v : c_) {
        v *= s;
    }
    return *this;
}

BiJet& BiJet::operator+=(Complex s)
{
    c_[0] += s;
    return *this;
}

BiJet BiJet::exp() const
{
    // exp(c + g) = e^c * sum_k g^k / k!, g nilpotent of index order+1
    BiJet g = *this;
    g.c_[0] = 0.0;
    BiJet sum = constant(1.0, order_);
    BiJet term = constant(1.0, order_);
    for (int k = 1; k <= order_; ++k) {
        term *= g;
        term *= Complex(1.0 / k);
        sum += term;
    }
    sum *= std::exp(c_[0]);
    return sum;
}

BiJet BiJet::reciprocal() const
{
    if (c_[0] == Complex{}) {
        throw DomainError("reciprocal of a jet with zero constant term");
    }
    // 1/(c + g) = (1/c) sum_k (-g/c)^k
    const Complex inv = 1.0 / c_[0];
    BiJet h = *this;
    h.c_[0] = 0.0;
    h *= -inv;
    BiJet sum = constant(1.0, order_);
    BiJet term = constant(1.0, order_);
    for (int k = 1; k <= order_; ++k) {
        term *= h;
        sum += term;
    }
    sum *= inv;
    return sum;
}

BiJet BiJet::pow(int n) const
{
    if (n < 0) {
        return reciprocal().pow(-n);
    }
    BiJet result = constant(1.0, order_);
    BiJet base = *this;
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        n >>= 1;
        if (n > 0) {
            base *= base;
        }
    }
    return result;
}

BiJet operator+(BiJet a, const BiJet& b) { return a += b; }
BiJet operator-(BiJet a, const BiJet& b) { return a -= b; }
BiJet operator*(BiJet a, const BiJet& b) { return a *= b; }
BiJet operator*(Complex s, BiJet a) { return a *= s; }

} // namespace bergman
