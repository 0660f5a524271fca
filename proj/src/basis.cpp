#include "bergman/basis.hpp"

#include "bergman/errors.hpp"
#include "bergman/jet.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

void require_index(int n)
{
    if (n < 0) {
        throw DomainError("basis index must be non-negative");
    }
}

} // namespace

Complex kernel(const HalfPlanePoint& z, const HalfPlanePoint& w)
{
    const Complex d = z.z() - std::conj(w.z());
    return -1.0 / (kPi * d * d);
}

Complex kernel_deriv(int order, const HalfPlanePoint& z, const HalfPlanePoint& w)
{
    if (order < 0) {
        throw DomainError("derivative order must be non-negative");
    }
    // d^b (z - c)^{-2} = (-1)^b (b+1)! (z - c)^{-2-b}
    const Complex d = z.z() - std::conj(w.z());
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return -sign * factorial(order + 1) / (kPi * std::pow(d, order + 2));
}

BasisFamily::BasisFamily(int size) : size_(size)
{
    if (size < 1) {
        throw DomainError("basis family needs at least one function");
    }
}

Complex BasisFamily::eval(int n, const HalfPlanePoint& z) const
{
    return basis_eval(n, z);
}

Complex BasisFamily::deriv(int n, int order, const HalfPlanePoint& z) const
{
    return basis_deriv(n, order, z);
}

DerivTable BasisFamily::derivatives(const HalfPlanePoint& z, int max_order) const
{
    if (max_order < 0) {
        throw DomainError("derivative order must be non-negative");
    }
    const Complex z0 = z.z();
    // 1/(1 - iz) expanded at z0, then M = (z - i) * that and M' = 2 * that^2
    const Jet inv = (Jet::constant(1.0, max_order) - kI * Jet::variable(z0, max_order)).reciprocal();
    const Jet mobius = (Jet::variable(z0, max_order) - Jet::constant(kI, max_order)) * inv;
    Jet power = Complex(2.0) * (inv * inv);

    DerivTable table(max_order + 1, size_);
    for (int n = 0; n < size_; ++n) {
        const double c = std::sqrt((n + 1) / kPi);
        for (int a = 0; a <= max_order; ++a) {
            const Complex v = c * power.derivative(a);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw NumericRangeError("basis derivative overflow at n=" + std::to_string(n) +
                                        ", order=" + std::to_string(a));
            }
            table(a, n) = v;
        }
        power *= mobius;
    }
    return table;
}

Complex basis_eval(int n, const HalfPlanePoint& z)
{
    require_index(n);
    const Complex u = 1.0 - kI * z.z();
    const Complex m = (z.z() - kI) / u;
    return std::sqrt((n + 1) / kPi) * std::pow(m, n) * (2.0 / (u * u));
}

Complex basis_deriv(int n, int order, const HalfPlanePoint& z)
{
    require_index(n);
    if (order == 0) {
        return basis_eval(n, z);
    }
    return BasisFamily(n + 1).derivatives(z, order)(order, n);
}

Eigen::MatrixXcd gram_matrix(int size, const QuadratureSpec& spec)
{
    spec.validate();
    const BasisFamily basis(size);
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(size, size);
    for (const auto& node : disk_transfer_rule(spec.radial, spec.angular)) {
        const Eigen::VectorXcd v = basis.derivatives(node.z, 0).row(0).transpose();
        gram.noalias() += node.weight * (v.conjugate() * v.transpose());
    }
    return gram;
}

QuadratureResult bergman_project(const HalfPlaneFunction& h,
                                 const HalfPlanePoint& z,
                                 const QuadratureSpec& spec,
                                 double tolerance)
{
    spec.validate();
    auto integrand = [&](const HalfPlanePoint& w) { return kernel(z, w) * h(w); };
    const Complex fine = integrate(disk_transfer_rule(spec.radial, spec.angular), integrand);
    const auto half = spec.halved();
    const Complex coarse = integrate(disk_transfer_rule(half.radial, half.angular), integrand);
    const double residual = std::abs(fine - coarse);
    return {fine, residual, residual > tolerance * std::max(1.0, std::abs(fine))};
}

} // namespace bergman
