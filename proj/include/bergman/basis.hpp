#pragma once

// Reproducing kernel and the orthonormal basis of the Bergman space A^2 of
// the upper half-plane obtained from the disk monomials
// e_n(zeta) = sqrt((n+1)/pi) zeta^n through the Moebius isometry:
//
//     phi_n(z) = sqrt((n+1)/pi) M(z)^n M'(z),   M(z) = (z - i)/(1 - iz),
//     M'(z) = 2/(1 - iz)^2.

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

#include <Eigen/Dense>

namespace bergman {

/// k(z, w) = -1 / (pi (z - conj w)^2).
Complex kernel(const HalfPlanePoint& z, const HalfPlanePoint& w);

/// d^order/dz^order of k(z, w) (k is analytic in its first argument).
Complex kernel_deriv(int order, const HalfPlanePoint& z, const HalfPlanePoint& w);

/// The kernel function k_z(w) = k(w, z) and its derivatives in w.
class KernelPoint {
public:
    explicit KernelPoint(HalfPlanePoint anchor) : anchor_(anchor) {}

    const HalfPlanePoint& anchor() const noexcept { return anchor_; }
    Complex operator()(const HalfPlanePoint& w) const { return kernel(w, anchor_); }
    Complex deriv(int order, const HalfPlanePoint& w) const { return kernel_deriv(order, w, anchor_); }

private:
    HalfPlanePoint anchor_;
};

/// Table of derivatives d^a phi_n(z) for a <= max_order, n < size; row a,
/// column n.
using DerivTable = Eigen::MatrixXcd;

class BasisFamily {
public:
    explicit BasisFamily(int size);

    int size() const noexcept { return size_; }

    Complex eval(int n, const HalfPlanePoint& z) const;
    Complex deriv(int n, int order, const HalfPlanePoint& z) const;

    /// All derivatives up to `max_order` of phi_0..phi_{size-1} at z,
    /// computed by Taylor-mode arithmetic on the closed form. Throws
    /// NumericRangeError when a value overflows.
    DerivTable derivatives(const HalfPlanePoint& z, int max_order) const;

private:
    int size_;
};

Complex basis_eval(int n, const HalfPlanePoint& z);
Complex basis_deriv(int n, int order, const HalfPlanePoint& z);

/// Gram matrix <phi_n, phi_m> (row m, column n) under the disk-transfer rule.
Eigen::MatrixXcd gram_matrix(int size, const QuadratureSpec& spec = {});

/// (P h)(z) = int k(z, w) h(w) dA(w), by the disk-transfer rule; the
/// residual compares against the half-resolution rule.
QuadratureResult bergman_project(const HalfPlaneFunction& h,
                                 const HalfPlanePoint& z,
                                 const QuadratureSpec& spec = {},
                                 double tolerance = 1e-6);

} // namespace bergman
