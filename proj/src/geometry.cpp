#include "bergman/geometry.hpp"

#include "bergman/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bergman {

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y)
{
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("half-plane point must have finite coordinates");
    }
    if (!(y > 0.0)) {
        throw DomainError("half-plane point needs Im z > 0, got " + std::to_string(y));
    }
}

HalfPlanePoint HalfPlanePoint::from_complex(Complex z)
{
    return {z.real(), z.imag()};
}

PhypDisk::PhypDisk(HalfPlanePoint center, double radius) : center_(center), radius_(radius)
{
    if (!(radius > 0.0 && radius < 1.0)) {
        throw DomainError("pseudo-hyperbolic radius must lie in (0,1), got " + std::to_string(radius));
    }
}

EuclidDisk::EuclidDisk(HalfPlanePoint center, double radius) : center_(center), radius_(radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("Euclidean radius must be positive, got " + std::to_string(radius));
    }
    if (!(radius < center.y())) {
        throw DomainError("Euclidean disk touches or crosses the real axis");
    }
}

bool EuclidDisk::contains(const HalfPlanePoint& p, double rel_tol) const noexcept
{
    const double dist = std::abs(p.z() - center_.z());
    return dist <= radius_ * (1.0 + rel_tol);
}

double EuclidDisk::area() const noexcept
{
    return std::numbers::pi * radius_ * radius_;
}

double phyp_distance(const HalfPlanePoint& z, const HalfPlanePoint& w)
{
    // |z - conj(w)| >= y_z + y_w > 0
    return std::abs(z.z() - w.z()) / std::abs(z.z() - std::conj(w.z()));
}

EuclidDisk phyp_to_euclid(const PhypDisk& d)
{
    const double R = d.radius();
    const double y = d.center().y();
    const double denom = (1.0 - R) * (1.0 + R);
    const double cy = y * (1.0 + R * R) / denom;
    const double r = 2.0 * R * y / denom;
    return {HalfPlanePoint(d.center().x(), cy), r};
}

PhypDisk euclid_to_phyp(const EuclidDisk& b)
{
    const double eta = b.center().y();
    const double t = eta / b.radius();
    // R = t - sqrt(t^2 - 1), written without cancellation
    const double root = std::sqrt((t - 1.0) * (t + 1.0));
    const double R = 1.0 / (t + root);
    const double y = (1.0 - R) * (1.0 + R) / (1.0 + R * R) * eta;
    return {HalfPlanePoint(b.center().x(), y), R};
}

double phyp_area(const PhypDisk& d)
{
    const double R = d.radius();
    const double y = d.center().y();
    const double denom = (1.0 - R) * (1.0 + R);
    return 4.0 * std::numbers::pi * R * R * y * y / (denom * denom);
}

Complex mobius_to_disk(const HalfPlanePoint& z)
{
    const Complex I(0.0, 1.0);
    return (z.z() - I) / (1.0 - I * z.z());
}

HalfPlanePoint mobius_to_halfplane(Complex zeta)
{
    if (!(std::abs(zeta) < 1.0)) {
        throw DomainError("Moebius inverse needs |zeta| < 1");
    }
    const Complex I(0.0, 1.0);
    const Complex one_plus = 1.0 + I * zeta;
    const Complex z = (zeta + I) / one_plus;
    // Im z = (1 - |zeta|^2) / |1 + i zeta|^2, evaluated directly for accuracy near the circle
    const double y = (1.0 - std::abs(zeta)) * (1.0 + std::abs(zeta)) / std::norm(one_plus);
    return {z.real(), y};
}

double disk_phyp_distance(Complex a, Complex b)
{
    return std::abs(a - b) / std::abs(1.0 - std::conj(b) * a);
}

} // namespace bergman
