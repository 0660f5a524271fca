#pragma once

// Pseudo-hyperbolic geometry of the upper half-plane and the Moebius
// transfer to the unit disk.

#include <complex>

namespace bergman {

using Complex = std::complex<double>;

/// A point z = x + iy of the upper half-plane; y > 0 is enforced.
class HalfPlanePoint {
public:
    HalfPlanePoint(double x, double y);
    static HalfPlanePoint from_complex(Complex z);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    Complex z() const noexcept { return {x_, y_}; }

    friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

private:
    double x_;
    double y_;
};

/// Pseudo-hyperbolic disk D(z, R), 0 < R < 1.
class PhypDisk {
public:
    PhypDisk(HalfPlanePoint center, double radius);

    const HalfPlanePoint& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

private:
    HalfPlanePoint center_;
    double radius_;
};

/// Euclidean disk B(w, r) lying strictly inside the half-plane (r < Im w).
class EuclidDisk {
public:
    EuclidDisk(HalfPlanePoint center, double radius);

    const HalfPlanePoint& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

    /// Closed-disk membership; points within `rel_tol * radius` of the
    /// boundary circle count as inside.
    bool contains(const HalfPlanePoint& p, double rel_tol = 1e-12) const noexcept;
    double area() const noexcept;

private:
    HalfPlanePoint center_;
    double radius_;
};

/// d(z, w) = |(z - w) / (z - conj(w))|, a value in [0, 1).
double phyp_distance(const HalfPlanePoint& z, const HalfPlanePoint& w);

EuclidDisk phyp_to_euclid(const PhypDisk& d);
PhypDisk euclid_to_phyp(const EuclidDisk& b);

/// Lebesgue area of D(z, R): 4 pi R^2 y^2 / (1 - R^2)^2.
double phyp_area(const PhypDisk& d);

/// zeta = (z - i) / (1 - iz), mapping the half-plane onto the unit disk.
Complex mobius_to_disk(const HalfPlanePoint& z);
/// Inverse map z = (zeta + i) / (1 + i zeta); requires |zeta| < 1.
HalfPlanePoint mobius_to_halfplane(Complex zeta);

/// Pseudo-hyperbolic distance on the unit disk, |(a - b) / (1 - conj(b) a)|.
double disk_phyp_distance(Complex a, Complex b);

} // namespace bergman
