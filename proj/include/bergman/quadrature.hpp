#pragma once

// Quadrature rules on the half-plane, singular values and exponential decay
// fits.
//
// Every rule is a flat list of (point, weight) pairs so that the Toeplitz
// assembly, inner products and symbol integrals share a single code path.

#include "bergman/geometry.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bergman {

struct QuadratureSpec {
    int radial = 128;   ///< Gauss-Legendre nodes in the radial direction
    int angular = 256;  ///< trapezoid nodes in the angular direction
    int line = 512;     ///< trapezoid nodes along a horizontal line
    /// Gaussian densities are cut where they fall below this fraction of
    /// their peak.
    double truncation = 1e-16;

    /// Throws ConfigError unless every node count is at least 8.
    void validate() const;
    QuadratureSpec halved() const;
};

struct Node {
    HalfPlanePoint z;
    double weight;
};

using Rule = std::vector<Node>;

struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

/// Nodes and weights on [-1, 1] (Golub-Welsch free Newton iteration).
const GaussLegendre& gauss_legendre(int n);

/// Whole half-plane: polar Gauss-Legendre x trapezoid rule on the unit disk,
/// pulled back through the Moebius map (weights carry |dz/dzeta|^2).
Rule disk_transfer_rule(int radial, int angular);

/// Whole half-plane: heights y = s/(1-s) with Gauss-Legendre in s, and on
/// each height the substitution x = (1+y) tan(theta/2) with a trapezoid rule
/// in theta. Integrands of the form rational(x, y) with poles only at
/// z = -i (and conjugates) are integrated exactly once the node counts
/// exceed their degree.
Rule halfplane_rule(int height_nodes, int line_nodes);

/// Polar rule on a Euclidean disk inside the half-plane.
Rule euclid_disk_rule(const EuclidDisk& disk, int radial, int angular);

/// Tensor Gauss-Legendre rule on the box [x0,x1] x [y0,y1], y0 > 0.
Rule box_rule(double x0, double x1, double y0, double y1, int nx, int ny);

/// Horizontal line Im z = height with weights dx. Without an x-range the
/// full line is covered by x = (1+height) tan(theta/2), trapezoid in theta;
/// with a range, Gauss-Legendre in theta over the image of the interval.
Rule line_rule(double height, int nodes, std::optional<std::pair<double, double>> x_range = {});

template <class F>
Complex integrate(const Rule& rule, F&& fn)
{
    Complex acc{};
    for (const auto& node : rule) {
        acc += node.weight * fn(node.z);
    }
    return acc;
}

using HalfPlaneFunction = std::function<Complex(const HalfPlanePoint&)>;

struct QuadratureResult {
    Complex value;
    double residual;  ///< |value - value on the half-resolution rule|
    bool warning;     ///< residual above the requested tolerance
};

/// <f, g> = int f conj(g) dA over the half-plane via the disk transfer.
QuadratureResult inner_product(const HalfPlaneFunction& f,
                               const HalfPlaneFunction& g,
                               const QuadratureSpec& spec = {},
                               double tolerance = 1e-10);

/// Singular values in descending order. Throws NumericRangeError on
/// non-finite entries.
std::vector<double> svd_values(const Eigen::MatrixXcd& matrix);

struct DecayFit {
    double sigma = 0.0;  ///< decay rate, s_n ~ C exp(-n sigma)
    double C = 0.0;
    int first = 0;       ///< fit range [first, last]
    int last = 0;
    /// max over the range of |log s_n - line_n| / max(1, |line_n|)
    double residual = 0.0;
};

/// Least-squares line through (n, log s_n) on [first, last].
DecayFit fit_exponential_decay(std::span<const double> s, int first, int last);

} // namespace bergman
