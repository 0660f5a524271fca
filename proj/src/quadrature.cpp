#include "bergman/quadrature.hpp"

#include "bergman/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

GaussLegendre compute_gauss_legendre(int n)
{
    GaussLegendre gl;
    gl.x.resize(static_cast<std::size_t>(n));
    gl.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // recompute the derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        gl.x[lo] = -x;
        gl.x[hi] = x;
        gl.w[lo] = w;
        gl.w[hi] = w;
    }
    if (n % 2 == 1) {
        gl.x[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return gl;
}

void require_nodes(int n, const char* what)
{
    if (n < 8) {
        throw ConfigError(std::string(what) + " node count must be at least 8");
    }
}

} // namespace

void QuadratureSpec::validate() const
{
    require_nodes(radial, "radial");
    require_nodes(angular, "angular");
    require_nodes(line, "line");
    if (!(truncation > 0.0 && truncation < 1.0)) {
        throw ConfigError("truncation threshold must lie in (0,1)");
    }
}

QuadratureSpec QuadratureSpec::halved() const
{
    QuadratureSpec h = *this;
    h.radial = std::max(8, radial / 2);
    h.angular = std::max(8, angular / 2);
    h.line = std::max(8, line / 2);
    return h;
}

const GaussLegendre& gauss_legendre(int n)
{
    if (n < 1) {
        throw ConfigError("Gauss-Legendre rule needs at least one node");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussLegendre>(compute_gauss_legendre(n));
    }
    return *slot;
}

Rule disk_transfer_rule(int radial, int angular)
{
    require_nodes(radial, "radial");
    require_nodes(angular, "angular");
    const auto& gl = gauss_legendre(radial);
    const Complex I(0.0, 1.0);
    const double dtheta = 2.0 * kPi / angular;
    Rule rule;
    rule.reserve(static_cast<std::size_t>(radial * angular));
    for (int a = 0; a < radial; ++a) {
        const double r = 0.5 * (gl.x[static_cast<std::size_t>(a)] + 1.0);
        const double wr = 0.5 * gl.w[static_cast<std::size_t>(a)];
        for (int b = 0; b < angular; ++b) {
            // half-step offset keeps nodes off the direction of M(infinity) = i
            const double theta = dtheta * (b + 0.5);
            const Complex zeta = std::polar(r, theta);
            const double jac = 4.0 / std::pow(std::norm(1.0 + I * zeta), 2);
            rule.push_back({mobius_to_halfplane(zeta), wr * r * dtheta * jac});
        }
    }
    return rule;
}

Rule line_rule(double height, int nodes, std::optional<std::pair<double, double>> x_range)
{
    require_nodes(nodes, "line");
    if (!(height > 0.0)) {
        throw DomainError("line height must be positive");
    }
    const double L = 1.0 + height;
    Rule rule;
    rule.reserve(static_cast<std::size_t>(nodes));
    if (!x_range) {
        const double dtheta = 2.0 * kPi / nodes;
        for (int k = 0; k < nodes; ++k) {
            const double theta = -kPi + dtheta * (k + 0.5);
            const double c = std::cos(0.5 * theta);
            const double x = L * std::tan(0.5 * theta);
            rule.push_back({HalfPlanePoint(x, height), 0.5 * L / (c * c) * dtheta});
        }
        return rule;
    }
    const auto [a, b] = *x_range;
    if (!(a < b)) {
        throw DomainError("line x-range must satisfy a < b");
    }
    const double ta = 2.0 * std::atan(a / L);
    const double tb = 2.0 * std::atan(b / L);
    const auto& gl = gauss_legendre(nodes);
    for (int k = 0; k < nodes; ++k) {
        const double theta = 0.5 * (ta + tb) + 0.5 * (tb - ta) * gl.x[static_cast<std::size_t>(k)];
        const double c = std::cos(0.5 * theta);
        const double x = L * std::tan(0.5 * theta);
        const double w = 0.5 * (tb - ta) * gl.w[static_cast<std::size_t>(k)];
        rule.push_back({HalfPlanePoint(x, height), 0.5 * L / (c * c) * w});
    }
    return rule;
}

Rule halfplane_rule(int height_nodes, int line_nodes)
{
    require_nodes(height_nodes, "height");
    require_nodes(line_nodes, "line");
    const auto& gl = gauss_legendre(height_nodes);
    Rule rule;
    rule.reserve(static_cast<std::size_t>(height_nodes * line_nodes));
    for (int a = 0; a < height_nodes; ++a) {
        const double s = 0.5 * (gl.x[static_cast<std::size_t>(a)] + 1.0);
        const double ws = 0.5 * gl.w[static_cast<std::size_t>(a)] / ((1.0 - s) * (1.0 - s));
        const double y = s / (1.0 - s);
        for (const auto& node : line_rule(y, line_nodes)) {
            rule.push_back({node.z, node.weight * ws});
        }
    }
    return rule;
}

Rule euclid_disk_rule(const EuclidDisk& disk, int radial, int angular)
{
    require_nodes(radial, "radial");
    require_nodes(angular, "angular");
    const auto& gl = gauss_legendre(radial);
    const double rho = disk.radius();
    const Complex c = disk.center().z();
    const double dtheta = 2.0 * kPi / angular;
    Rule rule;
    rule.reserve(static_cast<std::size_t>(radial * angular));
    for (int a = 0; a < radial; ++a) {
        const double r = 0.5 * rho * (gl.x[static_cast<std::size_t>(a)] + 1.0);
        const double wr = 0.5 * rho * gl.w[static_cast<std::size_t>(a)];
        for (int b = 0; b < angular; ++b) {
            const Complex z = c + std::polar(r, dtheta * b);
            rule.push_back({HalfPlanePoint::from_complex(z), wr * r * dtheta});
        }
    }
    return rule;
}

Rule box_rule(double x0, double x1, double y0, double y1, int nx, int ny)
{
    if (!(x0 < x1 && y0 < y1 && y0 > 0.0)) {
        throw DomainError("box must satisfy x0 < x1 and 0 < y0 < y1");
    }
    require_nodes(nx, "box x");
    require_nodes(ny, "box y");
    const auto& gx = gauss_legendre(nx);
    const auto& gy = gauss_legendre(ny);
    Rule rule;
    rule.reserve(static_cast<std::size_t>(nx * ny));
    for (int a = 0; a < nx; ++a) {
        const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * gx.x[static_cast<std::size_t>(a)];
        const double wx = 0.5 * (x1 - x0) * gx.w[static_cast<std::size_t>(a)];
        for (int b = 0; b < ny; ++b) {
            const double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * gy.x[static_cast<std::size_t>(b)];
            const double wy = 0.5 * (y1 - y0) * gy.w[static_cast<std::size_t>(b)];
            rule.push_back({HalfPlanePoint(x, y), wx * wy});
        }
    }
    return rule;
}

QuadratureResult inner_product(const HalfPlaneFunction& f,
                               const HalfPlaneFunction& g,
                               const QuadratureSpec& spec,
                               double tolerance)
{
    spec.validate();
    auto integrand = [&](const HalfPlanePoint& z) { return f(z) * std::conj(g(z)); };
    const Complex fine = integrate(disk_transfer_rule(spec.radial, spec.angular), integrand);
    const auto coarse_spec = spec.halved();
    const Complex coarse =
        integrate(disk_transfer_rule(coarse_spec.radial, coarse_spec.angular), integrand);
    const double residual = std::abs(fine - coarse);
    return {fine, residual, residual > tolerance * std::max(1.0, std::abs(fine))};
}

std::vector<double> svd_values(const Eigen::MatrixXcd& matrix)
{
    if (!matrix.allFinite()) {
        throw NumericRangeError("matrix has non-finite entries");
    }
    if (matrix.size() == 0) {
        return {};
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix);
    const auto& sv = svd.singularValues();
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

DecayFit fit_exponential_decay(std::span<const double> s, int first, int last)
{
    if (first < 0 || last >= static_cast<int>(s.size()) || last <= first) {
        throw DomainError("fit range must contain at least two available values");
    }
    const int count = last - first + 1;
    double sx = 0.0;
    double sy = 0.0;
    for (int n = first; n <= last; ++n) {
        const double v = s[static_cast<std::size_t>(n)];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("fit range contains a non-positive value at index " + std::to_string(n));
        }
        sx += n;
        sy += std::log(v);
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (int n = first; n <= last; ++n) {
        const double dx = n - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(s[static_cast<std::size_t>(n)]) - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    DecayFit fit;
    fit.sigma = -slope;
    fit.C = std::exp(intercept);
    fit.first = first;
    fit.last = last;
    for (int n = first; n <= last; ++n) {
        const double line = intercept + slope * n;
        const double dev = std::abs(std::log(s[static_cast<std::size_t>(n)]) - line);
        fit.residual = std::max(fit.residual, dev / std::max(1.0, std::abs(line)));
    }
    return fit;
}

} // namespace bergman
