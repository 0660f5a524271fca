#pragma once

// Singular symbols: complex measures made of point masses, weighted
// horizontal lines and a smooth or piecewise-constant density, together
// with their Carleson k-norms.

#include "bergman/geometry.hpp"
#include "bergman/jet.hpp"
#include "bergman/quadrature.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bergman {

/// Non-negative element of Z/2, stored as twice its value.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice)
    {
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }
    /// Throws DomainError unless v is a non-negative multiple of 1/2.
    static HalfInteger from_double(double v);

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

private:
    int twice_ = 0;
};

struct Bounds {
    double x_min;
    double x_max;
    double y_min;
    double y_max;
};

/// Built-in densities a(z) with closed-form (Taylor-mode) Wirtinger
/// derivatives. Indicators only support order 0.
class Density {
public:
    struct DiskIndicator {
        EuclidDisk disk;
    };
    struct BoxIndicator {
        double x0, x1, y0, y1;
    };
    struct Gaussian {
        HalfPlanePoint center;
        double sx, sy;
    };
    /// exp(1 - 1/(1 - rho^2)) on the disk, rho = |z - c| / r.
    struct Bump {
        EuclidDisk disk;
    };
    /// (1 - rho^2)^exponent on the disk.
    struct PolyBump {
        EuclidDisk disk;
        int exponent;
    };
    /// Global polynomial; has no integrable support and only serves pointwise
    /// evaluation of differential operators.
    struct Polynomial {
        HalfPlanePoint origin;
    };
    using Shape = std::variant<DiskIndicator, BoxIndicator, Gaussian, Bump, PolyBump, Polynomial>;

    /// coeff * (x - cx)^px * (y - cy)^py about the shape's center.
    struct Monomial {
        int px;
        int py;
        Complex coeff;
    };

    static constexpr int kMaxSmoothOrder = 12;

    Density(Shape shape, Complex amplitude, std::vector<Monomial> polynomial = {});

    static Density disk_indicator(const EuclidDisk& disk, Complex amplitude = 1.0);
    /// Indicator scaled to total mass one.
    static Density normalized_disk(const EuclidDisk& disk);
    static Density box_indicator(double x0, double x1, double y0, double y1, Complex amplitude = 1.0);
    static Density gaussian(const HalfPlanePoint& center, double sx, double sy, Complex amplitude = 1.0);
    static Density bump(const EuclidDisk& disk, Complex amplitude = 1.0);
    static Density poly_bump(const EuclidDisk& disk, int exponent, Complex amplitude = 1.0);
    static Density polynomial(const HalfPlanePoint& origin, std::vector<Monomial> terms);

    const Shape& shape() const noexcept { return shape_; }
    Complex amplitude() const noexcept { return amplitude_; }
    const std::vector<Monomial>& polynomial_factor() const noexcept { return poly_; }

    Complex value(const HalfPlanePoint& z) const;
    /// Bivariate Taylor jet of a at z to total order `order`.
    BiJet jet(const HalfPlanePoint& z, int order) const;
    /// d^p dbar^q a(z).
    Complex wirtinger(int p, int q, const HalfPlanePoint& z) const;
    int max_order() const noexcept;

    bool is_positive() const noexcept;
    bool has_support() const noexcept;
    Bounds support() const;
    /// Quadrature rule over the support (integrand weights not included).
    Rule support_rule(const QuadratureSpec& spec) const;
    /// int over the closed disk of |a| dA.
    double mass_in(const EuclidDisk& disk) const;

    nlohmann::json to_json() const;
    static Density from_json(const nlohmann::json& j);

private:
    Shape shape_;
    Complex amplitude_;
    std::vector<Monomial> poly_;
};

struct PointMass {
    HalfPlanePoint z;
    Complex weight;
};

/// W * (Lebesgue measure on the line Im z = height), optionally restricted
/// to an x-interval.
struct LineMass {
    double height;
    Complex weight;
    std::optional<std::pair<double, double>> x_range;
};

class SymbolMeasure {
public:
    SymbolMeasure() = default;

    SymbolMeasure& add_atom(const HalfPlanePoint& z, Complex weight);
    SymbolMeasure& add_line(double height, Complex weight,
                            std::optional<std::pair<double, double>> x_range = {});
    SymbolMeasure& set_density(Density density);

    const std::vector<PointMass>& atoms() const noexcept { return atoms_; }
    const std::vector<LineMass>& lines() const noexcept { return lines_; }
    const std::optional<Density>& density() const noexcept { return density_; }

    bool empty() const noexcept;
    /// All weights real and non-negative.
    bool is_positive() const noexcept;
    /// Weights multiplied by t.
    SymbolMeasure scaled(Complex t) const;
    /// Support contained in a compact subset of the half-plane.
    bool compact() const noexcept;
    /// Bounding box of the support; lines without an x-range contribute no
    /// x-extent. Throws DomainError for an empty measure.
    Bounds support() const;

    nlohmann::json to_json() const;
    /// Parses {"atoms": [[x,y,re,im]...], "lines": [[y,re,im(,x0,x1)]...],
    /// "density": {...}}; rejects y <= 0 and unknown keys.
    static SymbolMeasure from_json(const nlohmann::json& j);
    static SymbolMeasure load(const std::string& path);

private:
    std::vector<PointMass> atoms_;
    std::vector<LineMass> lines_;
    std::optional<Density> density_;
};

/// The distribution d^alpha dbar^beta mu.
struct DerivativeSymbol {
    SymbolMeasure base;
    int alpha = 0;
    int beta = 0;

    HalfInteger k() const { return HalfInteger::from_twice(alpha + beta); }
};

/// Total-variation mass |mu|(D) of a closed pseudo-hyperbolic disk.
double mass_on_disk(const SymbolMeasure& mu, const PhypDisk& d);

/// Grid of candidate disk centers, geometric in y and uniform in x with
/// pseudo-hyperbolic spacing `step` along both axes.
struct CenterGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 1.0;
    double y_max = 1.0;
    double step = 0.125;
    std::size_t max_centers = 4'000'000;

    /// Grid over every center whose disk D(z, gamma) can meet the support.
    static CenterGrid covering(const SymbolMeasure& mu, double gamma);
    CenterGrid refined() const;

    std::size_t size() const;
    /// Throws DomainError for an empty or oversized grid.
    std::vector<HalfPlanePoint> centers() const;
};

struct CarlesonReport {
    HalfInteger k;
    double gamma = 0.5;
    double norm = 0.0;
    HalfPlanePoint argmax_center{0.0, 1.0};
    CenterGrid grid;
    std::size_t evaluated = 0;
};

/// |mu|(D(z,gamma)) (Im z)^{-2(k+1)} Gamma(k+1)^2 gamma^{-2k}.
double carleson_expression(const SymbolMeasure& mu, const HalfPlanePoint& z, HalfInteger k, double gamma);

/// Grid maximum (with local refinement around the best center) of the
/// Carleson expression.
CarlesonReport carleson_norm(const SymbolMeasure& mu, HalfInteger k, double gamma, const CenterGrid& grid);
CarlesonReport carleson_norm(const SymbolMeasure& mu, HalfInteger k, double gamma);

/// For each R the supremum of the Carleson expression over grid centers
/// outside Q_R = (-R, R) x (1/R, R).
std::vector<double> vanishing_profile(const SymbolMeasure& mu, HalfInteger k, double gamma,
                                      const std::vector<double>& R_list, const CenterGrid& grid);
std::vector<double> vanishing_profile(const SymbolMeasure& mu, HalfInteger k, double gamma,
                                      const std::vector<double>& R_list);

/// gamma^{2(l-k)} (Gamma(k+1)/Gamma(l+1))^2 * report.norm.
double rescale_norm(const CarlesonReport& report, HalfInteger l);

} // namespace bergman
