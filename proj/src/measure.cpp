#include "bergman/measure.hpp"

#include "bergman/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace bergman {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;
// exp(-q) drops below 1e-16 of the peak for q > 36.84
const double kGaussianCut = std::sqrt(2.0 * 36.85);

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_real_nonneg(Complex w)
{
    return w.imag() == 0.0 && w.real() >= 0.0;
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw ConfigError(std::string(what) + " must be finite");
    }
}

HalfPlanePoint shape_center(const Density::Shape& shape)
{
    return std::visit(
        Overloaded{
            [](const Density::DiskIndicator& s) { return s.disk.center(); },
            [](const Density::BoxIndicator& s) { return HalfPlanePoint(0.5 * (s.x0 + s.x1), 0.5 * (s.y0 + s.y1)); },
            [](const Density::Gaussian& s) { return s.center; },
            [](const Density::Bump& s) { return s.disk.center(); },
            [](const Density::PolyBump& s) { return s.disk.center(); },
            [](const Density::Polynomial& s) { return s.origin; },
        },
        shape);
}

// Area of the intersection of two Euclidean disks.
double lens_area(const EuclidDisk& a, const EuclidDisk& b)
{
    const double r1 = a.radius();
    const double r2 = b.radius();
    const double d = std::abs(a.center().z() - b.center().z());
    if (d >= r1 + r2) {
        return 0.0;
    }
    if (d <= std::abs(r1 - r2)) {
        const double r = std::min(r1, r2);
        return kPi * r * r;
    }
    const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
    const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
    const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
}

// Area of the intersection of a disk and an axis-parallel box. With
// x = cx + r sin t the vertical chord is cy +- r cos t; the integrand in t
// is piecewise smooth between the breakpoints collected below.
double disk_box_area(const EuclidDisk& disk, double x0, double x1, double y0, double y1)
{
    const double cx = disk.center().x();
    const double cy = disk.center().y();
    const double r = disk.radius();
    auto t_of_x = [&](double x) { return std::asin(std::clamp((x - cx) / r, -1.0, 1.0)); };
    const double ta = t_of_x(x0);
    const double tb = t_of_x(x1);
    if (!(ta < tb)) {
        return 0.0;
    }
    std::set<double> cuts{ta, tb};
    for (double yl : {y0, y1}) {
        const double c = std::abs(yl - cy) / r;
        if (c < 1.0) {
            const double t = std::acos(c);
            for (double s : {-t, t}) {
                if (s > ta && s < tb) {
                    cuts.insert(s);
                }
            }
        }
    }
    const auto& gl = gauss_legendre(24);
    double area = 0.0;
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
        const double a = *it;
        const double b = *std::next(it);
        for (std::size_t k = 0; k < gl.x.size(); ++k) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * gl.x[k];
            const double h = r * std::cos(t);
            const double len = std::max(0.0, std::min(y1, cy + h) - std::max(y0, cy - h));
            area += 0.5 * (b - a) * gl.w[k] * len * r * std::cos(t);
        }
    }
    return area;
}

BiJet rho_squared(const HalfPlanePoint& z, const EuclidDisk& disk, int order)
{
    const double cx = disk.center().x();
    const double cy = disk.center().y();
    BiJet dx = BiJet::x(z.z(), order);
    dx += Complex(-cx);
    BiJet dy = BiJet::y(z.z(), order);
    dy += Complex(-cy);
    BiJet rho2 = dx * dx + dy * dy;
    rho2 *= Complex(1.0 / (disk.radius() * disk.radius()));
    return rho2;
}

Complex parse_complex(const json& j, const char* what)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ConfigError(std::string(what) + " must be a number or [re, im]");
}

HalfPlanePoint parse_point(const json& j, const char* what)
{
    if (!(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())) {
        throw ConfigError(std::string(what) + " must be [x, y]");
    }
    const double x = j[0].get<double>();
    const double y = j[1].get<double>();
    if (!(y > 0.0)) {
        throw ConfigError(std::string(what) + " must have y > 0");
    }
    return {x, y};
}

double parse_number(const json& obj, const char* key)
{
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw ConfigError(std::string("density field '") + key + "' must be a number");
    }
    return obj.at(key).get<double>();
}

json complex_json(Complex c)
{
    return json::array({c.real(), c.imag()});
}

} // namespace

HalfInteger HalfInteger::from_double(double v)
{
    const double t = 2.0 * v;
    const double r = std::round(t);
    if (!(v >= 0.0) || std::abs(t - r) > 1e-12 || r > std::numeric_limits<int>::max()) {
        throw DomainError("expected a non-negative multiple of 1/2");
    }
    return from_twice(static_cast<int>(r));
}

// ---------------------------------------------------------------------------
// Density

Density::Density(Shape shape, Complex amplitude, std::vector<Monomial> polynomial)
    : shape_(std::move(shape)), amplitude_(amplitude), poly_(std::move(polynomial))
{
    if (!std::isfinite(amplitude_.real()) || !std::isfinite(amplitude_.imag())) {
        throw ConfigError("density amplitude must be finite");
    }
    for (const auto& m : poly_) {
        if (m.px < 0 || m.py < 0) {
            throw ConfigError("polynomial exponents must be non-negative");
        }
    }
    std::visit(Overloaded{
                   [](const BoxIndicator& s) {
                       if (!(s.x0 < s.x1 && s.y0 < s.y1 && s.y0 > 0.0)) {
                           throw DomainError("box must satisfy x0 < x1 and 0 < y0 < y1");
                       }
                   },
                   [](const Gaussian& s) {
                       if (!(s.sx > 0.0 && s.sy > 0.0)) {
                           throw DomainError("gaussian widths must be positive");
                       }
                       if (!(s.center.y() - kGaussianCut * s.sy > 0.0)) {
                           throw DomainError("gaussian density must decay before reaching the real axis");
                       }
                   },
                   [](const PolyBump& s) {
                       if (s.exponent < 0) {
                           throw DomainError("poly_bump exponent must be non-negative");
                       }
                   },
                   [](const auto&) {},
               },
               shape_);
}

Density Density::disk_indicator(const EuclidDisk& disk, Complex amplitude)
{
    return Density(DiskIndicator{disk}, amplitude);
}

Density Density::normalized_disk(const EuclidDisk& disk)
{
    return Density(DiskIndicator{disk}, 1.0 / disk.area());
}

Density Density::box_indicator(double x0, double x1, double y0, double y1, Complex amplitude)
{
    return Density(BoxIndicator{x0, x1, y0, y1}, amplitude);
}

Density Density::gaussian(const HalfPlanePoint& center, double sx, double sy, Complex amplitude)
{
    return Density(Gaussian{center, sx, sy}, amplitude);
}

Density Density::bump(const EuclidDisk& disk, Complex amplitude)
{
    return Density(Bump{disk}, amplitude);
}

Density Density::poly_bump(const EuclidDisk& disk, int exponent, Complex amplitude)
{
    return Density(PolyBump{disk, exponent}, amplitude);
}

Density Density::polynomial(const HalfPlanePoint& origin, std::vector<Monomial> terms)
{
    // The empty sum is the zero polynomial.
    const Complex amplitude = terms.empty() ? 0.0 : 1.0;
    return Density(Polynomial{origin}, amplitude, std::move(terms));
}

int Density::max_order() const noexcept
{
    return std::visit(Overloaded{
                          [](const DiskIndicator&) { return 0; },
                          [](const BoxIndicator&) { return 0; },
                          [](const PolyBump& s) { return std::max(0, s.exponent - 1); },
                          [](const auto&) { return kMaxSmoothOrder; },
                      },
                      shape_);
}

BiJet Density::jet(const HalfPlanePoint& z, int order) const
{
    if (order < 0) {
        throw DomainError("derivative order must be non-negative");
    }
    if (order > max_order()) {
        throw DomainError("density supports derivatives up to order " + std::to_string(max_order()) +
                          ", requested " + std::to_string(order));
    }
    const Complex z0 = z.z();
    BiJet profile = std::visit(
        Overloaded{
            [&](const DiskIndicator& s) {
                return BiJet::constant(s.disk.contains(z, kBoundaryTol) ? 1.0 : 0.0, order);
            },
            [&](const BoxIndicator& s) {
                const bool in = z.x() >= s.x0 && z.x() <= s.x1 && z.y() >= s.y0 && z.y() <= s.y1;
                return BiJet::constant(in ? 1.0 : 0.0, order);
            },
            [&](const Gaussian& s) {
                BiJet dx = BiJet::x(z0, order);
                dx += Complex(-s.center.x());
                BiJet dy = BiJet::y(z0, order);
                dy += Complex(-s.center.y());
                BiJet q = Complex(-0.5 / (s.sx * s.sx)) * (dx * dx) + Complex(-0.5 / (s.sy * s.sy)) * (dy * dy);
                return q.exp();
            },
            [&](const Bump& s) {
                const Complex c = z0 - s.disk.center().z();
                if (std::abs(c) >= s.disk.radius()) {
                    return BiJet(order);
                }
                BiJet one_minus = Complex(-1.0) * rho_squared(z, s.disk, order);
                one_minus += 1.0;
                BiJet e = Complex(-1.0) * one_minus.reciprocal();
                e += 1.0;
                return e.exp();
            },
            [&](const PolyBump& s) {
                const Complex c = z0 - s.disk.center().z();
                if (std::abs(c) >= s.disk.radius()) {
                    return BiJet(order);
                }
                BiJet one_minus = Complex(-1.0) * rho_squared(z, s.disk, order);
                one_minus += 1.0;
                return one_minus.pow(s.exponent);
            },
            [&](const Polynomial&) { return BiJet::constant(1.0, order); },
        },
        shape_);
    profile *= amplitude_;
    if (poly_.empty()) {
        return profile;
    }
    const HalfPlanePoint c = shape_center(shape_);
    BiJet dx = BiJet::x(z0, order);
    dx += Complex(-c.x());
    BiJet dy = BiJet::y(z0, order);
    dy += Complex(-c.y());
    BiJet p(order);
    for (const auto& m : poly_) {
        p += m.coeff * (dx.pow(m.px) * dy.pow(m.py));
    }
    return profile * p;
}

Complex Density::value(const HalfPlanePoint& z) const
{
    return jet(z, 0).value();
}

Complex Density::wirtinger(int p, int q, const HalfPlanePoint& z) const
{
    if (p < 0 || q < 0) {
        throw DomainError("derivative order must be non-negative");
    }
    return jet(z, p + q).wirtinger(p, q);
}

bool Density::is_positive() const noexcept
{
    if (std::holds_alternative<Polynomial>(shape_)) {
        return false;
    }
    return poly_.empty() && is_real_nonneg(amplitude_);
}

bool Density::has_support() const noexcept
{
    return !std::holds_alternative<Polynomial>(shape_);
}

Bounds Density::support() const
{
    auto disk_bounds = [](const EuclidDisk& d) {
        const double r = d.radius();
        return Bounds{d.center().x() - r, d.center().x() + r, d.center().y() - r, d.center().y() + r};
    };
    return std::visit(Overloaded{
                          [&](const DiskIndicator& s) { return disk_bounds(s.disk); },
                          [&](const Bump& s) { return disk_bounds(s.disk); },
                          [&](const PolyBump& s) { return disk_bounds(s.disk); },
                          [](const BoxIndicator& s) { return Bounds{s.x0, s.x1, s.y0, s.y1}; },
                          [](const Gaussian& s) {
                              const double hx = kGaussianCut * s.sx;
                              const double hy = kGaussianCut * s.sy;
                              return Bounds{s.center.x() - hx, s.center.x() + hx, s.center.y() - hy,
                                            s.center.y() + hy};
                          },
                          [](const Polynomial&) -> Bounds {
                              throw DomainError("polynomial density has unbounded support");
                          },
                      },
                      shape_);
}

Rule Density::support_rule(const QuadratureSpec& spec) const
{
    spec.validate();
    return std::visit(Overloaded{
                          [&](const DiskIndicator& s) { return euclid_disk_rule(s.disk, spec.radial, spec.angular); },
                          [&](const Bump& s) { return euclid_disk_rule(s.disk, spec.radial, spec.angular); },
                          [&](const PolyBump& s) { return euclid_disk_rule(s.disk, spec.radial, spec.angular); },
                          [&](const BoxIndicator& s) {
                              return box_rule(s.x0, s.x1, s.y0, s.y1, spec.radial, spec.radial);
                          },
                          [&](const Gaussian&) {
                              const Bounds b = support();
                              return box_rule(b.x_min, b.x_max, b.y_min, b.y_max, spec.radial, spec.radial);
                          },
                          [](const Polynomial&) -> Rule {
                              throw DomainError("polynomial density has unbounded support");
                          },
                      },
                      shape_);
}

double Density::mass_in(const EuclidDisk& disk) const
{
    if (poly_.empty()) {
        if (const auto* s = std::get_if<DiskIndicator>(&shape_)) {
            return std::abs(amplitude_) * lens_area(disk, s->disk);
        }
        if (const auto* s = std::get_if<BoxIndicator>(&shape_)) {
            return std::abs(amplitude_) * disk_box_area(disk, s->x0, s->x1, s->y0, s->y1);
        }
    }
    const Bounds b = support();
    const double r = disk.radius();
    const Complex c = disk.center().z();
    if (c.real() + r < b.x_min || c.real() - r > b.x_max || c.imag() + r < b.y_min || c.imag() - r > b.y_max) {
        return 0.0;
    }
    double mass = 0.0;
    for (const auto& node : euclid_disk_rule(disk, 64, 128)) {
        mass += node.weight * std::abs(value(node.z));
    }
    return mass;
}

json Density::to_json() const
{
    json j = std::visit(
        Overloaded{
            [](const DiskIndicator& s) {
                return json{{"type", "disk_indicator"},
                            {"center", {s.disk.center().x(), s.disk.center().y()}},
                            {"radius", s.disk.radius()}};
            },
            [](const BoxIndicator& s) {
                return json{{"type", "box_indicator"}, {"box", {s.x0, s.x1, s.y0, s.y1}}};
            },
            [](const Gaussian& s) {
                return json{{"type", "gaussian"},
                            {"center", {s.center.x(), s.center.y()}},
                            {"sigma", {s.sx, s.sy}}};
            },
            [](const Bump& s) {
                return json{{"type", "bump"},
                            {"center", {s.disk.center().x(), s.disk.center().y()}},
                            {"radius", s.disk.radius()}};
            },
            [](const PolyBump& s) {
                return json{{"type", "poly_bump"},
                            {"center", {s.disk.center().x(), s.disk.center().y()}},
                            {"radius", s.disk.radius()},
                            {"exponent", s.exponent}};
            },
            [](const Polynomial& s) {
                return json{{"type", "polynomial"}, {"center", {s.origin.x(), s.origin.y()}}};
            },
        },
        shape_);
    j["amplitude"] = complex_json(amplitude_);
    if (!poly_.empty()) {
        json terms = json::array();
        for (const auto& m : poly_) {
            terms.push_back({m.px, m.py, m.coeff.real(), m.coeff.imag()});
        }
        j["polynomial"] = terms;
    }
    return j;
}

Density Density::from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw ConfigError("density must be an object with a string 'type'");
    }
    const std::string type = j.at("type").get<std::string>();
    static const std::map<std::string, std::set<std::string>> allowed{
        {"disk_indicator", {"center", "radius", "normalized"}},
        {"box_indicator", {"box"}},
        {"gaussian", {"center", "sigma"}},
        {"bump", {"center", "radius"}},
        {"poly_bump", {"center", "radius", "exponent"}},
        {"polynomial", {"center"}},
    };
    const auto found = allowed.find(type);
    if (found == allowed.end()) {
        throw ConfigError("unknown density type '" + type + "'");
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "type" && key != "amplitude" && key != "polynomial" && !found->second.count(key)) {
            throw ConfigError("unknown key '" + key + "' for density type '" + type + "'");
        }
    }
    const Complex amplitude = j.contains("amplitude") ? parse_complex(j.at("amplitude"), "amplitude") : Complex(1.0);
    std::vector<Monomial> poly;
    if (j.contains("polynomial")) {
        for (const auto& t : j.at("polynomial")) {
            if (!(t.is_array() && (t.size() == 3 || t.size() == 4))) {
                throw ConfigError("polynomial terms must be [px, py, re(, im)]");
            }
            poly.push_back({t[0].get<int>(), t[1].get<int>(),
                            {t[2].get<double>(), t.size() == 4 ? t[3].get<double>() : 0.0}});
        }
    }
    auto disk = [&]() {
        try {
            return EuclidDisk(parse_point(j.at("center"), "center"), parse_number(j, "radius"));
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        } catch (const json::out_of_range&) {
            throw ConfigError("density needs a 'center'");
        }
    };
    try {
        if (type == "disk_indicator") {
            const EuclidDisk d = disk();
            const bool normalized = j.value("normalized", false);
            return Density(DiskIndicator{d}, normalized ? amplitude / d.area() : amplitude, std::move(poly));
        }
        if (type == "box_indicator") {
            const auto& b = j.at("box");
            if (!(b.is_array() && b.size() == 4)) {
                throw ConfigError("box must be [x0, x1, y0, y1]");
            }
            return Density(BoxIndicator{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()},
                           amplitude, std::move(poly));
        }
        if (type == "gaussian") {
            const auto& s = j.at("sigma");
            const HalfPlanePoint c = parse_point(j.at("center"), "center");
            if (s.is_number()) {
                return Density(Gaussian{c, s.get<double>(), s.get<double>()}, amplitude, std::move(poly));
            }
            if (!(s.is_array() && s.size() == 2)) {
                throw ConfigError("sigma must be a number or [sx, sy]");
            }
            return Density(Gaussian{c, s[0].get<double>(), s[1].get<double>()}, amplitude, std::move(poly));
        }
        if (type == "bump") {
            return Density(Bump{disk()}, amplitude, std::move(poly));
        }
        if (type == "poly_bump") {
            return Density(PolyBump{disk(), j.at("exponent").get<int>()}, amplitude, std::move(poly));
        }
        return Density(Polynomial{parse_point(j.at("center"), "center")}, amplitude, std::move(poly));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed density: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid density: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// SymbolMeasure

SymbolMeasure& SymbolMeasure::add_atom(const HalfPlanePoint& z, Complex weight)
{
    atoms_.push_back({z, weight});
    return *this;
}

SymbolMeasure& SymbolMeasure::add_line(double height, Complex weight, std::optional<std::pair<double, double>> x_range)
{
    if (!(height > 0.0) || !std::isfinite(height)) {
        throw DomainError("line height must be positive");
    }
    if (x_range && !(x_range->first < x_range->second)) {
        throw DomainError("line x-range must satisfy x0 < x1");
    }
    lines_.push_back({height, weight, x_range});
    return *this;
}

SymbolMeasure& SymbolMeasure::set_density(Density density)
{
    density_ = std::move(density);
    return *this;
}

bool SymbolMeasure::empty() const noexcept
{
    return atoms_.empty() && lines_.empty() && !density_;
}

bool SymbolMeasure::is_positive() const noexcept
{
    const bool atoms_ok = std::all_of(atoms_.begin(), atoms_.end(), [](const auto& a) { return is_real_nonneg(a.weight); });
    const bool lines_ok = std::all_of(lines_.begin(), lines_.end(), [](const auto& l) { return is_real_nonneg(l.weight); });
    return atoms_ok && lines_ok && (!density_ || density_->is_positive());
}

SymbolMeasure SymbolMeasure::scaled(Complex t) const
{
    SymbolMeasure out = *this;
    for (auto& a : out.atoms_) {
        a.weight *= t;
    }
    for (auto& l : out.lines_) {
        l.weight *= t;
    }
    if (out.density_) {
        out.density_ = Density(out.density_->shape(), out.density_->amplitude() * t, out.density_->polynomial_factor());
    }
    return out;
}

bool SymbolMeasure::compact() const noexcept
{
    const bool lines_ok = std::all_of(lines_.begin(), lines_.end(), [](const auto& l) { return l.x_range.has_value(); });
    return lines_ok && (!density_ || density_->has_support());
}

Bounds SymbolMeasure::support() const
{
    if (empty()) {
        throw DomainError("empty measure has no support");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    Bounds b{inf, -inf, inf, -inf};
    auto take_x = [&](double x) {
        b.x_min = std::min(b.x_min, x);
        b.x_max = std::max(b.x_max, x);
    };
    auto take_y = [&](double y) {
        b.y_min = std::min(b.y_min, y);
        b.y_max = std::max(b.y_max, y);
    };
    for (const auto& a : atoms_) {
        take_x(a.z.x());
        take_y(a.z.y());
    }
    for (const auto& l : lines_) {
        take_y(l.height);
        if (l.x_range) {
            take_x(l.x_range->first);
            take_x(l.x_range->second);
        }
    }
    if (density_) {
        const Bounds d = density_->support();
        take_x(d.x_min);
        take_x(d.x_max);
        take_y(d.y_min);
        take_y(d.y_max);
    }
    if (b.x_min > b.x_max) {
        b.x_min = b.x_max = 0.0;
    }
    return b;
}

json SymbolMeasure::to_json() const
{
    json j = json::object();
    json atoms = json::array();
    for (const auto& a : atoms_) {
        atoms.push_back({a.z.x(), a.z.y(), a.weight.real(), a.weight.imag()});
    }
    json lines = json::array();
    for (const auto& l : lines_) {
        json row = {l.height, l.weight.real(), l.weight.imag()};
        if (l.x_range) {
            row.push_back(l.x_range->first);
            row.push_back(l.x_range->second);
        }
        lines.push_back(row);
    }
    j["atoms"] = atoms;
    j["lines"] = lines;
    if (density_) {
        j["density"] = density_->to_json();
    }
    return j;
}

SymbolMeasure SymbolMeasure::from_json(const json& j)
{
    if (!j.is_object()) {
        throw ConfigError("measure description must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "atoms" && key != "lines" && key != "density") {
            throw ConfigError("unknown measure key '" + key + "'");
        }
    }
    auto numbers = [](const json& row, std::size_t min_size, std::size_t max_size, const char* what) {
        if (!row.is_array() || row.size() < min_size || row.size() > max_size) {
            throw ConfigError(std::string(what) + " entries have the wrong length");
        }
        std::vector<double> v;
        for (const auto& e : row) {
            if (!e.is_number()) {
                throw ConfigError(std::string(what) + " entries must be numeric");
            }
            v.push_back(e.get<double>());
            require_finite(v.back(), what);
        }
        return v;
    };
    SymbolMeasure mu;
    if (j.contains("atoms")) {
        for (const auto& row : j.at("atoms")) {
            const auto v = numbers(row, 3, 4, "atoms");
            if (!(v[1] > 0.0)) {
                throw ConfigError("atom with y <= 0");
            }
            mu.add_atom({v[0], v[1]}, {v[2], v.size() == 4 ? v[3] : 0.0});
        }
    }
    if (j.contains("lines")) {
        for (const auto& row : j.at("lines")) {
            const auto v = numbers(row, 2, 5, "lines");
            if (!(v[0] > 0.0)) {
                throw ConfigError("line with y <= 0");
            }
            if (v.size() == 4) {
                throw ConfigError("lines entries are [y, re, im] or [y, re, im, x0, x1]");
            }
            std::optional<std::pair<double, double>> range;
            if (v.size() == 5) {
                if (!(v[3] < v[4])) {
                    throw ConfigError("line x-range must satisfy x0 < x1");
                }
                range = std::pair{v[3], v[4]};
            }
            mu.add_line(v[0], {v[1], v.size() >= 3 ? v[2] : 0.0}, range);
        }
    }
    if (j.contains("density") && !j.at("density").is_null()) {
        mu.set_density(Density::from_json(j.at("density")));
    }
    return mu;
}

SymbolMeasure SymbolMeasure::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open measure file '" + path + "'");
    }
    try {
        return from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("measure file '" + path + "' is not valid JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Masses and Carleson norms

double mass_on_disk(const SymbolMeasure& mu, const PhypDisk& d)
{
    const EuclidDisk b = phyp_to_euclid(d);
    const double cx = b.center().x();
    const double cy = b.center().y();
    const double r = b.radius();
    double mass = 0.0;
    for (const auto& a : mu.atoms()) {
        if (b.contains(a.z, kBoundaryTol)) {
            mass += std::abs(a.weight);
        }
    }
    for (const auto& l : mu.lines()) {
        const double dy = l.height - cy;
        if (std::abs(dy) > r) {
            continue;
        }
        const double half = std::sqrt(std::max(0.0, r * r - dy * dy));
        double lo = cx - half;
        double hi = cx + half;
        if (l.x_range) {
            lo = std::max(lo, l.x_range->first);
            hi = std::min(hi, l.x_range->second);
        }
        mass += std::abs(l.weight) * std::max(0.0, hi - lo);
    }
    if (mu.density()) {
        mass += mu.density()->mass_in(b);
    }
    return mass;
}

namespace {

double level_ratio_log(double step)
{
    return std::log((1.0 + step) / (1.0 - step));
}

double x_spacing(double y, double step)
{
    return 2.0 * y * step / std::sqrt(1.0 - step * step);
}

void validate_grid(const CenterGrid& g)
{
    if (!(g.y_min > 0.0 && g.y_min <= g.y_max && g.x_min <= g.x_max)) {
        throw DomainError("empty center grid");
    }
    if (!(g.step > 0.0 && g.step < 1.0) || !std::isfinite(g.x_min) || !std::isfinite(g.x_max) ||
        !std::isfinite(g.y_max)) {
        throw DomainError("unbounded center grid request");
    }
}

int level_count(const CenterGrid& g)
{
    return 1 + static_cast<int>(std::ceil(std::log(g.y_max / g.y_min) / level_ratio_log(g.step) - 1e-9));
}

double level_height(const CenterGrid& g, int k, int levels)
{
    if (levels == 1) {
        return g.y_min;
    }
    return g.y_min * std::pow(g.y_max / g.y_min, static_cast<double>(k) / (levels - 1));
}

std::int64_t half_columns(const CenterGrid& g, double y)
{
    const double half = 0.5 * (g.x_max - g.x_min);
    return static_cast<std::int64_t>(std::ceil(half / x_spacing(y, g.step) - 1e-9));
}

void require_gamma(double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw DomainError("gamma must lie in (0, 1)");
    }
}

struct Best {
    double value = -1.0;
    HalfPlanePoint z{0.0, 1.0};
};

// Successively finer 5x5 searches around `best`, restricted to centers
// accepted by `admit`.
template <class Admit>
void refine(const SymbolMeasure& mu, HalfInteger k, double gamma, double step, Best& best, std::size_t& evaluated,
            Admit&& admit)
{
    double s = step;
    for (int round = 0; round < 8; ++round) {
        s *= 0.5;
        const double du = level_ratio_log(s);
        const Best centre = best;
        for (int a = -2; a <= 2; ++a) {
            const double y = centre.z.y() * std::exp(a * du);
            const double h = x_spacing(y, s);
            for (int b = -2; b <= 2; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                const HalfPlanePoint z(centre.z.x() + b * h, y);
                if (!admit(z)) {
                    continue;
                }
                const double v = carleson_expression(mu, z, k, gamma);
                ++evaluated;
                if (v > best.value) {
                    best = {v, z};
                }
            }
        }
    }
}

} // namespace

CenterGrid CenterGrid::covering(const SymbolMeasure& mu, double gamma)
{
    require_gamma(gamma);
    CenterGrid g;
    g.step = gamma / 4.0;
    if (mu.empty()) {
        return g;
    }
    const Bounds b = mu.support();
    g.y_min = b.y_min * (1.0 - gamma) / (1.0 + gamma);
    g.y_max = b.y_max * (1.0 + gamma) / (1.0 - gamma);
    const double reach = 2.0 * gamma * g.y_max / (1.0 - gamma * gamma);
    const bool has_x_extent = !mu.atoms().empty() || (mu.density() && mu.density()->has_support()) ||
                              std::any_of(mu.lines().begin(), mu.lines().end(),
                                          [](const LineMass& l) { return l.x_range.has_value(); });
    if (has_x_extent) {
        g.x_min = b.x_min - reach;
        g.x_max = b.x_max + reach;
    } else {
        g.x_min = g.x_max = 0.0;
    }
    return g;
}

CenterGrid CenterGrid::refined() const
{
    CenterGrid g = *this;
    g.step *= 0.5;
    return g;
}

std::size_t CenterGrid::size() const
{
    validate_grid(*this);
    const int levels = level_count(*this);
    double total = 0.0;
    for (int k = 0; k < levels; ++k) {
        total += 2.0 * static_cast<double>(half_columns(*this, level_height(*this, k, levels))) + 1.0;
        if (total > 1e18) {
            break;
        }
    }
    return total > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(total);
}

std::vector<HalfPlanePoint> CenterGrid::centers() const
{
    const std::size_t n = size();
    if (n > max_centers) {
        throw DomainError("center grid of " + std::to_string(n) + " points exceeds the limit of " +
                          std::to_string(max_centers));
    }
    const int levels = level_count(*this);
    const double xc = 0.5 * (x_min + x_max);
    std::vector<HalfPlanePoint> out;
    out.reserve(n);
    for (int k = 0; k < levels; ++k) {
        const double y = level_height(*this, k, levels);
        const std::int64_t m = half_columns(*this, y);
        const double h = x_spacing(y, step);
        for (std::int64_t i = -m; i <= m; ++i) {
            out.emplace_back(xc + static_cast<double>(i) * h, y);
        }
    }
    return out;
}

double carleson_expression(const SymbolMeasure& mu, const HalfPlanePoint& z, HalfInteger k, double gamma)
{
    require_gamma(gamma);
    const double kv = k.value();
    const double mass = mass_on_disk(mu, PhypDisk(z, gamma));
    if (mass == 0.0) {
        return 0.0;
    }
    const double g = std::tgamma(kv + 1.0);
    return mass * std::pow(z.y(), -2.0 * (kv + 1.0)) * g * g * std::pow(gamma, -2.0 * kv);
}

CarlesonReport carleson_norm(const SymbolMeasure& mu, HalfInteger k, double gamma, const CenterGrid& grid)
{
    require_gamma(gamma);
    const auto centers = grid.centers();
    if (centers.empty()) {
        throw DomainError("empty center grid");
    }
    Best best;
    std::size_t evaluated = 0;
    for (const auto& z : centers) {
        const double v = carleson_expression(mu, z, k, gamma);
        ++evaluated;
        if (v > best.value) {
            best = {v, z};
        }
    }
    if (best.value > 0.0) {
        refine(mu, k, gamma, grid.step, best, evaluated, [](const HalfPlanePoint&) { return true; });
    }
    CarlesonReport report;
    report.k = k;
    report.gamma = gamma;
    report.norm = best.value;
    report.argmax_center = best.z;
    report.grid = grid;
    report.evaluated = evaluated;
    return report;
}

CarlesonReport carleson_norm(const SymbolMeasure& mu, HalfInteger k, double gamma)
{
    return carleson_norm(mu, k, gamma, CenterGrid::covering(mu, gamma));
}

std::vector<double> vanishing_profile(const SymbolMeasure& mu, HalfInteger k, double gamma,
                                      const std::vector<double>& R_list, const CenterGrid& grid)
{
    require_gamma(gamma);
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        if (!(R_list[i] > 1.0) || (i > 0 && !(R_list[i] > R_list[i - 1]))) {
            throw DomainError("R values must be increasing and greater than 1");
        }
    }
    const auto centers = grid.centers();
    if (centers.empty()) {
        throw DomainError("empty center grid");
    }
    std::vector<double> values;
    values.reserve(centers.size());
    for (const auto& z : centers) {
        values.push_back(carleson_expression(mu, z, k, gamma));
    }
    std::vector<double> profile;
    for (double R : R_list) {
        auto outside = [R](const HalfPlanePoint& z) {
            return std::abs(z.x()) >= R || z.y() <= 1.0 / R || z.y() >= R;
        };
        Best best;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (outside(centers[i]) && values[i] > best.value) {
                best = {values[i], centers[i]};
            }
        }
        if (best.value > 0.0) {
            std::size_t evaluated = 0;
            refine(mu, k, gamma, grid.step, best, evaluated, outside);
        }
        profile.push_back(std::max(0.0, best.value));
    }
    return profile;
}

std::vector<double> vanishing_profile(const SymbolMeasure& mu, HalfInteger k, double gamma,
                                      const std::vector<double>& R_list)
{
    return vanishing_profile(mu, k, gamma, R_list, CenterGrid::covering(mu, gamma));
}

double rescale_norm(const CarlesonReport& report, HalfInteger l)
{
    const double kv = report.k.value();
    const double lv = l.value();
    const double ratio = std::tgamma(kv + 1.0) / std::tgamma(lv + 1.0);
    return std::pow(report.gamma, 2.0 * (lv - kv)) * ratio * ratio * report.norm;
}

} // namespace bergman
