#include "bergman/basis.hpp"
#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "test_util.hpp"

#include <Eigen/QR>

#include <numbers>

using namespace bergman;

namespace {

HalfPlaneFunction phi(int n)
{
    return [n](const HalfPlanePoint& z) { return basis_eval(n, z); };
}

Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& g)
{
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = Complex(nd(g), nd(g));
        }
    }
    return Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
}

} // namespace

TEST_CASE("quadrature spec validation")
{
    QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    CHECK(s.radial == 128);
    CHECK(s.angular == 256);
    const auto h = s.halved();
    CHECK(h.radial == 64);
    CHECK(h.angular == 128);
    s.radial = 4;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = {};
    s.truncation = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly")
{
    const auto& gl = gauss_legendre(10);
    double sum_w = 0;
    double x18 = 0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        sum_w += gl.w[i];
        x18 += gl.w[i] * std::pow(gl.x[i], 18);
    }
    CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x18 == doctest::Approx(2.0 / 19).epsilon(1e-14));
    CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
}

TEST_CASE("disk rules measure areas")
{
    const EuclidDisk b({1, 3}, 0.5);
    double area = 0;
    for (const auto& n : euclid_disk_rule(b, 16, 32)) {
        area += n.weight;
    }
    CHECK(area == doctest::Approx(b.area()).epsilon(1e-14));
    double box = 0;
    for (const auto& n : box_rule(0, 2, 1, 4, 8, 8)) {
        box += n.weight;
    }
    CHECK(box == doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS_AS(box_rule(1, 0, 1, 2, 8, 8), DomainError);
}

TEST_CASE("inner products of basis functions")
{
    CHECK(test::close(inner_product(phi(0), phi(0)).value, 1.0, 1e-10));
    CHECK(std::abs(inner_product(phi(1), phi(2)).value) < 1e-10);
    const auto zero = [](const HalfPlanePoint&) { return Complex(0); };
    CHECK(std::abs(inner_product(zero, phi(3)).value) == 0.0);
    const auto r = inner_product(phi(4), phi(4));
    CHECK(r.residual < 1e-10);
    CHECK_FALSE(r.warning);
}

TEST_CASE("inner products are stable under node doubling")
{
    QuadratureSpec coarse{64, 128, 256};
    QuadratureSpec fine{128, 256, 512};
    for (auto [n, m] : {std::pair{0, 0}, {2, 5}, {7, 7}, {3, 9}}) {
        const Complex a = inner_product(phi(n), phi(m), coarse).value;
        const Complex b = inner_product(phi(n), phi(m), fine).value;
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("line rule integrates basis products exactly for any height")
{
    for (double h : {0.01, 0.5, 1.0, 8.0}) {
        auto integral = [&](int nodes) {
            return integrate(line_rule(h, nodes),
                             [](const HalfPlanePoint& z) { return basis_eval(3, z) * std::conj(basis_eval(5, z)); });
        };
        CHECK(std::abs(integral(64) - integral(128)) < 1e-14 * std::max(1.0, std::abs(integral(128))));
    }
    CHECK_THROWS_AS(line_rule(0.0, 16), DomainError);
    CHECK_THROWS_AS(line_rule(1.0, 16, std::pair{1.0, 0.0}), DomainError);
    // Finite segment: Gauss-Legendre on the image of [a, b] measures its length.
    double len = 0;
    for (const auto& n : line_rule(2.0, 16, std::pair{-1.0, 3.0})) {
        len += n.weight;
    }
    CHECK(len == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("singular values")
{
    CHECK(svd_values(Eigen::MatrixXcd::Zero(3, 3)) == std::vector<double>{0, 0, 0});
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 4;
    const auto s = svd_values(d);
    CHECK(s[0] == doctest::Approx(4));
    CHECK(s[1] == doctest::Approx(3));

    Eigen::VectorXcd u(3), v(3);
    u << Complex(1, 2), 3, Complex(0, -1);
    v << 2, Complex(1, 1), 0.5;
    const auto r1 = svd_values(u * v.adjoint());
    CHECK(r1[0] == doctest::Approx(u.norm() * v.norm()).epsilon(1e-14));
    CHECK(r1[1] < 1e-14);
    CHECK(r1[2] < 1e-14);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 1) = NAN;
    CHECK_THROWS_AS(svd_values(bad), NumericRangeError);
}

TEST_CASE("singular values are unitarily invariant")
{
    auto g = test::rng(4);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXcd a(6, 6);
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                a(i, j) = Complex(nd(g), nd(g));
            }
        }
        const auto s = svd_values(a);
        const auto t = svd_values(random_unitary(6, g) * a * random_unitary(6, g));
        for (int i = 0; i < 6; ++i) {
            CHECK(std::abs(s[i] - t[i]) < 1e-10);
        }
    }
}

TEST_CASE("exponential decay fit")
{
    std::vector<double> s(30);
    for (int n = 0; n < 30; ++n) {
        s[n] = std::exp(-0.7 * n);
    }
    auto f = fit_exponential_decay(s, 0, 29);
    CHECK(f.sigma == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(f.C == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.residual < 1e-12);

    auto g = test::rng(5);
    std::uniform_real_distribution<double> noise(-1, 1);
    for (auto& v : s) {
        v *= 1 + 0.01 * noise(g);
    }
    f = fit_exponential_decay(s, 0, 29);
    CHECK(std::abs(f.sigma - 0.7) < 0.02);

    std::vector<double> flat(10, 2.5);
    f = fit_exponential_decay(flat, 0, 9);
    CHECK(std::abs(f.sigma) < 1e-14);
    CHECK_THROWS_AS(fit_exponential_decay(flat, 3, 3), DomainError);
    flat[4] = 0;
    CHECK_THROWS_AS(fit_exponential_decay(flat, 0, 9), DomainError);
}

TEST_CASE("excluding the numerical floor improves the fit")
{
    std::vector<double> s;
    for (int n = 0; n < 40; ++n) {
        s.push_back(std::max(std::exp(-1.1 * n), 1e-16 * (1 + 0.5 * (n % 3))));
    }
    int last = 0;
    while (last + 1 < static_cast<int>(s.size()) && s[last + 1] > 1e-12 * s[0]) {
        ++last;
    }
    const auto clean = fit_exponential_decay(s, 1, last);
    const auto dirty = fit_exponential_decay(s, 1, 39);
    CHECK(clean.residual < dirty.residual);
    CHECK(clean.sigma == doctest::Approx(1.1).epsilon(1e-10));
}
