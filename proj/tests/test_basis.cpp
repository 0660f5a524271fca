#include "bergman/basis.hpp"
#include "bergman/errors.hpp"
#include "test_util.hpp"

#include <numbers>

using namespace bergman;
using std::numbers::pi;

TEST_CASE("kernel values and symmetry")
{
    CHECK(test::close(kernel({0, 1}, {0, 1}), 1 / (4 * pi), 1e-16));
    CHECK(test::close(kernel({0, 2}, {0, 1}), 1 / (9 * pi), 1e-16));
    auto g = test::rng(10);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.1, 3);
    for (int i = 0; i < 200; ++i) {
        const HalfPlanePoint z(ux(g), uy(g)), w(ux(g), uy(g));
        CHECK(test::close(kernel(z, w), std::conj(kernel(w, z)), 1e-14 * std::abs(kernel(z, w))));
    }
}

TEST_CASE("kernel derivatives in the first argument")
{
    const HalfPlanePoint z(0.3, 0.7), w(-1.2, 1.9);
    const Complex d = z.z() - std::conj(w.z());
    for (int a = 0; a <= 6; ++a) {
        const Complex expect = -std::pow(-1.0, a) * factorial(a + 1) / pi * std::pow(d, -(a + 2));
        CHECK(test::close(kernel_deriv(a, z, w), expect, 1e-13 * std::abs(expect)));
    }
    const KernelPoint kz(w);
    CHECK(test::close(kz(z), kernel(z, w), 0.0));
    CHECK(test::close(kz.deriv(2, z), kernel_deriv(2, z, w), 0.0));
}

TEST_CASE("basis values at i")
{
    CHECK(test::close(basis_eval(0, {0, 1}), 0.5 / std::sqrt(pi), 1e-16));
    for (int n = 1; n < 10; ++n) {
        CHECK(std::abs(basis_eval(n, {0, 1})) < 1e-16);
    }
    CHECK_THROWS_AS(basis_eval(-1, {0, 1}), DomainError);
    CHECK_THROWS_AS(basis_deriv(0, -1, {0, 1}), DomainError);
}

TEST_CASE("basis derivatives")
{
    auto g = test::rng(11);
    std::uniform_real_distribution<double> ux(-2, 2), uy(0.3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const HalfPlanePoint z(ux(g), uy(g));
        for (int n : {0, 1, 4, 9}) {
            CHECK(basis_deriv(n, 0, z) == basis_eval(n, z));
            // Central differences along x converge at O(h^2).
            const double h = 1e-5;
            const Complex fd =
                (basis_eval(n, {z.x() + h, z.y()}) - basis_eval(n, {z.x() - h, z.y()})) / (2 * h);
            CHECK(test::close(basis_deriv(n, 1, z), fd, 1e-7 * std::max(1.0, std::abs(fd))));
        }
    }
    // Forward difference for phi_0 at i is accurate to O(h).
    for (double h : {1e-3, 1e-4}) {
        const Complex fd = (basis_eval(0, {h, 1}) - basis_eval(0, {0, 1})) / h;
        CHECK(std::abs(fd - basis_deriv(0, 1, {0, 1})) < 2 * h);
    }
}

TEST_CASE("Cauchy estimates bound the derivatives")
{
    const HalfPlanePoint z(0.4, 1.2);
    const double rho = 0.8;
    for (int n : {0, 3, 7}) {
        double m = 0;
        for (int k = 0; k < 720; ++k) {
            const Complex p = z.z() + rho * std::polar(1.0, 2 * pi * k / 720);
            m = std::max(m, std::abs(basis_eval(n, HalfPlanePoint::from_complex(p))));
        }
        for (int a = 1; a <= 5; ++a) {
            CHECK(std::abs(basis_deriv(n, a, z)) <= factorial(a) * m / std::pow(rho, a) * (1 + 1e-9));
        }
    }
}

TEST_CASE("family derivative table matches single evaluations")
{
    const BasisFamily fam(12);
    const HalfPlanePoint z(-0.6, 0.45);
    const auto t = fam.derivatives(z, 4);
    CHECK(t.rows() == 5);
    CHECK(t.cols() == 12);
    for (int n = 0; n < 12; ++n) {
        for (int a = 0; a <= 4; ++a) {
            CHECK(test::close(t(a, n), basis_deriv(n, a, z), 1e-12 * std::max(1.0, std::abs(t(a, n)))));
        }
    }
    CHECK_THROWS_AS(BasisFamily(0), DomainError);
}

TEST_CASE("Gram matrix is the identity")
{
    const auto G = gram_matrix(30);
    for (int m = 0; m < 30; ++m) {
        for (int n = 0; n < 30; ++n) {
            CHECK(std::abs(G(m, n) - (m == n ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("reproducing property")
{
    for (int ix = -2; ix <= 2; ++ix) {
        for (int iy = 1; iy <= 5; ++iy) {
            const HalfPlanePoint z(0.7 * ix, 0.4 * iy);
            const KernelPoint kz(z);
            for (int n = 0; n <= 20; n += 4) {
                const auto r = inner_product([n](const HalfPlanePoint& w) { return basis_eval(n, w); }, kz);
                CHECK(std::abs(r.value - basis_eval(n, z)) < 1e-8);
            }
        }
    }
}

TEST_CASE("Bergman projection")
{
    const HalfPlanePoint z(0.5, 1.5);
    const auto r = bergman_project([](const HalfPlanePoint& w) { return basis_eval(3, w); }, z);
    CHECK(std::abs(r.value - basis_eval(3, z)) < 1e-6);
    CHECK(r.residual < 1e-6);
    const auto a = bergman_project([](const HalfPlanePoint& w) { return std::conj(basis_eval(1, w)); }, z);
    // Anti-analytic integrands converge slowly; the residual bounds the error and raises the warning.
    CHECK(std::abs(a.value) < a.residual);
    CHECK(a.warning);
    const auto zero = bergman_project([](const HalfPlanePoint&) { return Complex(0); }, z);
    CHECK(zero.value == Complex(0));
}

TEST_CASE("kernel expansion residual is non-increasing")
{
    auto residual = [](const HalfPlanePoint& z, const HalfPlanePoint& w, int N) {
        Complex s = 0;
        for (int n = 0; n < N; ++n) {
            s += basis_eval(n, z) * std::conj(basis_eval(n, w));
        }
        return std::abs(kernel(z, w) - s);
    };
    for (auto [z, w] : {std::pair{HalfPlanePoint(0, 1), HalfPlanePoint(0, 2)},
                        {HalfPlanePoint(0.3, 1.1), HalfPlanePoint(-0.4, 0.8)},
                        {HalfPlanePoint(1.0, 0.5), HalfPlanePoint(0.5, 1.0)}}) {
        double prev = INFINITY;
        for (int N = 1; N <= 80; ++N) {
            const double e = residual(z, w, N);
            CHECK(e <= prev + 1e-15);
            prev = e;
        }
        CHECK(prev < 1e-8 * std::abs(kernel(z, w)));
    }
}
