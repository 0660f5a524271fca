#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "test_util.hpp"

#include <numbers>

using namespace bergman;
using std::numbers::pi;

TEST_CASE("pseudo-hyperbolic distance values")
{
    CHECK(phyp_distance({0, 1}, {0, 1}) == 0.0);
    CHECK(phyp_distance({0, 1}, {0, 3}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phyp_distance({1, 1}, {-1, 1}) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("distance is symmetric, in [0,1), zero only on the diagonal")
{
    auto g = test::rng(1);
    std::uniform_real_distribution<double> ux(-4, 4), uy(0.05, 6);
    for (int i = 0; i < 500; ++i) {
        const HalfPlanePoint z(ux(g), uy(g)), w(ux(g), uy(g));
        const double d = phyp_distance(z, w);
        CHECK(d == doctest::Approx(phyp_distance(w, z)).epsilon(1e-14));
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        CHECK(d > 0.0);
    }
}

TEST_CASE("disk conversion examples")
{
    const auto b = phyp_to_euclid(PhypDisk({0, 1}, 0.5));
    CHECK(b.center().x() == 0.0);
    CHECK(b.center().y() == doctest::Approx(5.0 / 3).epsilon(1e-15));
    CHECK(b.radius() == doctest::Approx(4.0 / 3).epsilon(1e-15));
    CHECK(b.area() == doctest::Approx(16 * pi / 9).epsilon(1e-15));
    CHECK(phyp_area(PhypDisk({0, 1}, 0.5)) == doctest::Approx(16 * pi / 9).epsilon(1e-15));

    const auto d = euclid_to_phyp(EuclidDisk({0, 5.0 / 3}, 4.0 / 3));
    CHECK(d.center().y() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.radius() == doctest::Approx(0.5).epsilon(1e-14));

    const auto e = euclid_to_phyp(EuclidDisk({0, 2}, 1));
    const double R = 2 - std::sqrt(3.0);
    CHECK(e.radius() == doctest::Approx(R).epsilon(1e-14));
    CHECK(e.center().y() == doctest::Approx((1 - R * R) / (1 + R * R) * 2).epsilon(1e-14));
}

TEST_CASE("small radius shrinks to the center")
{
    const auto b = phyp_to_euclid(PhypDisk({0.3, 2}, 1e-9));
    CHECK(std::abs(b.center().z() - Complex(0.3, 2)) < 1e-15);
    CHECK(b.radius() < 1e-8);
    CHECK(phyp_area(PhypDisk({0.3, 2}, 1e-9)) < 1e-16);
}

TEST_CASE("roundtrip, membership and area consistency on random disks")
{
    auto g = test::rng(2);
    std::uniform_real_distribution<double> ux(-5, 5), ly(std::log(0.01), std::log(100.0)), uR(0.001, 0.99),
        u01(0, 1);
    for (int i = 0; i < 1000; ++i) {
        const HalfPlanePoint z0(ux(g), std::exp(ly(g)));
        const PhypDisk d(z0, uR(g));
        const auto b = phyp_to_euclid(d);
        const auto back = euclid_to_phyp(b);
        CHECK(std::abs(back.radius() - d.radius()) < 1e-12);
        // Conditioning degrades like 1/(1 - R^2) as the radius approaches 1.
        CHECK(std::abs(back.center().z() - z0.z()) / z0.y() < 1e-13 / (1 - d.radius() * d.radius()));
        CHECK(phyp_area(d) == doctest::Approx(pi * b.radius() * b.radius()).epsilon(1e-14));

        const double rho = 1.4 * b.radius() * std::sqrt(u01(g));
        const double th = 2 * pi * u01(g);
        const double wy = b.center().y() + rho * std::sin(th);
        if (wy <= 0) {
            continue;
        }
        const HalfPlanePoint w(b.center().x() + rho * std::cos(th), wy);
        const double dist = phyp_distance(z0, w);
        if (std::abs(dist - d.radius()) > 1e-12) {
            CHECK((dist < d.radius()) == b.contains(w));
        }
    }
}

TEST_CASE("Euclidean image scales linearly in y")
{
    const double R = 0.37;
    const auto b1 = phyp_to_euclid(PhypDisk({1.5, 1.0}, R));
    for (double t : {0.1, 2.0, 7.5}) {
        const auto bt = phyp_to_euclid(PhypDisk({1.5, t}, R));
        CHECK(bt.center().y() == doctest::Approx(t * b1.center().y()).epsilon(1e-14));
        CHECK(bt.radius() == doctest::Approx(t * b1.radius()).epsilon(1e-14));
        CHECK(bt.center().x() == 1.5);
    }
}

TEST_CASE("Mobius transfer")
{
    CHECK(std::abs(mobius_to_disk({0, 1})) < 1e-16);
    CHECK(mobius_to_halfplane(0.0) == HalfPlanePoint(0, 1));
    CHECK(std::abs(mobius_to_disk({0, 2}) - Complex(0, 1.0 / 3)) < 1e-15);

    auto g = test::rng(3);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.1, 4);
    for (int i = 0; i < 1000; ++i) {
        const HalfPlanePoint z(ux(g), uy(g)), w(ux(g), uy(g));
        const auto zeta = mobius_to_disk(z);
        CHECK(std::abs(zeta) < 1.0);
        CHECK(std::abs(mobius_to_halfplane(zeta).z() - z.z()) < 1e-12 * std::max(1.0, std::abs(z.z())));
        CHECK(std::abs(phyp_distance(z, w) - disk_phyp_distance(zeta, mobius_to_disk(w))) < 1e-12);
    }
}

TEST_CASE("invalid geometry is rejected")
{
    CHECK_THROWS_AS(HalfPlanePoint(0, 0), DomainError);
    CHECK_THROWS_AS(HalfPlanePoint(0, -1), DomainError);
    CHECK_THROWS_AS(HalfPlanePoint(NAN, 1), DomainError);
    CHECK_THROWS_AS(PhypDisk({0, 1}, 1.0), DomainError);
    CHECK_THROWS_AS(PhypDisk({0, 1}, 0.0), DomainError);
    CHECK_THROWS_AS(EuclidDisk({0, 1}, 1.0), DomainError);
    CHECK_THROWS_AS(EuclidDisk({0, 1}, -0.1), DomainError);
    CHECK_THROWS_AS(mobius_to_halfplane(1.0), DomainError);
}
