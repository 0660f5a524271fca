#include "bergman/catalog.hpp"
#include "bergman/errors.hpp"
#include "bergman/measure.hpp"
#include "test_util.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>

using namespace bergman;
using std::numbers::pi;

namespace {

SymbolMeasure atom_at_i()
{
    SymbolMeasure mu;
    mu.add_atom({0, 1}, 1.0);
    return mu;
}

const HalfInteger k0{};

} // namespace

TEST_CASE("half-integers")
{
    CHECK(HalfInteger::from_double(1.5).twice() == 3);
    CHECK(HalfInteger::from_twice(4).value() == 2.0);
    CHECK_THROWS_AS(HalfInteger::from_double(0.3), DomainError);
    CHECK_THROWS_AS(HalfInteger::from_double(-0.5), DomainError);
}

TEST_CASE("mass on pseudo-hyperbolic disks")
{
    CHECK(mass_on_disk(atom_at_i(), PhypDisk({0, 1}, 0.5)) == 1.0);
    CHECK(mass_on_disk(atom_at_i(), PhypDisk({10, 10}, 0.5)) == 0.0);
    SymbolMeasure line;
    line.add_line(1.0, 1.0);
    CHECK(mass_on_disk(line, PhypDisk({0, 1}, 0.5)) == doctest::Approx(2 * std::sqrt(4.0 / 3)).epsilon(1e-14));
    SymbolMeasure seg;
    seg.add_line(1.0, 2.0, std::pair{0.0, 10.0});
    CHECK(mass_on_disk(seg, PhypDisk({0, 1}, 0.5)) == doctest::Approx(2 * std::sqrt(4.0 / 3)).epsilon(1e-14));
    SymbolMeasure neg;
    neg.add_atom({0, 1}, Complex(-3, 4));
    CHECK(mass_on_disk(neg, PhypDisk({0, 1}, 0.5)) == doctest::Approx(5.0));
}

TEST_CASE("density masses")
{
    const EuclidDisk b({0, 3}, 1);
    SymbolMeasure mu;
    mu.set_density(Density::disk_indicator(b, 2.0));
    // B(3i, 1) lies inside D(3i, 0.6), so the mass is the full 2 * area.
    const auto big = phyp_to_euclid(PhypDisk({0, 3}, 0.6));
    REQUIRE(big.radius() > b.radius() + std::abs(big.center().y() - 3.0));
    CHECK(mass_on_disk(mu, PhypDisk({0, 3}, 0.6)) == doctest::Approx(2 * pi).epsilon(1e-12));
    SymbolMeasure nd;
    nd.set_density(Density::normalized_disk(b));
    CHECK(nd.density()->mass_in(big) == doctest::Approx(1.0).epsilon(1e-12));
    SymbolMeasure box;
    box.set_density(Density::box_indicator(-1, 1, 2, 3));
    CHECK(box.density()->mass_in(EuclidDisk({0, 2.5}, 1.9)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("density values and derivatives")
{
    const auto bump = Density::bump(EuclidDisk({0, 2}, 1));
    CHECK(bump.value({0, 2}) == Complex(1.0));
    CHECK(bump.value({0, 3.5}) == Complex(0));
    // Wirtinger derivatives against central differences: d = (d_x - i d_y)/2.
    const HalfPlanePoint z(0.2, 2.3);
    const double h = 1e-5;
    const Complex dx = (bump.value({z.x() + h, z.y()}) - bump.value({z.x() - h, z.y()})) / (2 * h);
    const Complex dy = (bump.value({z.x(), z.y() + h}) - bump.value({z.x(), z.y() - h})) / (2 * h);
    CHECK(test::close(bump.wirtinger(1, 0, z), 0.5 * (dx - Complex(0, 1) * dy), 1e-8));
    CHECK(test::close(bump.wirtinger(0, 1, z), 0.5 * (dx + Complex(0, 1) * dy), 1e-8));
    CHECK(bump.max_order() == Density::kMaxSmoothOrder);
    CHECK_THROWS_AS(bump.jet(z, Density::kMaxSmoothOrder + 1), DomainError);

    const auto ind = Density::disk_indicator(EuclidDisk({0, 2}, 1));
    CHECK(ind.max_order() == 0);
    CHECK_THROWS_AS(ind.wirtinger(1, 0, {0, 2}), DomainError);
    CHECK(Density::poly_bump(EuclidDisk({0, 2}, 1), 3).max_order() == 2);

    const auto g = Density::gaussian({0, 4}, 0.3, 0.3);
    CHECK(g.value({0, 4}) == Complex(1.0));
    CHECK_THROWS_AS(Density::gaussian({0, 1}, 0.3, 0.5), DomainError);
}

TEST_CASE("measure json roundtrip and rejection")
{
    SymbolMeasure mu;
    mu.add_atom({1, 2}, Complex(0.5, -1)).add_line(0.25, 3.0, std::pair{-1.0, 2.0}).add_line(2.0, 1.0);
    mu.set_density(Density::gaussian({0, 3}, 0.2, 0.3, 2.0));
    const auto back = SymbolMeasure::from_json(mu.to_json());
    CHECK(back.to_json() == mu.to_json());
    CHECK(back.atoms().size() == 1);
    CHECK(back.lines().size() == 2);

    using nlohmann::json;
    CHECK_THROWS_AS(SymbolMeasure::from_json(json::parse(R"({"atoms": [[0, -1, 1]]})")), ConfigError);
    CHECK_THROWS_AS(SymbolMeasure::from_json(json::parse(R"({"lines": [[0, 1, 0]]})")), ConfigError);
    CHECK_THROWS_AS(SymbolMeasure::from_json(json::parse(R"({"atom": []})")), ConfigError);
    CHECK_THROWS_AS(SymbolMeasure::from_json(json::parse(R"({"density": {"type": "blob"}})")), ConfigError);
    CHECK_THROWS_AS(SymbolMeasure::from_json(json::parse("[1, 2]")), ConfigError);
    CHECK_THROWS_AS(SymbolMeasure::load("/nonexistent/measure.json"), ConfigError);

    const auto path = std::filesystem::temp_directory_path() / "bergman_measure_test.json";
    std::ofstream(path) << mu.to_json().dump();
    CHECK(SymbolMeasure::load(path.string()).to_json() == mu.to_json());
    std::filesystem::remove(path);
}

TEST_CASE("measure predicates")
{
    SymbolMeasure mu;
    CHECK(mu.empty());
    CHECK_THROWS_AS(mu.support(), DomainError);
    mu.add_atom({0, 1}, 1.0);
    CHECK(mu.is_positive());
    CHECK(mu.compact());
    mu.add_line(0.5, 1.0);
    CHECK_FALSE(mu.compact());
    CHECK_FALSE(mu.scaled(Complex(0, 1)).is_positive());
    CHECK_THROWS_AS(mu.add_line(0.0, 1.0), DomainError);
}

TEST_CASE("Carleson norm of a unit atom at i")
{
    const auto r = carleson_norm(atom_at_i(), k0, 0.5);
    CHECK(r.norm == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(r.argmax_center.y() == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(carleson_expression(atom_at_i(), {0, 1}, k0, 0.5) == 1.0);
    const auto fine = carleson_norm(atom_at_i(), k0, 0.5, CenterGrid::covering(atom_at_i(), 0.5).refined());
    CHECK(fine.norm == doctest::Approx(9.0).epsilon(0.01));
    CHECK(carleson_norm(SymbolMeasure{}, k0, 0.5).norm == 0.0);
    CHECK_THROWS_AS(carleson_norm(atom_at_i(), k0, 1.0), DomainError);
}

TEST_CASE("Carleson norm is monotone under adding positive atoms")
{
    auto g = test::rng(20);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.3, 3), uw(0.1, 2);
    SymbolMeasure mu;
    CenterGrid grid;
    grid.x_min = -6;
    grid.x_max = 6;
    grid.y_min = 0.1;
    grid.y_max = 10;
    CarlesonReport prev;
    for (int i = 0; i < 8; ++i) {
        mu.add_atom({ux(g), uy(g)}, uw(g));
        // Exact at the previous maximizer; the search itself is accurate to a few percent.
        CHECK(carleson_expression(mu, prev.argmax_center, k0, 0.5) >= prev.norm);
        const auto r = carleson_norm(mu, k0, 0.5, grid);
        CHECK(r.norm >= 0.95 * prev.norm);
        prev = r;
    }
}

TEST_CASE("Carleson norm scales linearly with the weights")
{
    const auto mu = catalog::unit_lattice(2, 3);
    const double base = carleson_norm(mu, k0, 0.5).norm;
    for (double t : {0.25, 3.0, 17.5}) {
        CHECK(carleson_norm(mu.scaled(t), k0, 0.5).norm == doctest::Approx(t * base).epsilon(1e-14));
    }
}

TEST_CASE("Carleson norm is stable under grid refinement for the bundled symbols")
{
    const std::vector<std::pair<SymbolMeasure, HalfInteger>> cases{
        {catalog::unit_lattice(), k0},
        {catalog::weighted_lattice(1, 1).base, HalfInteger::from_twice(2)},
        {catalog::decaying_dyadic_lines(10), k0},
        {catalog::area_disk().base, k0},
    };
    for (const auto& [mu, k] : cases) {
        const auto grid = CenterGrid::covering(mu, 0.5);
        const double a = carleson_norm(mu, k, 0.5, grid).norm;
        const double b = carleson_norm(mu, k, 0.5, grid.refined()).norm;
        CHECK(std::isfinite(a));
        CHECK(test::rel(a, b) < 0.1);
    }
}

TEST_CASE("dyadic lines: finite norm independent of depth")
{
    const double a = carleson_norm(catalog::decaying_dyadic_lines(10), k0, 0.5).norm;
    const double b = carleson_norm(catalog::decaying_dyadic_lines(20), k0, 0.5).norm;
    CHECK(std::isfinite(a));
    CHECK(test::rel(a, b) < 1e-6);
}

TEST_CASE("line norms scale as height^-(2k+1)")
{
    for (int twice_k : {0, 1, 2, 4}) {
        const auto k = HalfInteger::from_twice(twice_k);
        SymbolMeasure unit;
        unit.add_line(1.0, 1.0);
        const double base = carleson_norm(unit, k, 0.5).norm;
        for (int j = 1; j <= 4; ++j) {
            SymbolMeasure low;
            low.add_line(std::ldexp(1.0, -j), 1.0);
            const double expect = base * std::pow(2.0, j * (twice_k + 1));
            CHECK(test::rel(carleson_norm(low, k, 0.5).norm, expect) < 1e-3);
        }
    }
}

TEST_CASE("vanishing profiles")
{
    const std::vector<double> R{2, 4, 8, 16};
    const auto compact = vanishing_profile(catalog::area_disk().base, k0, 0.5, R);
    CHECK(compact.back() == 0.0);

    const auto decaying = catalog::weighted_lattice(1, 1, catalog::LatticeDecay::Norm, 12, 12);
    const auto p = vanishing_profile(decaying.base, HalfInteger::from_twice(2), 0.5, R);
    for (std::size_t i = 1; i < p.size(); ++i) {
        CHECK(p[i] <= p[i - 1]);
    }
    CHECK(p.back() < 0.2 * p.front());

    const auto constant = vanishing_profile(catalog::unit_lattice(12, 12), k0, 0.5, {2, 4});
    CHECK(constant.back() > 0.0);
    CHECK_THROWS_AS(vanishing_profile(decaying.base, k0, 0.5, {0.5}), DomainError);
}

TEST_CASE("class rescaling")
{
    CarlesonReport r;
    r.k = k0;
    r.gamma = 0.5;
    r.norm = 1.0;
    CHECK(rescale_norm(r, k0) == 1.0);
    CHECK(rescale_norm(r, HalfInteger::from_twice(2)) == doctest::Approx(0.25).epsilon(1e-15));
    r.k = HalfInteger::from_twice(1);
    CHECK(rescale_norm(r, HalfInteger::from_twice(3)) == doctest::Approx(1.0 / 9).epsilon(1e-14));
}
