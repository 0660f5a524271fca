#include "bergman/catalog.hpp"

#include "bergman/errors.hpp"
#include "bergman/jet.hpp"

#include <cmath>

namespace bergman::catalog {

SymbolMeasure lattice(int n1_max, int n2_max, const std::function<Complex(int, int)>& weight)
{
    if (n1_max < 0 || n2_max < 1) {
        throw DomainError("lattice needs n1_max >= 0 and n2_max >= 1");
    }
    SymbolMeasure mu;
    for (int n1 = -n1_max; n1 <= n1_max; ++n1) {
        for (int n2 = 1; n2 <= n2_max; ++n2) {
            mu.add_atom({static_cast<double>(n1), static_cast<double>(n2)}, weight(n1, n2));
        }
    }
    return mu;
}

SymbolMeasure unit_lattice(int n1_max, int n2_max)
{
    return lattice(n1_max, n2_max, [](int, int) { return Complex(1.0); });
}

DerivativeSymbol weighted_lattice(int alpha, int beta, LatticeDecay decay, int n1_max, int n2_max)
{
    const int order = alpha + beta;
    auto weight = [&](int n1, int n2) {
        if (decay == LatticeDecay::Height) {
            return Complex(std::pow(n2, -order));
        }
        return Complex(std::pow(std::hypot(n1, n2), -order - 1));
    };
    return {lattice(n1_max, n2_max, weight), alpha, beta};
}

std::vector<DerivativeSymbol> mixed_point_derivatives(int n1_max, int n2_max)
{
    std::vector<DerivativeSymbol> out;
    for (int n1 = -n1_max; n1 <= n1_max; ++n1) {
        for (int n2 = 1; n2 <= n2_max; ++n2) {
            SymbolMeasure mu;
            mu.add_atom({static_cast<double>(n1), static_cast<double>(n2)},
                        std::ldexp(1.0, -std::abs(n1)) / (1.0 + n2));
            out.push_back({mu, std::abs(n1) % 3, n2 % 2});
        }
    }
    return out;
}

SymbolMeasure dyadic_lines(int J, const std::function<double(int)>& W)
{
    if (J < 0) {
        throw DomainError("line count must be non-negative");
    }
    SymbolMeasure mu;
    for (int j = 0; j <= J; ++j) {
        mu.add_line(std::ldexp(1.0, -j), W(j));
    }
    return mu;
}

SymbolMeasure decaying_dyadic_lines(int J)
{
    return dyadic_lines(J, [](int j) { return std::ldexp(1.0, -2 * j); });
}

double summable_weight(int j)
{
    const double f = factorial(j);
    return std::pow(32.0, -j) / (f * f);
}

std::vector<DerivativeSymbol> derivative_lines(int J)
{
    std::vector<DerivativeSymbol> out;
    for (int j = 0; j <= J; ++j) {
        SymbolMeasure mu;
        mu.add_line(std::ldexp(1.0, -j), summable_weight(j));
        out.push_back({mu, j, 0});
    }
    return out;
}

DerivativeSymbol single_atom(HalfPlanePoint z, int alpha, int beta)
{
    SymbolMeasure mu;
    mu.add_atom(z, 1.0);
    return {mu, alpha, beta};
}

DerivativeSymbol single_line(double height, int alpha, int beta)
{
    SymbolMeasure mu;
    mu.add_line(height, 1.0);
    return {mu, alpha, beta};
}

DerivativeSymbol area_disk(HalfPlanePoint center, double radius)
{
    SymbolMeasure mu;
    mu.set_density(Density::normalized_disk(EuclidDisk(center, radius)));
    return {mu, 0, 0};
}

} // namespace bergman::catalog
