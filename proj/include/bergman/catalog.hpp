#pragma once

// Bundled symbols used by the experiments, the acceptance suite and the
// tests.

#include "bergman/measure.hpp"

#include <functional>
#include <vector>

namespace bergman::catalog {

/// Lattice Z + iN truncated to |n1| <= n1_max, 1 <= n2 <= n2_max, with
/// weight(n1, n2) on each point.
SymbolMeasure lattice(int n1_max, int n2_max, const std::function<Complex(int, int)>& weight);

/// Unit weights on the truncated lattice.
SymbolMeasure unit_lattice(int n1_max = 5, int n2_max = 5);

enum class LatticeDecay {
    Height,  ///< W(n) = n2^{-(alpha+beta)}
    Norm,    ///< W(n) = |n|^{-(alpha+beta) - 1}, tends to zero along the lattice
};

/// W(n) d^alpha dbar^beta of the unit lattice.
DerivativeSymbol weighted_lattice(int alpha, int beta, LatticeDecay decay = LatticeDecay::Height, int n1_max = 5,
                                  int n2_max = 5);

/// Point derivatives of mixed orders on the lattice: alpha_n = |n1| mod 3,
/// beta_n = n2 mod 2, W(n) = 2^{-|n1|} (1 + n2)^{-1}.
std::vector<DerivativeSymbol> mixed_point_derivatives(int n1_max = 3, int n2_max = 4);

/// Lines y = 2^{-j}, j = 0..J, with weights W(j).
SymbolMeasure dyadic_lines(int J, const std::function<double(int)>& W);

/// W(j) = 2^{-2j}.
SymbolMeasure decaying_dyadic_lines(int J);

/// W(j) = (j!)^{-2} 32^{-j}.
double summable_weight(int j);

/// Partial sum sum_{j <= J} W(j) d^j (line at 2^{-j}).
std::vector<DerivativeSymbol> derivative_lines(int J);

DerivativeSymbol single_atom(HalfPlanePoint z = {0.0, 1.0}, int alpha = 0, int beta = 0);
DerivativeSymbol single_line(double height = 1.0, int alpha = 0, int beta = 0);
/// Normalized area measure on B(center, radius).
DerivativeSymbol area_disk(HalfPlanePoint center = {0.0, 2.0}, double radius = 0.5);

} // namespace bergman::catalog
