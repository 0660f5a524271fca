#pragma once

// Truncated Toeplitz operators T_mn = F[phi_n, phi_m] for sesquilinear forms
//
//     F_{alpha,beta,mu}[f, g] = (-1)^{alpha+beta} int d^alpha f conj(d^beta g) dmu,
//
// and the reports built on them (norm against the Carleson bound, singular
// value decay, point-sum bounds).

#include "bergman/basis.hpp"
#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bergman {

/// The symbol as a list of weighted nodes: atoms carry their exact weight,
/// lines and densities are discretized.
struct WeightedNode {
    HalfPlanePoint z;
    Complex weight;
};

/// Nodes of the base measure of `sym`; `line_nodes` overrides spec.line.
std::vector<WeightedNode> symbol_nodes(const SymbolMeasure& mu, const QuadratureSpec& spec, int line_nodes = 0);

Complex form_value(const DerivativeSymbol& sym, int f_index, int g_index, const QuadratureSpec& spec = {});

class TruncatedToeplitz {
public:
    TruncatedToeplitz(std::vector<DerivativeSymbol> terms, Eigen::MatrixXcd entries, bool symmetrized,
                      std::vector<std::string> warnings);

    const std::vector<DerivativeSymbol>& terms() const noexcept { return terms_; }
    int size() const noexcept { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    bool symmetrized() const noexcept { return symmetrized_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    std::vector<double> singular_values() const;
    /// Largest singular value: a lower bound for the operator norm.
    double norm() const;

private:
    std::vector<DerivativeSymbol> terms_;
    Eigen::MatrixXcd entries_;
    bool symmetrized_;
    std::vector<std::string> warnings_;
};

/// N x N truncation in the basis phi_0..phi_{N-1}. Hermitian symmetrization
/// is applied to positive measures with alpha = beta.
TruncatedToeplitz toeplitz_matrix(const DerivativeSymbol& sym, int N, const QuadratureSpec& spec = {});
/// Truncation of the form sum_i F_{terms[i]}.
TruncatedToeplitz toeplitz_matrix(std::span<const DerivativeSymbol> terms, int N, const QuadratureSpec& spec = {});

/// (T phi_f)(z) = F[phi_f, k_z] with k_z(w) = k(w, z), without truncation.
Complex apply_via_kernel(const DerivativeSymbol& sym, int f_index, const HalfPlanePoint& z,
                         const QuadratureSpec& spec = {});

struct BoundednessRow {
    int N;
    double norm;
    double carleson_bound;
    bool verdict;  ///< norm <= carleson_bound (relative slack 1e-9)
};

struct BoundednessReport {
    HalfInteger k;
    double gamma;
    CarlesonReport carleson;
    std::vector<BoundednessRow> rows;

    bool passed() const;
};

/// ||T_N|| against varpi_k(mu) with 2k = alpha + beta.
BoundednessReport boundedness_report(const DerivativeSymbol& sym, const std::vector<int>& N_list, double gamma = 0.5,
                                     const QuadratureSpec& spec = {});
BoundednessReport boundedness_report(const DerivativeSymbol& sym, const std::vector<int>& N_list,
                                     const CarlesonReport& carleson, const QuadratureSpec& spec = {});

struct SpectrumReport {
    std::vector<double> singular_values;
    double floor = 0.0;            ///< values below this are excluded from the fit
    double unreliable_below = 0.0; ///< values below this are numerically unreliable
    std::optional<DecayFit> fit;
    bool degraded = false;         ///< fewer than three values above the floor
};

/// Singular values of T_N and an exponential fit over [first, last], last
/// being the last index above floor_ratio * s_0.
SpectrumReport spectrum_report(const TruncatedToeplitz& t, int first = 1, double floor_ratio = 1e-12);
SpectrumReport spectrum_report(const DerivativeSymbol& sym, int N, const QuadratureSpec& spec = {}, int first = 1,
                               double floor_ratio = 1e-12);

/// Per-point estimate |W| alpha! beta! (gamma/2)^{-(alpha+beta)} y^{-(alpha+beta)}
/// for a sum of single-atom symbols, summed and maximized.
struct PointSumBounds {
    std::vector<double> terms;
    double sum_bound = 0.0;
    double sup_bound = 0.0;
};
PointSumBounds point_sum_bounds(std::span<const DerivativeSymbol> terms, double gamma = 0.5);

void write_boundedness_csv(const std::string& path, const std::vector<BoundednessRow>& rows);
void write_singular_values_csv(const std::string& path, const std::vector<double>& s);

} // namespace bergman
