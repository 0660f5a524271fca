#include "bergman/toeplitz.hpp"

#include "bergman/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace bergman {

namespace {

constexpr double kBoundSlack = 1e-9;

double sign_of(int alpha, int beta)
{
    return ((alpha + beta) % 2 == 0) ? 1.0 : -1.0;
}

void require_symbol(const DerivativeSymbol& sym)
{
    if (sym.alpha < 0 || sym.beta < 0) {
        throw DomainError("derivative orders must be non-negative");
    }
}

// Line integrands are Laurent polynomials in exp(i theta) of degree below
// 2N + 2(alpha + beta) + 8, which the trapezoid rule integrates exactly.
int line_nodes_for(int N, int order, const QuadratureSpec& spec)
{
    return std::max(spec.line, 2 * N + 2 * order + 16);
}

std::vector<WeightedNode> density_nodes(const Density& a, const QuadratureSpec& spec)
{
    std::vector<WeightedNode> out;
    for (const auto& node : a.support_rule(spec)) {
        const Complex v = a.value(node.z);
        if (v != Complex(0.0)) {
            out.push_back({node.z, node.weight * v});
        }
    }
    return out;
}

// sum over nodes of s w conj(d^beta phi_m) d^alpha phi_n into row m, column n
void accumulate(Eigen::MatrixXcd& T, const std::vector<WeightedNode>& nodes, const DerivativeSymbol& sym)
{
    const int N = static_cast<int>(T.rows());
    const BasisFamily basis(N);
    const double s = sign_of(sym.alpha, sym.beta);
    const int order = std::max(sym.alpha, sym.beta);
    for (const auto& node : nodes) {
        const DerivTable d = basis.derivatives(node.z, order);
        const Eigen::VectorXcd fa = d.row(sym.alpha).transpose();
        const Eigen::VectorXcd gb = d.row(sym.beta).transpose().conjugate();
        T.noalias() += (s * node.weight) * (gb * fa.transpose());
    }
}

} // namespace

std::vector<WeightedNode> symbol_nodes(const SymbolMeasure& mu, const QuadratureSpec& spec, int line_nodes)
{
    std::vector<WeightedNode> out;
    for (const auto& a : mu.atoms()) {
        out.push_back({a.z, a.weight});
    }
    const int nodes = line_nodes > 0 ? line_nodes : spec.line;
    for (const auto& l : mu.lines()) {
        for (const auto& node : line_rule(l.height, nodes, l.x_range)) {
            out.push_back({node.z, node.weight * l.weight});
        }
    }
    if (mu.density()) {
        auto d = density_nodes(*mu.density(), spec);
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

Complex form_value(const DerivativeSymbol& sym, int f_index, int g_index, const QuadratureSpec& spec)
{
    require_symbol(sym);
    if (f_index < 0 || g_index < 0) {
        throw DomainError("basis index must be non-negative");
    }
    spec.validate();
    const int order = std::max(sym.alpha, sym.beta);
    const int N = std::max(f_index, g_index) + 1;
    const BasisFamily basis(N);
    Complex acc{};
    for (const auto& node : symbol_nodes(sym.base, spec, line_nodes_for(N, sym.alpha + sym.beta, spec))) {
        const DerivTable d = basis.derivatives(node.z, order);
        acc += node.weight * d(sym.alpha, f_index) * std::conj(d(sym.beta, g_index));
    }
    return sign_of(sym.alpha, sym.beta) * acc;
}

TruncatedToeplitz::TruncatedToeplitz(std::vector<DerivativeSymbol> terms, Eigen::MatrixXcd entries, bool symmetrized,
                                     std::vector<std::string> warnings)
    : terms_(std::move(terms)), entries_(std::move(entries)), symmetrized_(symmetrized), warnings_(std::move(warnings))
{
}

std::vector<double> TruncatedToeplitz::singular_values() const
{
    return svd_values(entries_);
}

double TruncatedToeplitz::norm() const
{
    const auto s = singular_values();
    return s.empty() ? 0.0 : s.front();
}

TruncatedToeplitz toeplitz_matrix(const DerivativeSymbol& sym, int N, const QuadratureSpec& spec)
{
    return toeplitz_matrix(std::span<const DerivativeSymbol>(&sym, 1), N, spec);
}

TruncatedToeplitz toeplitz_matrix(std::span<const DerivativeSymbol> terms, int N, const QuadratureSpec& spec)
{
    if (N < 1) {
        throw DomainError("truncation size must be at least 1");
    }
    spec.validate();
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
    std::vector<std::string> warnings;
    bool hermitian = !terms.empty();
    for (const auto& sym : terms) {
        require_symbol(sym);
        hermitian = hermitian && sym.alpha == sym.beta && sym.base.is_positive();
        SymbolMeasure discrete = sym.base;
        if (sym.base.density()) {
            discrete = SymbolMeasure();
            for (const auto& a : sym.base.atoms()) {
                discrete.add_atom(a.z, a.weight);
            }
            for (const auto& l : sym.base.lines()) {
                discrete.add_line(l.height, l.weight, l.x_range);
            }
        }
        accumulate(T, symbol_nodes(discrete, spec, line_nodes_for(N, sym.alpha + sym.beta, spec)), sym);
        if (sym.base.density()) {
            // density contribution with an a-posteriori check at half resolution
            Eigen::MatrixXcd fine = Eigen::MatrixXcd::Zero(N, N);
            Eigen::MatrixXcd coarse = Eigen::MatrixXcd::Zero(N, N);
            accumulate(fine, density_nodes(*sym.base.density(), spec), sym);
            accumulate(coarse, density_nodes(*sym.base.density(), spec.halved()), sym);
            const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
            const double residual = (fine - coarse).cwiseAbs().maxCoeff();
            if (residual > 1e-8 * scale) {
                warnings.push_back("density quadrature residual " + std::to_string(residual));
            }
            T += fine;
        }
    }
    if (hermitian) {
        const Eigen::MatrixXcd H = 0.5 * (T + T.adjoint());
        T = H;
    }
    return TruncatedToeplitz(std::vector<DerivativeSymbol>(terms.begin(), terms.end()), std::move(T), hermitian,
                             std::move(warnings));
}

Complex apply_via_kernel(const DerivativeSymbol& sym, int f_index, const HalfPlanePoint& z, const QuadratureSpec& spec)
{
    require_symbol(sym);
    if (f_index < 0) {
        throw DomainError("basis index must be non-negative");
    }
    spec.validate();
    const BasisFamily basis(f_index + 1);
    const KernelPoint kz(z);
    Complex acc{};
    const int nodes = line_nodes_for(f_index + 1, sym.alpha + sym.beta, spec);
    for (const auto& node : symbol_nodes(sym.base, spec, nodes)) {
        const Complex f = basis.derivatives(node.z, sym.alpha)(sym.alpha, f_index);
        acc += node.weight * f * std::conj(kz.deriv(sym.beta, node.z));
    }
    return sign_of(sym.alpha, sym.beta) * acc;
}

bool BoundednessReport::passed() const
{
    return std::all_of(rows.begin(), rows.end(), [](const BoundednessRow& r) { return r.verdict; });
}

BoundednessReport boundedness_report(const DerivativeSymbol& sym, const std::vector<int>& N_list, double gamma,
                                     const QuadratureSpec& spec)
{
    return boundedness_report(sym, N_list, carleson_norm(sym.base, sym.k(), gamma), spec);
}

BoundednessReport boundedness_report(const DerivativeSymbol& sym, const std::vector<int>& N_list,
                                     const CarlesonReport& carleson, const QuadratureSpec& spec)
{
    if (!(carleson.k == sym.k())) {
        throw DomainError("Carleson report order does not match alpha + beta");
    }
    BoundednessReport report{sym.k(), carleson.gamma, carleson, {}};
    for (int N : N_list) {
        const double norm = toeplitz_matrix(sym, N, spec).norm();
        const double bound = carleson.norm;
        report.rows.push_back({N, norm, bound, norm <= bound * (1.0 + kBoundSlack) + 1e-300});
    }
    return report;
}

SpectrumReport spectrum_report(const TruncatedToeplitz& t, int first, double floor_ratio)
{
    SpectrumReport r;
    r.singular_values = t.singular_values();
    const auto& s = r.singular_values;
    if (s.empty() || s.front() == 0.0) {
        r.degraded = true;
        return r;
    }
    r.floor = floor_ratio * s.front();
    r.unreliable_below = 1e-13 * s.front();
    int last = -1;
    for (int n = 0; n < static_cast<int>(s.size()); ++n) {
        if (s[static_cast<std::size_t>(n)] > r.floor) {
            last = n;
        } else {
            break;
        }
    }
    if (last - first < 2) {
        r.degraded = true;
        return r;
    }
    r.fit = fit_exponential_decay(s, first, last);
    return r;
}

SpectrumReport spectrum_report(const DerivativeSymbol& sym, int N, const QuadratureSpec& spec, int first,
                               double floor_ratio)
{
    return spectrum_report(toeplitz_matrix(sym, N, spec), first, floor_ratio);
}

PointSumBounds point_sum_bounds(std::span<const DerivativeSymbol> terms, double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw DomainError("gamma must lie in (0, 1)");
    }
    PointSumBounds b;
    for (const auto& sym : terms) {
        require_symbol(sym);
        if (!sym.base.lines().empty() || sym.base.density()) {
            throw DomainError("point-sum bounds need purely atomic symbols");
        }
        const int order = sym.alpha + sym.beta;
        double t = 0.0;
        for (const auto& a : sym.base.atoms()) {
            t += std::abs(a.weight) * factorial(sym.alpha) * factorial(sym.beta) * std::pow(gamma / 2.0, -order) *
                 std::pow(a.z.y(), -order);
        }
        b.terms.push_back(t);
        b.sum_bound += t;
        b.sup_bound = std::max(b.sup_bound, t);
    }
    return b;
}

void write_boundedness_csv(const std::string& path, const std::vector<BoundednessRow>& rows)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << "N,norm,carleson_bound,verdict\n" << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.N << ',' << r.norm << ',' << r.carleson_bound << ',' << (r.verdict ? "PASS" : "FAIL") << '\n';
    }
}

void write_singular_values_csv(const std::string& path, const std::vector<double>& s)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << "n,s_n\n" << std::setprecision(17);
    for (std::size_t n = 0; n < s.size(); ++n) {
        out << n << ',' << s[n] << '\n';
    }
}

} // namespace bergman
