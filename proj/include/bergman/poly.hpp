#pragma once

// Polyanalytic calculus: creation operators S^j u = d^j[(z - zbar)^j u] / j!,
// the integration-by-parts engine that turns <a S^j f, S^j g> into
// <(K_(j) a) f, g>, and numerical certification of that identity.

#include "bergman/diffop.hpp"
#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rational.hpp"

#include <Eigen/Dense>

#include <map>
#include <tuple>
#include <vector>

namespace bergman {

/// Analytic factor of a PolyFunction term.
struct AnalyticFactor {
    static constexpr int kFormal = -1;  ///< a generic analytic u
    static constexpr int kOne = -2;     ///< the constant 1

    int index = kFormal;  ///< basis index n >= 0, or kFormal / kOne
    int order = 0;        ///< derivative order

    friend auto operator<=>(const AnalyticFactor&, const AnalyticFactor&) = default;
};

/// Finite sum of c (z - zbar)^d * d^k u.
class PolyFunction {
public:
    using Key = std::pair<int, AnalyticFactor>;  // (d, factor)

    PolyFunction() = default;
    static PolyFunction basis(int n);
    static PolyFunction formal();
    static PolyFunction one();
    static PolyFunction term(GaussRational c, int d, AnalyticFactor u);

    const std::map<Key, GaussRational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    PolyFunction& operator+=(const PolyFunction& o);
    PolyFunction operator+(const PolyFunction& o) const;
    PolyFunction operator*(const GaussRational& s) const;
    friend bool operator==(const PolyFunction&, const PolyFunction&) = default;

    /// d of the whole function, with d(z - zbar) = 1.
    PolyFunction d() const;
    /// Multiplication by (z - zbar)^e.
    PolyFunction times_zz(int e) const;

    /// Numerical value; requires basis-index factors (or the constant 1).
    Complex eval(const HalfPlanePoint& z) const;
    std::string str() const;

private:
    void add(const Key& key, const GaussRational& c);
    std::map<Key, GaussRational> terms_;
};

/// S^j u by the closed form d^j[(z - zbar)^j u] / j!, Leibniz-expanded.
PolyFunction apply_creation(const PolyFunction& u, int j);

/// (S_1)(S_1 + 1)...(S_1 + j - 1) u with S_1 the j = 1 closed form. Equals
/// j! apply_creation(u, j) identically.
PolyFunction rising_creation(const PolyFunction& u, int j);

/// Half-plane rule sized for S^j phi_n products.
Rule creation_rule(int n_max, int j);

/// |<S^j phi_n, S^j phi_n>^{1/2} - 1|.
double creation_isometry_residual(int n, int j);
/// <S^j phi_n, S^k phi_m>.
Complex creation_inner_product(int n, int j, int m, int k);

// ---------------------------------------------------------------------------
// Integration-by-parts engine

enum class Route {
    /// Expand both creation operators by Leibniz, then move every d off f
    /// and every dbar off conj(g).
    Symmetric,
    /// Move the derivatives of S^j f across a first (reverse Leibniz), carry
    /// them to the conj(g) side, then move the dbar's back; terms keep the
    /// label r of the d^r falling on a.
    Grouped,
};

/// c y^m d^p dbar^q a, tagged with its group label (-1 when ungrouped).
struct KTerm {
    GaussRational c;
    int m;
    int p;
    int q;
    int group;
};

struct KDerivation {
    int j = 0;
    Route route = Route::Symmetric;
    std::vector<KTerm> terms;          ///< merged normal-form terms
    std::size_t rewrite_steps = 0;     ///< integration-by-parts applications
    std::size_t peak_terms = 0;

    DiffOperator total() const;
    /// Terms of group r as an operator.
    DiffOperator group(int r) const;
};

/// Runs the engine; throws CalculusError when the term count exceeds
/// `max_terms` or a derivative survives on f or conj(g).
KDerivation derive_K_terms(int j, Route route = Route::Symmetric, std::size_t max_terms = 200000);

/// K_(j) with <a S^j f, S^j g> = <(K_(j) a) f, g> for analytic f, g.
DiffOperator derive_K(int j);

/// Closed form sum_{l,l' <= j} c_l c_l' (-2i)^l (2i)^l' d^l dbar^l' (y^{l+l'} .),
/// c_l = binom(j, l) / l!.
DiffOperator closed_form_K(int j);

/// The three j = 2 group operators as stated in the reference derivation:
/// 1/2 dbar^2(y^2 a), y(2 d a + 2 y dbar d a + y^2 dbar^2 d a) and
/// y^2 dbar^2(y^2 a).
std::vector<DiffOperator> k2_reference_groups();

/// Set of (m, p, q) monomials of the normal form.
std::vector<std::array<int, 3>> term_set(const DiffOperator& op);

/// Pointwise (K a)(z) through the density's Taylor jets.
Complex apply_diffop(const DiffOperator& K, const Density& a, const HalfPlanePoint& z);

struct EquivalenceResult {
    double residual = 0.0;  ///< ||A - c B||_F / ||A||_F (0 when A = 0)
    Complex c{1.0, 0.0};    ///< least-squares scalar
    double norm_A = 0.0;
    double norm_B = 0.0;
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
};

/// A_mn = <a S^j phi_n, S^j phi_m>, B_mn = <(K_(j) a) phi_n, phi_m> on the
/// support of a; throws CalculusError when B vanishes while A does not.
EquivalenceResult equivalence_residual(const Density& a, int j, int N, const QuadratureSpec& spec = {});
EquivalenceResult equivalence_residual(const Density& a, const DiffOperator& K, int j, int N,
                                       const QuadratureSpec& spec = {});

/// A_mn = int S^j phi_n conj(S^j phi_m) dmu.
Eigen::MatrixXcd poly_toeplitz_matrix(const SymbolMeasure& mu, int j, int N, const QuadratureSpec& spec = {});

} // namespace bergman
