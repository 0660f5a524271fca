#pragma once

// Differential operators with polynomial coefficients in y = Im z, acting on
// symbols a(z). Two equivalent representations:
//
//   regrouped : sum b d^p dbar^pbar (y^m a)
//   normal    : sum c y^m d^p dbar^q a
//
// with the Wirtinger convention d y = -i/2, dbar y = i/2. Weight grading:
// -1 per derivative, +1 per factor y.

#include "bergman/rational.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace bergman {

/// b * d^p dbar^pbar (y^m .)
struct DiffTerm {
    GaussRational b;
    int m = 0;
    int p = 0;
    int pbar = 0;

    int weight() const noexcept { return m - p - pbar; }
    friend bool operator==(const DiffTerm&, const DiffTerm&) = default;
};

/// c * y^m d^p dbar^q
struct NormalTerm {
    GaussRational c;
    int m = 0;
    int p = 0;
    int q = 0;

    int weight() const noexcept { return m - p - q; }
    friend bool operator==(const NormalTerm&, const NormalTerm&) = default;
};

/// coeff * G_lap^s G_dbar^b G_d^c with G_lap = Lap(y^2 .), G_dbar = dbar(y .),
/// G_d = d(y .), Lap = 4 d dbar.
struct GeneratorWord {
    GaussRational coeff;
    int s = 0;
    int b = 0;
    int c = 0;

    int length() const noexcept { return s + b + c; }
};

class DiffOperator {
public:
    DiffOperator() = default;

    static DiffOperator identity();
    static DiffOperator from_regrouped(std::vector<DiffTerm> terms);
    static DiffOperator from_normal(const std::vector<NormalTerm>& terms);
    /// Multiplication by y^m.
    static DiffOperator multiply_y(int m);
    static DiffOperator d();
    static DiffOperator dbar();
    static DiffOperator laplacian();

    /// Regrouped terms, merged, zero-free and sorted by (p + pbar, p, m).
    const std::vector<DiffTerm>& terms() const noexcept { return terms_; }
    std::vector<NormalTerm> normal_form() const;

    bool is_zero() const noexcept { return terms_.empty(); }
    /// Every regrouped term satisfies m = p + pbar and every normal term
    /// has weight zero.
    bool weight_zero() const;
    /// max(p + pbar); -1 for the zero operator.
    int order() const;

    /// Composition (this o other).
    DiffOperator compose(const DiffOperator& other) const;
    DiffOperator operator+(const DiffOperator& other) const;
    DiffOperator operator-(const DiffOperator& other) const;
    DiffOperator operator*(const GaussRational& s) const;
    friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

    /// Expansion as a polynomial in the generators, peeling top-order terms
    /// with canonical words; requires weight zero. The reconstruction is
    /// verified and CalculusError raised on mismatch.
    std::vector<GeneratorWord> generator_polynomial() const;
    /// Largest word length of generator_polynomial().
    int degree() const;

    /// Pairs (m, p, q) of the normal form.
    std::vector<std::array<int, 3>> normal_support() const;

    nlohmann::json to_json() const;
    static DiffOperator from_json(const nlohmann::json& j);
    /// Regrouped form with Laplacians pulled out, e.g.
    /// "4 Lap (y^2 a) - 2i d (y a) + 2i dbar (y a) + a".
    std::string pretty() const;

private:
    std::vector<DiffTerm> terms_;
};

/// d^r dbar^s (y^m) = coefficient * y^{m-r-s}; zero when r + s > m.
GaussRational y_derivative_coefficient(int m, int r, int s);

/// Canonical word operator G_lap^s G_dbar^b G_d^c.
DiffOperator generator_word(int s, int b, int c);

} // namespace bergman
