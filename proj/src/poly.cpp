#include "bergman/poly.hpp"

#include "bergman/basis.hpp"
#include "bergman/errors.hpp"
#include "bergman/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bergman {

namespace {

const Complex kI(0.0, 1.0);

// binom(j, l) / l!, the coefficients of S^j u = sum_l c_l (z - zbar)^l d^l u
std::vector<double> creation_coefficients(int j)
{
    std::vector<double> c(static_cast<std::size_t>(j + 1));
    for (int l = 0; l <= j; ++l) {
        c[static_cast<std::size_t>(l)] = static_cast<double>(binomial(j, l)) / factorial(l);
    }
    return c;
}

// S^j phi_n(z) for n < table.cols() from a derivative table of order >= j.
Eigen::VectorXcd creation_values(const DerivTable& table, double y, int j)
{
    const auto c = creation_coefficients(j);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(table.cols());
    Complex zz(1.0);
    for (int l = 0; l <= j; ++l) {
        out += (c[static_cast<std::size_t>(l)] * zz) * table.row(l).transpose();
        zz *= Complex(0.0, 2.0 * y);
    }
    return out;
}

void require_j(int j)
{
    if (j < 0) {
        throw DomainError("creation power must be non-negative");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// PolyFunction

PolyFunction PolyFunction::basis(int n)
{
    if (n < 0) {
        throw DomainError("basis index must be non-negative");
    }
    return term(GaussRational(1), 0, {n, 0});
}

PolyFunction PolyFunction::formal()
{
    return term(GaussRational(1), 0, {AnalyticFactor::kFormal, 0});
}

PolyFunction PolyFunction::one()
{
    return term(GaussRational(1), 0, {AnalyticFactor::kOne, 0});
}

PolyFunction PolyFunction::term(GaussRational c, int d, AnalyticFactor u)
{
    if (d < 0 || u.order < 0) {
        throw DomainError("exponents must be non-negative");
    }
    PolyFunction f;
    f.add({d, u}, c);
    return f;
}

void PolyFunction::add(const Key& key, const GaussRational& c)
{
    if (c.is_zero()) {
        return;
    }
    if (key.second.index == AnalyticFactor::kOne && key.second.order > 0) {
        return;
    }
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o)
{
    for (const auto& [key, c] : o.terms_) {
        add(key, c);
    }
    return *this;
}

PolyFunction PolyFunction::operator+(const PolyFunction& o) const
{
    PolyFunction out = *this;
    out += o;
    return out;
}

PolyFunction PolyFunction::operator*(const GaussRational& s) const
{
    PolyFunction out;
    for (const auto& [key, c] : terms_) {
        out.add(key, c * s);
    }
    return out;
}

PolyFunction PolyFunction::d() const
{
    PolyFunction out;
    for (const auto& [key, c] : terms_) {
        const auto& [deg, u] = key;
        if (deg > 0) {
            out.add({deg - 1, u}, c * GaussRational(deg));
        }
        out.add({deg, {u.index, u.order + 1}}, c);
    }
    return out;
}

PolyFunction PolyFunction::times_zz(int e) const
{
    PolyFunction out;
    for (const auto& [key, c] : terms_) {
        out.add({key.first + e, key.second}, c);
    }
    return out;
}

Complex PolyFunction::eval(const HalfPlanePoint& z) const
{
    int max_index = 0;
    int max_order = 0;
    for (const auto& [key, c] : terms_) {
        if (key.second.index == AnalyticFactor::kFormal) {
            throw DomainError("a formal function has no numerical value");
        }
        max_index = std::max(max_index, key.second.index);
        max_order = std::max(max_order, key.second.order);
    }
    if (terms_.empty()) {
        return 0.0;
    }
    const DerivTable table = BasisFamily(max_index + 1).derivatives(z, max_order);
    const Complex zz(0.0, 2.0 * z.y());
    Complex acc{};
    for (const auto& [key, c] : terms_) {
        const auto& [deg, u] = key;
        const Complex v = u.index == AnalyticFactor::kOne ? Complex(1.0) : table(u.order, u.index);
        acc += c.to_complex() * std::pow(zz, deg) * v;
    }
    return acc;
}

std::string PolyFunction::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        const auto& [deg, u] = key;
        std::vector<std::string> parts;
        if (!(c == GaussRational(1))) {
            parts.push_back(c.str());
        }
        if (deg > 0) {
            parts.push_back(deg > 1 ? "(z-zbar)^" + std::to_string(deg) : "(z-zbar)");
        }
        if (u.order > 0) {
            parts.push_back(u.order > 1 ? "d^" + std::to_string(u.order) : "d");
        }
        const std::string name = u.index == AnalyticFactor::kFormal ? "u"
                                 : u.index == AnalyticFactor::kOne  ? "1"
                                                                    : "phi_" + std::to_string(u.index);
        if (parts.empty() || u.index != AnalyticFactor::kOne) {
            parts.push_back(name);
        }
        out << (first ? "" : " + ");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            out << (i ? " " : "") << parts[i];
        }
        first = false;
    }
    return out.str();
}

PolyFunction apply_creation(const PolyFunction& u, int j)
{
    require_j(j);
    PolyFunction v = u.times_zz(j);
    for (int k = 0; k < j; ++k) {
        v = v.d();
    }
    return v * GaussRational(Rational(1, factorial_exact(j)));
}

PolyFunction rising_creation(const PolyFunction& u, int j)
{
    require_j(j);
    PolyFunction r = u;
    for (int t = j - 1; t >= 0; --t) {
        r = r.times_zz(1).d() + r * GaussRational(t);
    }
    return r;
}

Rule creation_rule(int n_max, int j)
{
    const int degree = n_max + 2 * j;
    return halfplane_rule(std::max(64, 2 * degree + 32), std::max(128, 4 * degree + 64));
}

Complex creation_inner_product(int n, int j, int m, int k)
{
    require_j(j);
    require_j(k);
    if (n < 0 || m < 0) {
        throw DomainError("basis index must be non-negative");
    }
    const int size = std::max(n, m) + 1;
    const int order = std::max(j, k);
    const BasisFamily basis(size);
    Complex acc{};
    for (const auto& node : creation_rule(size - 1, order)) {
        const DerivTable t = basis.derivatives(node.z, order);
        const Eigen::VectorXcd sj = creation_values(t, node.z.y(), j);
        const Eigen::VectorXcd sk = creation_values(t, node.z.y(), k);
        acc += node.weight * sj(n) * std::conj(sk(m));
    }
    return acc;
}

double creation_isometry_residual(int n, int j)
{
    require_j(j);
    if (j == 0) {
        // S^0 is the identity and the basis is normalized in closed form
        return 0.0;
    }
    const Complex nn = creation_inner_product(n, j, n, j);
    return std::abs(std::sqrt(nn.real()) - 1.0);
}

// ---------------------------------------------------------------------------
// Integration-by-parts engine

namespace {

enum class Kind { A, F, G, Y };

struct Atom {
    Kind kind;
    int p = 0;
    int q = 0;
    int m = 0;
};

struct Factor {
    int dp = 0;
    int dq = 0;
    std::vector<Atom> atoms;
};

// (group, m, ap, aq, fp, gq)
using MonoKey = std::tuple<int, int, int, int, int, int>;
using MonoMap = std::map<MonoKey, GaussRational>;

struct State {
    GaussRational c;
    int m = 0;
    int ap = 0, aq = 0, fp = 0, gq = 0;
    int a_count = 0, f_count = 0, g_count = 0;
};

void add_mono(MonoMap& map, const MonoKey& key, const GaussRational& c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = map.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            map.erase(it);
        }
    }
}

// Applies d^p dbar^q to a single atom and folds it into the state; false
// when the result vanishes.
bool absorb(State& s, const Atom& a, int p, int q)
{
    switch (a.kind) {
    case Kind::Y: {
        const GaussRational k = y_derivative_coefficient(a.m, p, q);
        if (k.is_zero()) {
            return false;
        }
        s.c *= k;
        s.m += a.m - p - q;
        return true;
    }
    case Kind::F:
        if (a.q + q > 0) {
            return false;  // dbar f = 0
        }
        s.fp += a.p + p;
        ++s.f_count;
        return true;
    case Kind::G:
        if (a.p + p > 0) {
            return false;  // d conj(g) = 0
        }
        s.gq += a.q + q;
        ++s.g_count;
        return true;
    case Kind::A:
        s.ap += a.p + p;
        s.aq += a.q + q;
        ++s.a_count;
        return true;
    }
    return false;
}

class Expander {
public:
    Expander(MonoMap& out, int group, std::size_t max_terms) : out_(out), group_(group), max_terms_(max_terms) {}

    void run(const GaussRational& c, const std::vector<Factor>& factors)
    {
        factors_ = &factors;
        State s;
        s.c = c;
        factor(s, 0);
    }

private:
    void factor(const State& s, std::size_t fi)
    {
        if (fi == factors_->size()) {
            if (s.a_count != 1 || s.f_count != 1 || s.g_count != 1) {
                throw CalculusError("malformed term: a, f and conj(g) must appear exactly once");
            }
            add_mono(out_, {group_, s.m, s.ap, s.aq, s.fp, s.gq}, s.c);
            if (out_.size() > max_terms_) {
                throw CalculusError("rewriting exceeded the term budget");
            }
            return;
        }
        const Factor& f = (*factors_)[fi];
        distribute(s, fi, 0, f.dp, f.dq);
    }

    // Leibniz: distributes the remaining (rp, rq) over atoms ai.. of factor fi.
    void distribute(const State& s, std::size_t fi, std::size_t ai, int rp, int rq)
    {
        const Factor& f = (*factors_)[fi];
        if (ai + 1 == f.atoms.size()) {
            State t = s;
            if (absorb(t, f.atoms[ai], rp, rq)) {
                factor(t, fi + 1);
            }
            return;
        }
        for (int p = 0; p <= rp; ++p) {
            for (int q = 0; q <= rq; ++q) {
                State t = s;
                t.c *= GaussRational(binomial(rp, p) * binomial(rq, q));
                if (absorb(t, f.atoms[ai], p, q)) {
                    distribute(t, fi, ai + 1, rp - p, rq - q);
                }
            }
        }
    }

    MonoMap& out_;
    int group_;
    std::size_t max_terms_;
    const std::vector<Factor>* factors_ = nullptr;
};

Atom atom_y(int m)
{
    return {Kind::Y, 0, 0, m};
}

// Moves one d off f (phase F) or one dbar off conj(g) (phase G) for every
// term that still carries one. Returns the number of rewrites.
std::size_t integrate_by_parts(MonoMap& terms, bool phase_f, std::size_t max_terms)
{
    MonoMap next;
    std::size_t steps = 0;
    for (const auto& [key, c] : terms) {
        const auto [group, m, ap, aq, fp, gq] = key;
        if (phase_f && fp > 0) {
            // int d(F') Rest = -int F' d(Rest)
            const std::vector<Factor> factors{
                {0, 0, {{Kind::F, fp - 1, 0, 0}}},
                {1, 0, {atom_y(m), {Kind::A, ap, aq, 0}, {Kind::G, 0, gq, 0}}},
            };
            Expander(next, group, max_terms).run(-c, factors);
            ++steps;
        } else if (!phase_f && gq > 0) {
            const std::vector<Factor> factors{
                {0, 0, {{Kind::G, 0, gq - 1, 0}}},
                {0, 1, {atom_y(m), {Kind::A, ap, aq, 0}, {Kind::F, fp, 0, 0}}},
            };
            Expander(next, group, max_terms).run(-c, factors);
            ++steps;
        } else {
            add_mono(next, key, c);
        }
    }
    terms = std::move(next);
    return steps;
}

bool any_left(const MonoMap& terms, bool phase_f)
{
    return std::any_of(terms.begin(), terms.end(), [phase_f](const auto& kv) {
        return phase_f ? std::get<4>(kv.first) > 0 : std::get<5>(kv.first) > 0;
    });
}

} // namespace

DiffOperator KDerivation::total() const
{
    std::vector<NormalTerm> normal;
    for (const auto& t : terms) {
        normal.push_back({t.c, t.m, t.p, t.q});
    }
    return DiffOperator::from_normal(normal);
}

DiffOperator KDerivation::group(int r) const
{
    std::vector<NormalTerm> normal;
    for (const auto& t : terms) {
        if (t.group == r) {
            normal.push_back({t.c, t.m, t.p, t.q});
        }
    }
    return DiffOperator::from_normal(normal);
}

KDerivation derive_K_terms(int j, Route route, std::size_t max_terms)
{
    if (j < 1) {
        throw DomainError("derive_K needs j >= 1");
    }
    KDerivation out;
    out.j = j;
    out.route = route;
    // S^j f = (2i)^j d^j(y^j f) / j!, conj(S^j g) = (-2i)^j dbar^j(y^j conj g) / j!
    const GaussRational kappa2 =
        GaussRational(Rational(1, factorial_exact(j) * factorial_exact(j))) * GaussRational(4).pow(j);
    MonoMap terms;
    if (route == Route::Symmetric) {
        const std::vector<Factor> factors{
            {0, 0, {{Kind::A, 0, 0, 0}}},
            {j, 0, {atom_y(j), {Kind::F, 0, 0, 0}}},
            {0, j, {atom_y(j), {Kind::G, 0, 0, 0}}},
        };
        Expander(terms, -1, max_terms).run(kappa2, factors);
    } else {
        for (int r = 0; r <= j; ++r) {
            // d^j(X) a = sum_r binom(j,r) (-1)^r d^{j-r}(X d^r a); then d^{j-r}
            // moves to the conj(g) factor with sign (-1)^{j-r}
            const GaussRational sign((j % 2 == 0) ? 1 : -1);
            const GaussRational c = kappa2 * GaussRational(binomial(j, r)) * sign;
            const std::vector<Factor> factors{
                {0, 0, {atom_y(j), {Kind::F, 0, 0, 0}, {Kind::A, r, 0, 0}}},
                {j - r, j, {atom_y(j), {Kind::G, 0, 0, 0}}},
            };
            Expander(terms, r, max_terms).run(c, factors);
        }
    }
    out.peak_terms = terms.size();
    for (bool phase_f : {true, false}) {
        int rounds = 0;
        while (any_left(terms, phase_f)) {
            if (++rounds > 4 * j + 8) {
                throw CalculusError("rewriting does not terminate");
            }
            out.rewrite_steps += integrate_by_parts(terms, phase_f, max_terms);
            out.peak_terms = std::max(out.peak_terms, terms.size());
        }
    }
    for (const auto& [key, c] : terms) {
        const auto [group, m, ap, aq, fp, gq] = key;
        if (fp != 0 || gq != 0) {
            throw CalculusError("a derivative survived on f or conj(g)");
        }
        out.terms.push_back({c, m, ap, aq, group});
    }
    return out;
}

DiffOperator derive_K(int j)
{
    return derive_K_terms(j, Route::Symmetric).total();
}

DiffOperator closed_form_K(int j)
{
    if (j < 0) {
        throw DomainError("j must be non-negative");
    }
    std::vector<DiffTerm> terms;
    const GaussRational two_i(Rational(0), Rational(2));
    for (int l = 0; l <= j; ++l) {
        for (int lp = 0; lp <= j; ++lp) {
            const GaussRational cl(Rational(binomial(j, l), factorial_exact(l)));
            const GaussRational clp(Rational(binomial(j, lp), factorial_exact(lp)));
            terms.push_back({cl * clp * (-two_i).pow(l) * two_i.pow(lp), l + lp, l, lp});
        }
    }
    return DiffOperator::from_regrouped(std::move(terms));
}

std::vector<DiffOperator> k2_reference_groups()
{
    const DiffOperator k1 = DiffOperator::from_regrouped({{GaussRational(Rational(1, 2)), 2, 0, 2}});
    const DiffOperator k2 = DiffOperator::from_normal({{GaussRational(2), 1, 1, 0},
                                                       {GaussRational(2), 2, 1, 1},
                                                       {GaussRational(1), 3, 1, 2}});
    const DiffOperator k3 =
        DiffOperator::multiply_y(2).compose(DiffOperator::from_regrouped({{GaussRational(1), 2, 0, 2}}));
    return {k1, k2, k3};
}

std::vector<std::array<int, 3>> term_set(const DiffOperator& op)
{
    auto s = op.normal_support();
    std::sort(s.begin(), s.end());
    return s;
}

Complex apply_diffop(const DiffOperator& K, const Density& a, const HalfPlanePoint& z)
{
    const int order = std::max(0, K.order());
    const BiJet ja = a.jet(z, order);
    const BiJet y = BiJet::y(z.z(), order);
    Complex acc{};
    for (const auto& t : K.terms()) {
        acc += t.b.to_complex() * (y.pow(t.m) * ja).wirtinger(t.p, t.pbar);
    }
    return acc;
}

EquivalenceResult equivalence_residual(const Density& a, int j, int N, const QuadratureSpec& spec)
{
    return equivalence_residual(a, derive_K(j), j, N, spec);
}

EquivalenceResult equivalence_residual(const Density& a, const DiffOperator& K, int j, int N,
                                       const QuadratureSpec& spec)
{
    require_j(j);
    if (N < 1) {
        throw DomainError("matrix size must be at least 1");
    }
    const BasisFamily basis(N);
    EquivalenceResult r;
    r.A = Eigen::MatrixXcd::Zero(N, N);
    r.B = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& node : a.support_rule(spec)) {
        const Complex av = a.value(node.z);
        const Complex kav = apply_diffop(K, a, node.z);
        if (av == Complex(0.0) && kav == Complex(0.0)) {
            continue;
        }
        const DerivTable t = basis.derivatives(node.z, j);
        const Eigen::VectorXcd s = creation_values(t, node.z.y(), j);
        const Eigen::VectorXcd phi = t.row(0).transpose();
        r.A.noalias() += (node.weight * av) * (s.conjugate() * s.transpose());
        r.B.noalias() += (node.weight * kav) * (phi.conjugate() * phi.transpose());
    }
    r.norm_A = r.A.norm();
    r.norm_B = r.B.norm();
    if (r.norm_A == 0.0) {
        r.residual = 0.0;
        return r;
    }
    if (r.norm_B <= 1e-14 * r.norm_A) {
        throw CalculusError("K a vanishes while the polyanalytic form does not");
    }
    r.c = r.B.cwiseProduct(r.A.conjugate()).sum();
    r.c = std::conj(r.c) / (r.norm_B * r.norm_B);
    r.residual = (r.A - r.c * r.B).norm() / r.norm_A;
    return r;
}

Eigen::MatrixXcd poly_toeplitz_matrix(const SymbolMeasure& mu, int j, int N, const QuadratureSpec& spec)
{
    require_j(j);
    if (N < 1) {
        throw DomainError("matrix size must be at least 1");
    }
    spec.validate();
    const BasisFamily basis(N);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& node : symbol_nodes(mu, spec, std::max(spec.line, 2 * N + 4 * j + 16))) {
        const DerivTable t = basis.derivatives(node.z, j);
        const Eigen::VectorXcd s = creation_values(t, node.z.y(), j);
        A.noalias() += node.weight * (s.conjugate() * s.transpose());
    }
    return A;
}

} // namespace bergman
