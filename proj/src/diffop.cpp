#include "bergman/diffop.hpp"

#include "bergman/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace bergman {

using nlohmann::json;

namespace {

using Key = std::tuple<int, int, int>;  // (m, p, q)
using NormalMap = std::map<Key, GaussRational>;

void add_to(NormalMap& map, const Key& key, const GaussRational& c)
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

void require_nonneg(int m, int p, int q)
{
    if (m < 0 || p < 0 || q < 0) {
        throw CalculusError("negative exponent in a differential operator term");
    }
}

// scale * b d^p dbar^pbar (y^m .) in normal order
void expand_regrouped(NormalMap& map, const DiffTerm& t, const GaussRational& scale)
{
    const GaussRational b = t.b * scale;
    for (int r = 0; r <= t.p; ++r) {
        for (int s = 0; s <= t.pbar && r + s <= t.m; ++s) {
            const GaussRational c =
                b * GaussRational(binomial(t.p, r) * binomial(t.pbar, s)) * y_derivative_coefficient(t.m, r, s);
            add_to(map, {t.m - r - s, t.p - r, t.pbar - s}, c);
        }
    }
}

NormalMap normal_map(const std::vector<DiffTerm>& terms)
{
    NormalMap map;
    for (const auto& t : terms) {
        expand_regrouped(map, t, GaussRational(1));
    }
    return map;
}

// Highest p + q first, then highest p.
NormalMap::const_iterator top_term(const NormalMap& map)
{
    return std::max_element(map.begin(), map.end(), [](const auto& a, const auto& b) {
        const auto [ma, pa, qa] = a.first;
        const auto [mb, pb, qb] = b.first;
        return std::tuple(pa + qa, pa, qa, ma) < std::tuple(pb + qb, pb, qb, mb);
    });
}

std::vector<DiffTerm> regroup(NormalMap map)
{
    std::vector<DiffTerm> out;
    while (!map.empty()) {
        const auto it = top_term(map);
        const auto [m, p, q] = it->first;
        const DiffTerm t{it->second, m, p, q};
        out.push_back(t);
        expand_regrouped(map, t, GaussRational(-1));
    }
    return out;
}

std::vector<DiffTerm> canonical(std::vector<DiffTerm> terms)
{
    std::map<Key, GaussRational> merged;
    for (const auto& t : terms) {
        require_nonneg(t.m, t.p, t.pbar);
        add_to(merged, {t.m, t.p, t.pbar}, t.b);
    }
    std::vector<DiffTerm> out;
    for (const auto& [key, b] : merged) {
        const auto [m, p, q] = key;
        out.push_back({b, m, p, q});
    }
    std::sort(out.begin(), out.end(), [](const DiffTerm& a, const DiffTerm& b) {
        return std::tuple(a.p + a.pbar, a.p, a.m) < std::tuple(b.p + b.pbar, b.p, b.m);
    });
    return out;
}

Rational parse_rational(const std::string& s)
{
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(std::stoll(s));
        }
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw ConfigError("malformed rational '" + s + "'");
    }
}

std::string power(const std::string& base, int n)
{
    if (n == 0) {
        return "";
    }
    return n == 1 ? base : base + "^" + std::to_string(n);
}

} // namespace

GaussRational y_derivative_coefficient(int m, int r, int s)
{
    if (r + s > m) {
        return {};
    }
    const GaussRational dy(Rational(0), Rational(-1, 2));
    const GaussRational dby(Rational(0), Rational(1, 2));
    return GaussRational(factorial_exact(m) / factorial_exact(m - r - s)) * dy.pow(r) * dby.pow(s);
}

DiffOperator DiffOperator::identity()
{
    return from_regrouped({{GaussRational(1), 0, 0, 0}});
}

DiffOperator DiffOperator::from_regrouped(std::vector<DiffTerm> terms)
{
    DiffOperator op;
    op.terms_ = canonical(std::move(terms));
    return op;
}

DiffOperator DiffOperator::from_normal(const std::vector<NormalTerm>& terms)
{
    NormalMap map;
    for (const auto& t : terms) {
        require_nonneg(t.m, t.p, t.q);
        add_to(map, {t.m, t.p, t.q}, t.c);
    }
    return from_regrouped(regroup(std::move(map)));
}

DiffOperator DiffOperator::multiply_y(int m)
{
    return from_regrouped({{GaussRational(1), m, 0, 0}});
}

DiffOperator DiffOperator::d()
{
    return from_regrouped({{GaussRational(1), 0, 1, 0}});
}

DiffOperator DiffOperator::dbar()
{
    return from_regrouped({{GaussRational(1), 0, 0, 1}});
}

DiffOperator DiffOperator::laplacian()
{
    return from_regrouped({{GaussRational(4), 0, 1, 1}});
}

std::vector<NormalTerm> DiffOperator::normal_form() const
{
    std::vector<NormalTerm> out;
    for (const auto& [key, c] : normal_map(terms_)) {
        const auto [m, p, q] = key;
        out.push_back({c, m, p, q});
    }
    return out;
}

std::vector<std::array<int, 3>> DiffOperator::normal_support() const
{
    std::vector<std::array<int, 3>> out;
    for (const auto& t : normal_form()) {
        out.push_back({t.m, t.p, t.q});
    }
    return out;
}

bool DiffOperator::weight_zero() const
{
    const auto normal = normal_form();
    return std::all_of(terms_.begin(), terms_.end(), [](const DiffTerm& t) { return t.weight() == 0; }) &&
           std::all_of(normal.begin(), normal.end(), [](const NormalTerm& t) { return t.weight() == 0; });
}

int DiffOperator::order() const
{
    int order = -1;
    for (const auto& t : terms_) {
        order = std::max(order, t.p + t.pbar);
    }
    return order;
}

DiffOperator DiffOperator::compose(const DiffOperator& other) const
{
    NormalMap out;
    const auto left = normal_form();
    const auto right = other.normal_form();
    for (const auto& a : left) {
        for (const auto& b : right) {
            // y^m d^p dbar^q o y^n d^r dbar^s
            for (int u = 0; u <= a.p; ++u) {
                for (int v = 0; v <= a.q && u + v <= b.m; ++v) {
                    const GaussRational c = a.c * b.c * GaussRational(binomial(a.p, u) * binomial(a.q, v)) *
                                            y_derivative_coefficient(b.m, u, v);
                    add_to(out, {a.m + b.m - u - v, a.p - u + b.p, a.q - v + b.q}, c);
                }
            }
        }
    }
    DiffOperator op;
    op.terms_ = canonical(regroup(std::move(out)));
    return op;
}

DiffOperator DiffOperator::operator+(const DiffOperator& other) const
{
    std::vector<DiffTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return from_regrouped(std::move(all));
}

DiffOperator DiffOperator::operator-(const DiffOperator& other) const
{
    return *this + other * GaussRational(-1);
}

DiffOperator DiffOperator::operator*(const GaussRational& s) const
{
    std::vector<DiffTerm> scaled = terms_;
    for (auto& t : scaled) {
        t.b *= s;
    }
    return from_regrouped(std::move(scaled));
}

DiffOperator generator_word(int s, int b, int c)
{
    if (s < 0 || b < 0 || c < 0) {
        throw CalculusError("negative generator exponent");
    }
    const DiffOperator g_lap = DiffOperator::laplacian().compose(DiffOperator::multiply_y(2));
    const DiffOperator g_dbar = DiffOperator::dbar().compose(DiffOperator::multiply_y(1));
    const DiffOperator g_d = DiffOperator::d().compose(DiffOperator::multiply_y(1));
    DiffOperator w = DiffOperator::identity();
    for (int k = 0; k < s; ++k) {
        w = w.compose(g_lap);
    }
    for (int k = 0; k < b; ++k) {
        w = w.compose(g_dbar);
    }
    for (int k = 0; k < c; ++k) {
        w = w.compose(g_d);
    }
    return w;
}

std::vector<GeneratorWord> DiffOperator::generator_polynomial() const
{
    if (!weight_zero()) {
        throw CalculusError("only weight-zero operators are polynomials in the generators");
    }
    std::vector<GeneratorWord> words;
    DiffOperator rest = *this;
    int guard = 0;
    while (!rest.is_zero()) {
        if (++guard > 10000) {
            throw CalculusError("generator decomposition does not terminate");
        }
        const NormalMap map = normal_map(rest.terms_);
        const auto it = top_term(map);
        const auto [m, p, q] = it->first;
        const int s = std::min(p, q);
        const DiffOperator word = generator_word(s, q - s, p - s);
        const NormalMap wmap = normal_map(word.terms_);
        const auto lead = wmap.find({m, p, q});
        if (lead == wmap.end()) {
            throw CalculusError("generator word has an unexpected leading term");
        }
        const GaussRational coeff = it->second / lead->second;
        words.push_back({coeff, s, q - s, p - s});
        rest = rest - word * coeff;
    }
    DiffOperator check;
    for (const auto& w : words) {
        check = check + generator_word(w.s, w.b, w.c) * w.coeff;
    }
    if (!(check == *this)) {
        throw CalculusError("generator reconstruction mismatch");
    }
    return words;
}

int DiffOperator::degree() const
{
    int deg = -1;
    for (const auto& w : generator_polynomial()) {
        deg = std::max(deg, w.length());
    }
    return deg;
}

json DiffOperator::to_json() const
{
    json terms = json::array();
    for (const auto& t : terms_) {
        const auto c = t.b.to_complex();
        terms.push_back({{"b", {c.real(), c.imag()}},
                         {"b_exact", {t.b.re().str(), t.b.im().str()}},
                         {"m", t.m},
                         {"p", t.p},
                         {"pbar", t.pbar}});
    }
    return terms;
}

DiffOperator DiffOperator::from_json(const json& j)
{
    const json& list = j.is_object() && j.contains("terms") ? j.at("terms") : j;
    if (!list.is_array()) {
        throw ConfigError("operator JSON must be a list of terms");
    }
    std::vector<DiffTerm> terms;
    for (const auto& t : list) {
        try {
            GaussRational b;
            if (t.contains("b_exact")) {
                const auto& e = t.at("b_exact");
                b = GaussRational(parse_rational(e.at(0).get<std::string>()), parse_rational(e.at(1).get<std::string>()));
            } else {
                throw ConfigError("operator terms need exact coefficients 'b_exact'");
            }
            terms.push_back({b, t.at("m").get<int>(), t.at("p").get<int>(), t.at("pbar").get<int>()});
        } catch (const json::exception& e) {
            throw ConfigError(std::string("malformed operator term: ") + e.what());
        }
    }
    return from_regrouped(std::move(terms));
}

std::string DiffOperator::pretty() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    // highest order first reads naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const int q = std::min(it->p, it->pbar);
        GaussRational c = it->b / GaussRational(4).pow(q);
        std::string body;
        for (const std::string& part : {power("Lap", q), power("d", it->p - q), power("dbar", it->pbar - q)}) {
            if (!part.empty()) {
                body += (body.empty() ? "" : " ") + part;
            }
        }
        const std::string arg = it->m == 0 ? "a" : power("y", it->m) + " a";
        body = body.empty() ? arg : body + " (" + arg + ")";

        bool negative = false;
        if (c.im().is_zero() && c.re().num() < 0) {
            negative = true;
            c = -c;
        } else if (c.re().is_zero() && c.im().num() < 0) {
            negative = true;
            c = -c;
        }
        std::string coeff = c == GaussRational(1) ? "" : c.str() + " ";
        if (first) {
            out << (negative ? "-" : "") << coeff << body;
        } else {
            out << (negative ? " - " : " + ") << coeff << body;
        }
        first = false;
    }
    return out.str();
}

} // namespace bergman
