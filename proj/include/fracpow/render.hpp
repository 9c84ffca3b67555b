#pragma once

// Text and LaTeX rendering. Text output for rational-coefficient expressions
// is accepted back by parse_expr.

#include "fracpow/coefficient.hpp"
#include "fracpow/deriv.hpp"
#include "fracpow/gamma.hpp"
#include "fracpow/power.hpp"
#include "fracpow/rational.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace fracpow {

enum class Format { Text, Latex, Json };

namespace detail {

// One monomial laid out for printing: sign * num/den * prod Gamma(arg)^power * sqrt(pi)^sqrt_pi.
struct Layout {
    int sign = 1;
    BigInt num = 1;
    BigInt den = 1;
    std::vector<std::pair<Rational, int>> gammas;
    int sqrt_pi = 0;
};

// Gamma(a)^e == Gamma(a + n)^e * factor; the shift with the smallest
// denominator, then numerator, then |n| is displayed. Positive arguments
// stay positive.
inline void choose_shift(Rational& r, Rational& arg, int e)
{
    constexpr int kMaxShift = 40;
    const auto key = [](const Rational& v, int n) {
        return std::make_tuple(v.den(), BigInt(boost::multiprecision::abs(v.num())), n < 0 ? -n : n);
    };
    Rational best_r = r;
    int best_n = 0;
    auto best_key = key(r, 0);
    const auto consider = [&](const Rational& rho, int n) {
        const Rational cand = e > 0 ? r * rho : r / rho;
        const auto k = key(cand, n);
        if (k < best_key) {
            best_key = k;
            best_r = cand;
            best_n = n;
        }
    };
    // n > 0: Gamma(a) = Gamma(a+n) / (a (a+1) ... (a+n-1))
    Rational prod(1);
    for (int n = 1; n <= kMaxShift; ++n) {
        prod *= arg + Rational(n - 1);
        consider(prod.reciprocal(), n);
    }
    // n < 0: Gamma(a) = Gamma(a-n') (a-1) ... (a-n')
    prod = Rational(1);
    for (int n = 1; n <= kMaxShift; ++n) {
        const Rational f = arg - Rational(n);
        if (f.is_zero() || (arg.is_positive() && !f.is_positive())) break;
        prod *= f;
        consider(prod, -n);
    }
    r = best_r;
    arg = arg + Rational(best_n);
}

inline Layout layout(const GammaMonomial& m, Rational r)
{
    Layout l;
    std::vector<std::pair<Rational, int>> gammas;
    for (const auto& [a, e] : m.factors()) {
        if (a == Rational(1, 2)) {
            l.sqrt_pi = e;
            continue;
        }
        Rational arg = a;
        if (e == 1 || e == -1) choose_shift(r, arg, e);
        gammas.emplace_back(arg, e);
    }
    l.gammas = std::move(gammas);
    l.sign = r.sign() < 0 ? -1 : 1;
    l.num = boost::multiprecision::abs(r.num());
    l.den = r.den();
    return l;
}

inline std::string exponent_text(const Rational& e)
{
    if (e.is_zero()) return {};
    if (e == Rational(1)) return "x";
    if (e.is_positive_integer()) return "x^" + e.str();
    return "x^(" + e.str() + ")";
}

inline std::string exponent_latex(const Rational& e);

inline std::string rational_latex(const Rational& r)
{
    if (r.is_integer()) return r.str();
    std::string s = r.is_negative() ? "-" : "";
    return s + "\\frac{" + BigInt(boost::multiprecision::abs(r.num())).str() + "}{" + r.den().str() + "}";
}

inline std::string exponent_latex(const Rational& e)
{
    if (e.is_zero()) return {};
    if (e == Rational(1)) return "x";
    return "x^{" + rational_latex(e) + "}";
}

inline std::string power_suffix_text(int p) { return p == 1 ? "" : "^" + std::to_string(p); }

inline std::string sqrt_pi_text(int p)
{
    if (p == 1) return "sqrt(pi)";
    if (p == 2) return "pi";
    if (p % 2 == 0) return "pi^" + std::to_string(p / 2);
    return "pi^(" + std::to_string(p) + "/2)";
}

inline std::string sqrt_pi_latex(int p)
{
    if (p == 1) return "\\sqrt{\\pi}";
    if (p == 2) return "\\pi";
    if (p % 2 == 0) return "\\pi^{" + std::to_string(p / 2) + "}";
    return "\\pi^{\\frac{" + std::to_string(p) + "}{2}}";
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

// Magnitude of one monomial times `symbol` and `x`.
inline std::string layout_text(const Layout& l, const std::string& symbol, const std::string& x)
{
    std::vector<std::string> num;
    std::vector<std::string> den;
    if (l.num != 1) num.push_back(l.num.str());
    if (!symbol.empty()) num.push_back(symbol);
    for (const auto& [a, e] : l.gammas)
        (e > 0 ? num : den).push_back("Γ(" + a.str() + ")" + power_suffix_text(e > 0 ? e : -e));
    if (l.sqrt_pi > 0) num.push_back(sqrt_pi_text(l.sqrt_pi));
    if (l.sqrt_pi < 0) den.insert(den.end(), sqrt_pi_text(-l.sqrt_pi));
    if (!x.empty()) num.push_back(x);
    if (l.den != 1) den.insert(den.begin(), l.den.str());
    std::string s = num.empty() ? "1" : join(num, "*");
    if (!den.empty()) s += "/" + (den.size() == 1 ? den.front() : "(" + join(den, "*") + ")");
    return s;
}

inline std::string layout_latex(const Layout& l, const std::string& symbol, const std::string& x)
{
    std::vector<std::string> num;
    std::vector<std::string> den;
    if (l.num != 1) num.push_back(l.num.str());
    if (!symbol.empty()) num.push_back(symbol);
    for (const auto& [a, e] : l.gammas) {
        const int p = e > 0 ? e : -e;
        (e > 0 ? num : den)
            .push_back("\\Gamma\\left(" + rational_latex(a) + "\\right)" + (p == 1 ? "" : "^{" + std::to_string(p) + "}"));
    }
    if (l.sqrt_pi > 0) num.push_back(sqrt_pi_latex(l.sqrt_pi));
    if (l.sqrt_pi < 0) den.push_back(sqrt_pi_latex(-l.sqrt_pi));
    if (!x.empty()) num.push_back(x);
    if (l.den != 1) den.insert(den.begin(), l.den.str());
    const std::string n = num.empty() ? "1" : join(num, " ");
    if (den.empty()) return n;
    return "\\frac{" + n + "}{" + join(den, " ") + "}";
}

struct SignedText {
    bool negative = false;
    std::string body;
};

inline SignedText term_text(const Coeff& c, const std::string& symbol, const std::string& x, bool latex)
{
    if (c.is_monomial()) {
        const auto& [m, r] = *c.terms().begin();
        const Layout l = layout(m, r);
        return {l.sign < 0, latex ? layout_latex(l, symbol, x) : layout_text(l, symbol, x)};
    }
    std::vector<SignedText> parts;
    for (const auto& [m, r] : c.terms()) parts.push_back(term_text(Coeff(r, m), "", "", latex));
    std::string inner;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == 0)
            inner += (parts[i].negative ? "-" : "") + parts[i].body;
        else
            inner += (parts[i].negative ? " - " : " + ") + parts[i].body;
    }
    std::string body = latex ? "\\left(" + inner + "\\right)" : "(" + inner + ")";
    for (const auto* extra : {&symbol, &x})
        if (!extra->empty()) body += (latex ? " " : "*") + *extra;
    return {false, body};
}

inline std::string join_signed(const std::vector<SignedText>& terms)
{
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            out += (terms[i].negative ? "-" : "") + terms[i].body;
        else
            out += (terms[i].negative ? " - " : " + ") + terms[i].body;
    }
    return out;
}

inline void principal_terms(const PowerExpr& e, bool latex, std::vector<SignedText>& out)
{
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it)
        out.push_back(term_text(it->coeff, "", latex ? exponent_latex(it->exponent) : exponent_text(it->exponent), latex));
}

inline bool tagged(const ConstantFamily& f)
{
    return std::any_of(f.specs().begin(), f.specs().end(), [](const auto& s) { return s.generation != 0; }) ||
           std::any_of(f.tails().begin(), f.tails().end(), [](const auto& t) { return t.generation != 0; });
}

inline std::string constant_symbol(const std::string& index, int generation, bool tag)
{
    if (!tag) return "c_{" + index + "}";
    return "c^{(" + std::to_string(generation) + ")}_{" + index + "}";
}

// "k-1/2", "k+3/4", "k"
inline std::string index_offset(const Rational& offset, bool latex)
{
    if (offset.is_zero()) return "k";
    const std::string mag = latex ? rational_latex(offset.abs()) : offset.abs().str();
    return std::string("k") + (offset.is_negative() ? "-" : "+") + mag;
}

inline void family_terms(const ConstantFamily& f, bool latex, std::vector<SignedText>& out)
{
    const bool tag = tagged(f);
    std::vector<const ConstantTermSpec*> specs;
    for (const auto& s : f.specs())
        if (s.live()) specs.push_back(&s);
    std::stable_sort(specs.begin(), specs.end(),
                     [](const auto* a, const auto* b) { return a->exponent > b->exponent; });
    for (const auto* s : specs) {
        const Coeff c = s->scale * Coeff::gamma(s->gamma_arg).inverse();
        const std::string x = latex ? exponent_latex(s->exponent) : exponent_text(s->exponent);
        out.push_back(term_text(c, constant_symbol(std::to_string(s->k), s->generation, tag), x, latex));
    }
    for (const auto& t : f.tails()) {
        const std::string sym = tag ? "c^{(" + std::to_string(t.generation) + ")}_k" : "c_k";
        const std::string e = index_offset(-t.shift, latex);
        const std::string g = index_offset(Rational(1) - t.shift, latex);
        const std::string first = std::to_string(t.first_index);
        if (latex)
            out.push_back({false, "\\sum_{k\\le " + first + "} " + sym + " \\frac{x^{" + e + "}}{\\Gamma\\left(" + g +
                                      "\\right)}"});
        else
            out.push_back({false, "sum_{k<=" + first + "} " + sym + "*x^(" + e + ")/Γ(" + g + ")"});
    }
}

} // namespace detail

inline std::string render_text(const PowerExpr& e)
{
    std::vector<detail::SignedText> terms;
    detail::principal_terms(e, false, terms);
    return detail::join_signed(terms);
}

inline std::string render_latex(const PowerExpr& e)
{
    std::vector<detail::SignedText> terms;
    detail::principal_terms(e, true, terms);
    return detail::join_signed(terms);
}

inline std::string render_text(const FracResult& r)
{
    std::vector<detail::SignedText> terms;
    detail::principal_terms(r.principal, false, terms);
    detail::family_terms(r.family, false, terms);
    return detail::join_signed(terms);
}

inline std::string render_latex(const FracResult& r)
{
    std::vector<detail::SignedText> terms;
    detail::principal_terms(r.principal, true, terms);
    detail::family_terms(r.family, true, terms);
    return detail::join_signed(terms);
}

inline std::string render_text(const Coeff& c) { return render_text(monomial(c, Rational(0))); }

/// The P(x) of a composition: principal gap plus the span of unmatched constants.
inline std::string render_text(const Discrepancy& d)
{
    if (d.zero()) return "0";
    std::string out = d.principal_gap.empty() ? "" : render_text(d.principal_gap);
    if (!d.family_gap.empty()) {
        std::vector<std::string> xs;
        for (auto it = d.family_gap.rbegin(); it != d.family_gap.rend(); ++it) {
            const std::string x = detail::exponent_text(*it);
            xs.push_back(x.empty() ? "1" : x);
        }
        out += (out.empty() ? "" : " + ") + std::string("span{") + detail::join(xs, ", ") + "}";
    }
    return out;
}

inline std::string render_text(const CompositionReport& rep)
{
    return "chained: " + render_text(rep.chained) + "\ndirect:  " + render_text(rep.direct) +
           "\nP(x):    " + render_text(rep.discrepancy);
}

inline std::string format_double(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Exact form where available, with the numeric value alongside radicals.
inline std::string render_text(const GammaValue& v)
{
    struct {
        std::string operator()(const GammaFinite& f) const { return format_double(f.value, 15); }
        std::string operator()(const GammaExactRational& r) const { return r.value.str(); }
        std::string operator()(const GammaExactRadical& r) const
        {
            return render_text(Coeff(r.coeff) * Coeff::sqrt_pi(1)) + " ≈ " + format_double(r.value, 10);
        }
        std::string operator()(const GammaPole& p) const { return "pole at " + p.at.str(); }
    } visitor;
    return std::visit(visitor, v);
}

} // namespace fracpow
