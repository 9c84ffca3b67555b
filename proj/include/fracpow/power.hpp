#pragma once

// Data model: linear combinations of power functions, symbolic families of
// arbitrary-constant terms, and derivative results.

#include "fracpow/coefficient.hpp"
#include "fracpow/convergence.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracpow {

struct PowerTerm {
    Coeff coeff;
    Rational exponent;

    friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Canonical finite sum of a * x^alpha: exponents strictly increasing,
/// no zero coefficients.
class PowerExpr {
public:
    PowerExpr() = default;

    const std::vector<PowerTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::vector<Rational> exponents() const
    {
        std::vector<Rational> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back(t.exponent);
        return out;
    }

    /// Coefficient of x^e (zero when absent).
    Coeff coefficient(const Rational& e) const
    {
        for (const auto& t : terms_)
            if (t.exponent == e) return t.coeff;
        return {};
    }

    bool is_rational() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const PowerTerm& t) { return t.coeff.is_rational(); });
    }

    friend PowerExpr operator+(const PowerExpr& a, const PowerExpr& b);
    friend PowerExpr operator-(const PowerExpr& a, const PowerExpr& b);
    friend PowerExpr operator*(const Coeff& s, const PowerExpr& a);
    friend bool operator==(const PowerExpr&, const PowerExpr&) = default;

    friend PowerExpr canonicalize(std::vector<PowerTerm> terms);

private:
    std::vector<PowerTerm> terms_;
};

inline PowerExpr canonicalize(std::vector<PowerTerm> terms)
{
    std::map<Rational, Coeff> merged;
    for (auto& t : terms) merged[t.exponent] += t.coeff;
    PowerExpr e;
    for (auto& [exp, c] : merged)
        if (!c.is_zero()) e.terms_.push_back({std::move(c), exp});
    return e;
}

inline PowerExpr operator+(const PowerExpr& a, const PowerExpr& b)
{
    std::vector<PowerTerm> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return canonicalize(std::move(all));
}

inline PowerExpr operator*(const Coeff& s, const PowerExpr& a)
{
    std::vector<PowerTerm> out;
    for (const auto& t : a.terms_) out.push_back({s * t.coeff, t.exponent});
    return canonicalize(std::move(out));
}

inline PowerExpr operator-(const PowerExpr& a, const PowerExpr& b) { return a + Coeff(-1) * b; }

inline PowerExpr monomial(const Coeff& c, const Rational& exponent) { return canonicalize({{c, exponent}}); }

struct Evaluation {
    double value = 0.0;
    /// x = 0 met a negative exponent; that term was taken as 0.
    bool negative_exponent_at_zero = false;
};

/// Termwise a x^alpha with the x = 0 convention: a when alpha = 0, else 0.
inline Evaluation evaluate_checked(const PowerExpr& expr, double x)
{
    if (!(x >= 0.0)) throw std::domain_error("power functions are evaluated on x >= 0");
    Evaluation ev;
    if (x == 0.0) {
        for (const auto& t : expr.terms()) {
            if (t.exponent.is_zero())
                ev.value += t.coeff.value();
            else if (t.exponent.is_negative())
                ev.negative_exponent_at_zero = true;
        }
        return ev;
    }
    const double lx = std::log(x);
    for (const auto& t : expr.terms()) {
        if (t.exponent.is_zero()) {
            ev.value += t.coeff.value();
        } else if (t.exponent.is_integer() && fits_ll(t.exponent.num()) && std::abs(static_cast<long long>(t.exponent.num())) < 64) {
            ev.value += t.coeff.value() * std::pow(x, static_cast<int>(t.exponent.num()));
        } else {
            ev.value += t.coeff.value() * std::exp(t.exponent.to_double() * lx);
        }
    }
    return ev;
}

inline double evaluate(const PowerExpr& expr, double x) { return evaluate_checked(expr, x).value; }

// ---------------------------------------------------------------------------

enum class Definition { First = 1, Second = 2 };

/// One arbitrary-constant term  c_k * scale * x^exponent / Gamma(gamma_arg).
/// `scale` carries the gamma-ratio factors picked up when the term is
/// differentiated again; `generation` tells apart the constants introduced
/// by successive applications.
struct ConstantTermSpec {
    long long k = -1;
    Rational exponent;
    Rational gamma_arg;
    int generation = 0;
    Coeff scale = Coeff(1);

    bool live() const { return !gamma_arg.is_nonpositive_integer() && !scale.is_zero(); }

    friend bool operator==(const ConstantTermSpec&, const ConstantTermSpec&) = default;
};

/// Infinite family  sum_{k <= first_index} c_k x^(k - shift) / Gamma(k - shift + 1).
struct TailSpec {
    int generation = 0;
    Rational shift;
    long long first_index = -1;

    Rational exponent_at(long long k) const { return Rational(k) - shift; }
    Rational gamma_arg_at(long long k) const { return Rational(k) - shift + Rational(1); }
    bool live_at(long long k) const { return k <= first_index && !gamma_arg_at(k).is_nonpositive_integer(); }

    /// Is x^e one of the live terms?
    bool contains_exponent(const Rational& e) const
    {
        const Rational k = e + shift;
        if (!k.is_integer() || !fits_ll(k.num())) return false;
        return live_at(static_cast<long long>(k.num()));
    }

    friend bool operator==(const TailSpec&, const TailSpec&) = default;
};

inline constexpr long long kDefaultTruncation = 40;

class ConstantFamily {
public:
    enum class Kind { Finite, InfiniteTail };

    ConstantFamily() = default;
    ConstantFamily(std::vector<ConstantTermSpec> specs, std::vector<TailSpec> tails = {},
                   long long truncation = kDefaultTruncation)
        : specs_(std::move(specs)), tails_(std::move(tails)), truncation_(truncation)
    {
        if (truncation_ < 1) throw std::invalid_argument("truncation K must be >= 1");
    }

    Kind kind() const { return tails_.empty() ? Kind::Finite : Kind::InfiniteTail; }
    const std::vector<ConstantTermSpec>& specs() const { return specs_; }
    const std::vector<TailSpec>& tails() const { return tails_; }
    long long truncation() const { return truncation_; }
    void set_truncation(long long k)
    {
        if (k < 1) throw std::invalid_argument("truncation K must be >= 1");
        truncation_ = k;
    }

    bool empty() const { return tails_.empty() && live_count() == 0; }

    std::size_t live_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(specs_.begin(), specs_.end(), [](const ConstantTermSpec& s) { return s.live(); }));
    }

    bool contains_exponent(const Rational& e) const
    {
        for (const auto& s : specs_)
            if (s.live() && s.exponent == e) return true;
        for (const auto& t : tails_)
            if (t.contains_exponent(e)) return true;
        return false;
    }

    /// Live exponents; each tail contributes its first `tail_terms` indices.
    std::set<Rational> live_exponents(long long tail_terms) const
    {
        std::set<Rational> out;
        for (const auto& s : specs_)
            if (s.live()) out.insert(s.exponent);
        for (const auto& t : tails_)
            for (long long k = t.first_index; k > t.first_index - tail_terms; --k)
                if (t.live_at(k)) out.insert(t.exponent_at(k));
        return out;
    }
    std::set<Rational> live_exponents() const { return live_exponents(truncation_); }

    /// Union of the terms of both families (constants stay distinct).
    friend ConstantFamily merge(const ConstantFamily& a, const ConstantFamily& b)
    {
        ConstantFamily out = a;
        out.specs_.insert(out.specs_.end(), b.specs_.begin(), b.specs_.end());
        for (const auto& t : b.tails_)
            if (std::find(out.tails_.begin(), out.tails_.end(), t) == out.tails_.end()) out.tails_.push_back(t);
        out.truncation_ = std::max(a.truncation_, b.truncation_);
        return out;
    }

    friend bool operator==(const ConstantFamily&, const ConstantFamily&) = default;

private:
    std::vector<ConstantTermSpec> specs_;
    std::vector<TailSpec> tails_;
    long long truncation_ = kDefaultTruncation;
};

struct FracResult {
    PowerExpr principal;
    ConstantFamily family;
    Rational order;
    Definition definition = Definition::Second;

    friend bool operator==(const FracResult&, const FracResult&) = default;
};

/// Sum of scaled results of the same order and definition; each operand keeps
/// its own constants.
inline FracResult combine(std::span<const std::pair<Rational, FracResult>> parts)
{
    if (parts.empty()) throw std::invalid_argument("combine needs at least one result");
    FracResult out;
    out.order = parts.front().second.order;
    out.definition = parts.front().second.definition;
    bool first = true;
    for (const auto& [scalar, r] : parts) {
        if (r.order != out.order || r.definition != out.definition) throw DifferentOrder();
        out.principal = out.principal + Coeff(scalar) * r.principal;
        out.family = first ? r.family : merge(out.family, r.family);
        first = false;
    }
    return out;
}

/// Equality up to the arbitrary-constant terms: every exponent of
/// r1.principal - r2.principal must be a live exponent of either family.
inline bool semi_equal(const FracResult& r1, const FracResult& r2)
{
    if (r1.order != r2.order || r1.definition != r2.definition) throw DifferentOrder();
    const PowerExpr diff = r1.principal - r2.principal;
    for (const auto& t : diff.terms())
        if (!r1.family.contains_exponent(t.exponent) && !r2.family.contains_exponent(t.exponent)) return false;
    return true;
}

/// Principal value plus the constant terms under `assignment`. Infinite
/// families are truncated at the family's K and require a convergent tail.
inline double evaluate_result(const FracResult& r, double x, const CoeffSequence& assignment)
{
    if (!(x > 0.0)) throw std::domain_error("evaluate_result needs x > 0");
    const ConstantFamily& fam = r.family;
    if (!fam.tails().empty() && assignment.has_infinite_support()) {
        const ConvergenceVerdict v = check_convergence(assignment, r.order);
        if (!v.passes) throw NonConvergentAssignment(v.estimated_limit);
    }

    double sum = evaluate(r.principal, x);
    const double lx = std::log(x);
    const auto add_term = [&](long long k, const Coeff& scale, const Rational& exponent, const Rational& gamma_arg) {
        if (gamma_arg.is_nonpositive_integer()) return;  // 1/Gamma vanishes
        const CoeffValue c = assignment.at(k);
        if (c.sign == 0) return;
        const double sv = scale.value();
        if (sv == 0.0) return;
        const auto [lg, gsign] = GammaMonomial::log_abs_gamma_signed(gamma_arg);
        const double log_mag = c.log_abs + std::log(std::abs(sv)) + exponent.to_double() * lx - lg;
        const int sign = c.sign * (sv < 0 ? -1 : 1) * gsign;
        const double term = sign * std::exp(log_mag);
        if (!std::isfinite(term)) throw PoleUndefined("constant term c_" + std::to_string(k) + " is not finite");
        sum += term;
    };

    for (const auto& s : fam.specs())
        if (s.live()) add_term(s.k, s.scale, s.exponent, s.gamma_arg);
    for (const auto& t : fam.tails())
        for (long long k = t.first_index; k > t.first_index - fam.truncation(); --k)
            add_term(k, Coeff(1), t.exponent_at(k), t.gamma_arg_at(k));
    if (!std::isfinite(sum)) throw PoleUndefined("result is not finite at x = " + std::to_string(x));
    return sum;
}

} // namespace fracpow
