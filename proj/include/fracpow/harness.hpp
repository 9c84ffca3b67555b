#pragma once

// Property checks of the gamma kernel and both derivative definitions
// against independent oracles: the classical power rule, the symbolic
// antiderivative, and epsilon-perturbed numeric gamma ratios.

#include "fracpow/convergence.hpp"
#include "fracpow/deriv.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/gamma.hpp"
#include "fracpow/lanczos.hpp"
#include "fracpow/power.hpp"
#include "fracpow/render.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fracpow {

/// n-fold power rule  a x^alpha -> a alpha x^(alpha-1).
inline PowerExpr oracle_classical_derivative(const PowerExpr& f, unsigned n)
{
    PowerExpr cur = f;
    for (unsigned i = 0; i < n; ++i) {
        std::vector<PowerTerm> next;
        for (const auto& t : cur.terms()) next.push_back({t.coeff * t.exponent, t.exponent - Rational(1)});
        cur = canonicalize(std::move(next));
    }
    return cur;
}

/// n-fold primitive  a x^alpha -> a x^(alpha+1)/(alpha+1), integration constants zero.
inline PowerExpr oracle_antiderivative(const PowerExpr& f, unsigned n)
{
    if (n < 1) throw std::invalid_argument("antiderivative order must be positive");
    PowerExpr cur = f;
    for (unsigned i = 0; i < n; ++i) {
        std::vector<PowerTerm> next;
        for (const auto& t : cur.terms()) {
            const Rational up = t.exponent + Rational(1);
            if (up.is_zero()) throw LogarithmicCase(t.exponent);
            next.push_back({t.coeff * up.reciprocal(), up});
        }
        cur = canonicalize(std::move(next));
    }
    return cur;
}

struct CheckFailure {
    std::string input;
    std::string expected;
    std::string got;
};

struct TheoremCheck {
    static constexpr std::size_t kMaxRecorded = 20;

    std::string id;
    std::size_t trials = 0;
    std::vector<CheckFailure> failures;  // first kMaxRecorded
    std::size_t failure_count = 0;

    bool passed() const { return failure_count == 0; }

    void fail(std::string input, std::string expected, std::string got)
    {
        ++failure_count;
        if (failures.size() < kMaxRecorded) failures.push_back({std::move(input), std::move(expected), std::move(got)});
    }
    void expect(bool ok, const std::string& input, const std::string& expected, const std::string& got)
    {
        if (!ok) fail(input, expected, got);
    }
};

namespace harness {

using Rng = std::mt19937_64;

inline long long uniform_int(Rng& g, long long lo, long long hi)
{
    return std::uniform_int_distribution<long long>(lo, hi)(g);
}

inline double uniform_real(Rng& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

inline Rational random_rational(Rng& g, long long max_num, long long max_den)
{
    return Rational(uniform_int(g, -max_num, max_num), uniform_int(g, 1, max_den));
}

inline Rational random_nonzero(Rng& g, long long max_num, long long max_den)
{
    for (;;) {
        Rational r = random_rational(g, max_num, max_den);
        if (!r.is_zero()) return r;
    }
}

template <class ExponentGen>
PowerExpr random_expr(Rng& g, int max_terms, ExponentGen&& exponent)
{
    for (;;) {
        std::vector<PowerTerm> terms;
        const auto n = uniform_int(g, 1, max_terms);
        for (long long i = 0; i < n; ++i) terms.push_back({Coeff(random_nonzero(g, 9, 5)), exponent(g)});
        PowerExpr e = canonicalize(std::move(terms));
        if (!e.empty()) return e;
    }
}

inline bool rel_close(double a, double b, double tol)
{
    if (a == b) return true;
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline std::string num(double v) { return format_double(v, 17); }

inline std::string describe(const PowerExpr& f, const Rational& s, Definition def)
{
    return "d^(" + s.str() + ") [def " + std::to_string(static_cast<int>(def)) + "] of " + render_text(f);
}

inline Definition random_definition(Rng& g) { return uniform_int(g, 0, 1) ? Definition::First : Definition::Second; }

/// Gamma(num)/Gamma(den) in double precision, zero at a denominator pole.
inline double numeric_ratio(const Rational& a, const Rational& b)
{
    if (b.is_nonpositive_integer()) return 0.0;
    return std::tgamma(a.to_double()) / std::tgamma(b.to_double());
}

/// Sum of coefficients, i.e. the value at x = 1.
inline double coefficient_sum(const PowerExpr& e)
{
    double s = 0.0;
    for (const auto& t : e.terms()) s += t.coeff.value();
    return s;
}

// ----------------------------------------------------------------- gamma

inline void check_recurrence(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        Rational z;
        do z = Rational(uniform_int(g, -240, 240), uniform_int(g, 1, 12));
        while (z.is_nonpositive_integer());
        const double lhs = gamma_numeric(z + Rational(1));
        const double rhs = z.to_double() * gamma_numeric(z);
        ++c.trials;
        c.expect(rel_close(lhs, rhs, 1e-10), "z = " + z.str(), num(rhs), num(lhs));
    }
}

inline void check_duplication(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const double z = uniform_real(g, 1e-3, 10.0);
        const double lhs = lanczos::gamma(z) * lanczos::gamma(z + 0.5);
        const double rhs = std::pow(2.0, 1.0 - 2.0 * z) * std::sqrt(std::numbers::pi) * lanczos::gamma(2.0 * z);
        ++c.trials;
        c.expect(rel_close(lhs, rhs, 1e-10), "z = " + num(z), num(rhs), num(lhs));
    }
}

inline void check_multiplication(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (int m = 2; m <= 4; ++m) {
        for (std::size_t i = 0; i < trials; ++i) {
            const double z = uniform_real(g, 1e-3, 5.0);
            double lhs = 1.0;
            for (int k = 0; k < m; ++k) lhs *= lanczos::gamma(z + static_cast<double>(k) / m);
            const double rhs = std::pow(2.0 * std::numbers::pi, (m - 1) / 2.0) * std::pow(m, 0.5 - m * z) *
                               lanczos::gamma(m * z);
            ++c.trials;
            c.expect(rel_close(lhs, rhs, 1e-9), "m = " + std::to_string(m) + ", z = " + num(z), num(rhs), num(lhs));
        }
    }
}

inline void check_half_integer(TheoremCheck& c, Rng&, std::size_t trials)
{
    if (trials == 0) return;
    for (int n = 0; n <= 10; ++n) {
        for (const Rational& z : {Rational(2 * n + 1, 2), Rational(1 - 2 * n, 2)}) {
            const GammaValue exact = gamma(z);
            const auto* rad = std::get_if<GammaExactRadical>(&exact);
            ++c.trials;
            if (!rad) {
                c.fail("z = " + z.str(), "exact radical", "other path");
                continue;
            }
            const double closed = rad->coeff.to_double() * std::sqrt(std::numbers::pi);
            c.expect(rel_close(closed, gamma_numeric(z), 1e-12), "z = " + z.str(), num(closed), num(gamma_numeric(z)));
        }
    }
}

inline void check_pole_ratio_limit(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const Rational a(uniform_int(g, -12, 0));
        const Rational b(uniform_int(g, -12, 0));
        ++c.trials;
        const GammaRatioValue exact = gamma_ratio(a, b);
        if (!std::holds_alternative<RatioExactRational>(exact)) {
            c.fail("(" + a.str() + ", " + b.str() + ")", "exact rational", "other");
            continue;
        }
        const auto perturbed = [&](double eps) {
            return std::tgamma(a.to_double() + eps) / std::tgamma(b.to_double() + eps);
        };
        const double e1 = 1e-6;
        const double e2 = 1e-7;
        const double limit = (e1 * perturbed(e2) - e2 * perturbed(e1)) / (e1 - e2);
        const double got = to_double(exact);
        c.expect(rel_close(got, limit, 1e-5), "(" + a.str() + ", " + b.str() + ")", num(limit), num(got));
    }
}

inline void check_reciprocal_continuity(TheoremCheck& c, Rng&, std::size_t trials)
{
    if (trials == 0) return;
    for (int k = 0; k >= -5; --k) {
        ++c.trials;
        const GammaRatioValue at_pole = reciprocal_gamma(Rational(k));
        c.expect(std::holds_alternative<RatioZero>(at_pole), "1/Gamma(" + std::to_string(k) + ")", "exact zero",
                 num(to_double(at_pole)));
        const double kf = std::tgamma(static_cast<double>(-k) + 1.0);
        for (const double eps : {1e-8, -1e-8}) {
            ++c.trials;
            const double r = 1.0 / lanczos::gamma(k + eps);
            const double bound = 2.0 * std::abs(eps) * (kf + 1.0);
            c.expect(std::abs(r) <= bound, "k = " + std::to_string(k) + ", eps = " + num(eps), "<= " + num(bound),
                     num(r));
        }
    }
}

// ---------------------------------------------------------------- deriv

inline Rational small_exponent(Rng& g) { return Rational(uniform_int(g, -12, 12), uniform_int(g, 1, 4)); }

template <GammaKernel K>
void check_integer_order(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 3, small_exponent);
        const auto n = static_cast<unsigned>(uniform_int(g, 0, 5));
        const PowerExpr expected = oracle_classical_derivative(f, n);
        for (const Definition def : {Definition::First, Definition::Second}) {
            ++c.trials;
            const FracResult r = derivative<K>(f, Rational(n), def);
            c.expect(r.principal == expected && r.family.empty(), describe(f, Rational(n), def), render_text(expected),
                     render_text(r));
        }
    }
}

template <GammaKernel K>
void check_negative_integer_order(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const auto n = static_cast<unsigned>(uniform_int(g, 1, 5));
        const auto exponent = [&](Rng& rng) {
            for (;;) {
                const Rational a = small_exponent(rng);
                if (!(a.is_integer() && a.is_negative() && a >= Rational(-static_cast<long long>(n)))) return a;
            }
        };
        const PowerExpr f = random_expr(g, 3, exponent);
        const PowerExpr expected = oracle_antiderivative(f, n);
        std::set<Rational> expected_exps;
        for (unsigned j = 0; j < n; ++j) expected_exps.insert(Rational(j));
        const Rational s(-static_cast<long long>(n));
        for (const Definition def : {Definition::First, Definition::Second}) {
            ++c.trials;
            const FracResult r = derivative<K>(f, s, def);
            const bool ok = r.principal == expected && r.family.kind() == ConstantFamily::Kind::Finite &&
                            r.family.live_count() == n && r.family.live_exponents() == expected_exps;
            c.expect(ok, describe(f, s, def), render_text(expected) + " + " + std::to_string(n) + " constants",
                     render_text(r));
        }
    }
}

template <GammaKernel K>
void check_positive_order_uniqueness(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 3, small_exponent);
        const Rational s(uniform_int(g, 1, 40), uniform_int(g, 1, 8));
        try {
            const FracResult a = derivative_def2<K>(f, s);
            const FracResult b = derivative_def2<K>(f, s);
            ++c.trials;
            c.expect(a.family.empty() && a == b, describe(f, s, Definition::Second), "empty family, identical results",
                     render_text(a) + " | " + render_text(b));
        } catch (const UndefinedDerivative&) {
            --i;  // resample
        }
    }
}

template <GammaKernel K>
void check_composition_exact(TheoremCheck& c, Rng& g, std::size_t trials)
{
    const auto run = [&](const PowerExpr& f, long long p, long long q) {
        const Rational s(p, q);
        const CompositionReport rep = compose<K>(f, s, static_cast<int>(q), Definition::Second);
        double oracle = 0.0;
        for (const auto& t : f.terms())
            oracle += t.coeff.value() * numeric_ratio(t.exponent + Rational(1), t.exponent - Rational(p) + Rational(1));
        const double got = coefficient_sum(rep.chained.principal);
        ++c.trials;
        c.expect(rep.discrepancy.zero() && rel_close(got, oracle, 1e-10),
                 std::to_string(q) + "-fold " + describe(f, s, Definition::Second), "P(x) = 0, value " + num(oracle),
                 "P(x) = " + render_text(rep.discrepancy) + ", value " + num(got));
    };
    if (trials > 0)
        for (long long p = 1; p <= 3; ++p)
            for (long long q = 2; q <= 5; ++q)
                for (const Rational& a : {Rational(1, 2), Rational(2), Rational(7, 2), Rational(5)})
                    run(monomial(Coeff(1), a), p, q);
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 2, [](Rng& r) { return Rational(uniform_int(r, 0, 40), uniform_int(r, 1, 6)); });
        run(f, uniform_int(g, 1, 3), uniform_int(g, 2, 5));
    }
}

inline Rational small_order(Rng& g)
{
    for (;;) {
        const long long den = uniform_int(g, 2, 7);
        const Rational s(uniform_int(g, -(den - 1), den - 1), den);
        if (!s.is_zero()) return s;
    }
}

template <GammaKernel K>
void check_commutativity(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 2, small_exponent);
        const Rational s1 = small_order(g);
        const Rational s2 = small_order(g);
        const Rational ab[] = {s1, s2};
        const Rational ba[] = {s2, s1};
        try {
            const FracResult r12 = apply_chain<K>(f, ab, Definition::Second);
            const FracResult r21 = apply_chain<K>(f, ba, Definition::Second);
            const FracResult direct = derivative_def2<K>(f, s1 + s2);
            ++c.trials;
            const std::string in = describe(f, s1, Definition::Second) + " then d^(" + s2.str() + ")";
            c.expect(r12 == r21 && r12.principal == direct.principal, in, render_text(direct),
                     render_text(r12) + " | " + render_text(r21));
            // Stepwise numeric product where no intermediate argument is a pole.
            for (const auto& t : f.terms()) {
                const Rational a0 = t.exponent + Rational(1);
                const Rational a1 = a0 - s1;
                const Rational a2 = a1 - s2;
                if (a0.is_nonpositive_integer() || a1.is_nonpositive_integer()) continue;
                const double oracle = t.coeff.value() * numeric_ratio(a0, a1) * numeric_ratio(a1, a2);
                const double got = r12.principal.coefficient(t.exponent - s1 - s2).value();
                c.expect(rel_close(got, oracle, 1e-10), in, num(oracle), num(got));
            }
        } catch (const UndefinedDerivative&) {
            --i;
        }
    }
}

template <GammaKernel K>
void check_semi_commutativity(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 3, small_exponent);
        const Rational s1 = random_nonzero(g, 12, 4);
        const Rational s2 = random_nonzero(g, 12, 4);
        const Definition def = random_definition(g);
        const Rational ab[] = {s1, s2};
        const Rational ba[] = {s2, s1};
        try {
            const FracResult r12 = apply_chain<K>(f, ab, def);
            const FracResult r21 = apply_chain<K>(f, ba, def);
            ++c.trials;
            const PowerExpr diff = r12.principal - r21.principal;
            for (const auto& t : diff.terms())
                c.expect(r12.family.contains_exponent(t.exponent) || r21.family.contains_exponent(t.exponent),
                         describe(f, s1, def) + " then d^(" + s2.str() + ")", "difference inside constant span",
                         "x^(" + t.exponent.str() + ") outside");
        } catch (const UndefinedDerivative&) {
            --i;
        }
    }
}

template <GammaKernel K>
void check_semi_linearity(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        std::vector<std::pair<Rational, PowerExpr>> fs;
        const auto n = uniform_int(g, 2, 3);
        for (long long j = 0; j < n; ++j) fs.emplace_back(random_nonzero(g, 6, 3), random_expr(g, 2, small_exponent));
        const Rational s = random_nonzero(g, 12, 4);
        const Definition def = random_definition(g);
        try {
            const FracResult whole = derivative_linear<K>(fs, s, def);
            std::vector<std::pair<Rational, FracResult>> parts;
            for (const auto& [a, f] : fs) parts.emplace_back(a, derivative<K>(f, s, def));
            const FracResult sum = combine(parts);
            ++c.trials;
            const bool exact_needed = whole.family.empty() && sum.family.empty();
            const bool ok = exact_needed ? whole.principal == sum.principal : semi_equal(whole, sum);
            std::string in = "d^(" + s.str() + ") of";
            for (const auto& [a, f] : fs) in += " (" + a.str() + ")*(" + render_text(f) + ")";
            c.expect(ok, in, render_text(sum), render_text(whole));
        } catch (const UndefinedDerivative&) {
            --i;
        }
    }
}

template <GammaKernel K>
void check_exponent_law(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 4, small_exponent);
        const Rational s = random_rational(g, 20, 6);
        const Definition def = random_definition(g);
        try {
            const FracResult r = derivative<K>(f, s, def);
            std::set<Rational> expected;
            for (const auto& t : f.terms()) {
                const Rational a = t.exponent + Rational(1);
                if (a.is_nonpositive_integer() || !(a - s).is_nonpositive_integer()) expected.insert(t.exponent - s);
            }
            const std::vector<Rational> got_list = r.principal.exponents();
            const std::set<Rational> got(got_list.begin(), got_list.end());
            ++c.trials;
            c.expect(got == expected, describe(f, s, def), std::to_string(expected.size()) + " shifted exponents",
                     render_text(r.principal));
        } catch (const UndefinedDerivative&) {
            --i;
        }
    }
}

template <GammaKernel K>
void check_undefined_cases(TheoremCheck& c, Rng& g, std::size_t trials)
{
    const auto expect_throw = [&](const Rational& alpha, const Rational& s) {
        const PowerExpr f = monomial(Coeff(1), alpha);
        for (const Definition def : {Definition::First, Definition::Second}) {
            ++c.trials;
            try {
                const FracResult r = derivative<K>(f, s, def);
                c.fail(describe(f, s, def), "UndefinedDerivative", render_text(r));
            } catch (const UndefinedDerivative&) {
            }
        }
    };
    if (trials > 0) {
        expect_throw(Rational(-1), Rational(-1));
        expect_throw(Rational(-2), Rational(-1, 2));
        expect_throw(Rational(-3), Rational(1, 3));
        // Both arguments at poles: the limit is finite.
        ++c.trials;
        const FracResult r = derivative<K>(monomial(Coeff(1), Rational(-2)), Rational(1), Definition::Second);
        c.expect(r.principal == monomial(Coeff(-2), Rational(-3)), "d x^(-2)", "-2*x^(-3)", render_text(r));
    }
    for (std::size_t i = 0; i < trials; ++i) {
        const Rational alpha(-uniform_int(g, 1, 8));
        Rational s;
        do s = Rational(uniform_int(g, -30, 30), uniform_int(g, 2, 6));
        while (s.is_integer());
        expect_throw(alpha, s);
    }
}

template <GammaKernel K>
void check_composition_discrepancy(TheoremCheck& c, Rng& g, std::size_t trials)
{
    const auto run = [&](const PowerExpr& f, long long q, const PowerExpr* expected_chain) {
        const CompositionReport rep = compose<K>(f, Rational(-1, q), static_cast<int>(q), Definition::Second);
        const bool ok = (!expected_chain || rep.chained.principal == *expected_chain) && rep.chained.family.empty() &&
                        rep.direct.family.live_count() == 1 && rep.discrepancy.principal_gap.empty() &&
                        rep.discrepancy.support() == std::set<Rational>{Rational(0)};
        ++c.trials;
        c.expect(ok, std::to_string(q) + "-fold d^(-1/" + std::to_string(q) + ") of " + render_text(f),
                 "P(x) in span{1}", render_text(rep));
    };
    if (trials > 0) {
        const PowerExpr third = monomial(Coeff(Rational(1, 3)), Rational(3));
        for (long long q = 2; q <= 5; ++q) run(monomial(Coeff(1), Rational(2)), q, &third);
    }
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 2, [](Rng& r) { return Rational(uniform_int(r, 0, 30), uniform_int(r, 1, 5)); });
        run(f, uniform_int(g, 2, 6), nullptr);
    }
}

// ---------------------------------------------------------------- model

template <GammaKernel K>
void check_semi_equality(TheoremCheck& c, Rng& g, std::size_t trials)
{
    for (std::size_t i = 0; i < trials; ++i) {
        const PowerExpr f = random_expr(g, 2, small_exponent);
        const Definition def = random_definition(g);
        const Rational s(-uniform_int(g, 4, 20), uniform_int(g, 1, 4));  // |s| >= 1: nonempty family
        FracResult base;
        try {
            base = derivative<K>(f, s, def);
        } catch (const UndefinedDerivative&) {
            --i;
            continue;
        }
        const std::set<Rational> span = base.family.live_exponents(6);
        const auto variant = [&]() {
            FracResult v = base;
            for (const auto& e : span)
                if (uniform_int(g, 0, 1)) v.principal = v.principal + monomial(Coeff(random_nonzero(g, 9, 4)), e);
            return v;
        };
        const FracResult a = variant();
        const FracResult b = variant();
        const FracResult d = variant();
        const std::string in = describe(f, s, def);
        c.trials += 1;
        c.expect(semi_equal(a, a), in, "reflexive", "not reflexive");
        c.expect(semi_equal(a, b) && semi_equal(b, a), in, "symmetric, related", "not related");
        c.expect(!(semi_equal(a, b) && semi_equal(b, d)) || semi_equal(a, d), in, "transitive", "not transitive");
        if (i % 2 == 0) {
            // Cross-class: a term outside the constant span.
            Rational outside = *span.rbegin() + Rational(1, 11);
            while (base.family.contains_exponent(outside)) outside += Rational(1, 13);
            FracResult x = a;
            x.principal = x.principal + monomial(Coeff(random_nonzero(g, 9, 4)), outside);
            c.trials += 1;
            c.expect(!semi_equal(a, x) && !semi_equal(x, a), in + " plus x^(" + outside.str() + ")", "not related",
                     "related");
        }
    }
}

inline void check_convergence_criterion(TheoremCheck& c, Rng& g, std::size_t trials)
{
    if (trials > 0) {
        const ConvergenceVerdict ifs = check_convergence(CoeffSequence(InverseFactorialSquare{}), Rational(1, 2));
        ++c.trials;
        c.expect(ifs.passes && ifs.estimated_limit < kConvergenceThreshold, "inverse factorial square", "passes",
                 "limit " + num(ifs.estimated_limit));
        for (std::size_t j = 0; j < ifs.estimates.size(); ++j) {
            const double n = static_cast<double>(j + 2);
            const double closed = n / ((n + 1) * (n + 1));
            if (!rel_close(ifs.estimates[j], closed, 1e-9)) {
                c.fail("inverse factorial square, n = " + num(n), num(closed), num(ifs.estimates[j]));
                break;
            }
        }

        const ConvergenceVerdict geo = check_convergence(CoeffSequence(Geometric{0.5}), Rational(1, 2));
        ++c.trials;
        c.expect(!geo.passes && geo.estimates.back() > geo.estimates.front(), "geometric 1/2", "fails, diverging",
                 geo.passes ? "passes" : "not diverging");

        ++c.trials;
        c.expect(check_convergence(CoeffSequence({{-1, 3.0}}), Rational(1, 2)).passes, "finite {c_-1 = 3}", "passes",
                 "fails");

        const FracResult r = derivative_def1(monomial(Coeff(1), Rational(1)), Rational(1, 2));
        for (const double x : {0.5, 1.0, 2.0}) {
            FracResult r30 = r;
            FracResult r60 = r;
            r30.family.set_truncation(30);
            r60.family.set_truncation(60);
            const CoeffSequence seq(InverseFactorialSquare{});
            const double v30 = evaluate_result(r30, x, seq);
            const double v60 = evaluate_result(r60, x, seq);
            ++c.trials;
            c.expect(std::abs(v30 - v60) < 1e-12, "truncation 30 vs 60 at x = " + num(x), "< 1e-12",
                     num(std::abs(v30 - v60)));
        }
    }
    for (std::size_t i = 0; i < trials; ++i) {
        const double ratio = uniform_real(g, 0.05, 3.0);
        ++c.trials;
        c.expect(!check_convergence(CoeffSequence(Geometric{ratio}), Rational(1, 2)).passes, "geometric " + num(ratio),
                 "fails", "passes");
        std::map<long long, double> finite;
        const auto n = uniform_int(g, 1, 6);
        for (long long k = 1; k <= n; ++k) finite[-k] = uniform_real(g, -5.0, 5.0);
        ++c.trials;
        c.expect(check_convergence(CoeffSequence(finite), Rational(1, 2)).passes, "finite support", "passes", "fails");
    }
}

} // namespace harness

/// Runs every property check with the coefficient source K. Deterministic in
/// `seed`; with trials == 0 every check passes without running a case.
template <GammaKernel K = ExactKernel>
std::vector<TheoremCheck> run_suite(std::uint64_t seed, std::size_t trials_per_theorem)
{
    using Fn = std::function<void(TheoremCheck&, harness::Rng&, std::size_t)>;
    const std::vector<std::pair<std::string, Fn>> checks = {
        {"gamma.recurrence", harness::check_recurrence},
        {"gamma.duplication", harness::check_duplication},
        {"gamma.multiplication", harness::check_multiplication},
        {"gamma.half_integer", harness::check_half_integer},
        {"gamma.pole_ratio_limit", harness::check_pole_ratio_limit},
        {"gamma.reciprocal_continuity", harness::check_reciprocal_continuity},
        {"deriv.integer_order", harness::check_integer_order<K>},
        {"deriv.negative_integer_order", harness::check_negative_integer_order<K>},
        {"deriv.positive_order_uniqueness", harness::check_positive_order_uniqueness<K>},
        {"deriv.composition_exact", harness::check_composition_exact<K>},
        {"deriv.composition_discrepancy", harness::check_composition_discrepancy<K>},
        {"deriv.commutativity", harness::check_commutativity<K>},
        {"deriv.semi_commutativity", harness::check_semi_commutativity<K>},
        {"deriv.semi_linearity", harness::check_semi_linearity<K>},
        {"deriv.exponent_law", harness::check_exponent_law<K>},
        {"deriv.undefined_cases", harness::check_undefined_cases<K>},
        {"model.semi_equality", harness::check_semi_equality<K>},
        {"convergence.criterion", harness::check_convergence_criterion},
    };
    std::vector<TheoremCheck> out;
    out.reserve(checks.size());
    for (std::size_t i = 0; i < checks.size(); ++i) {
        TheoremCheck check;
        check.id = checks[i].first;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i)};
        harness::Rng rng(seq);
        try {
            checks[i].second(check, rng, trials_per_theorem);
        } catch (const std::exception& e) {
            check.fail("check aborted", "no exception", e.what());
        }
        out.push_back(std::move(check));
    }
    return out;
}

inline bool all_passed(const std::vector<TheoremCheck>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.passed(); });
}

inline std::string report_text(const std::vector<TheoremCheck>& checks)
{
    std::string out;
    std::size_t failed = 0;
    for (const auto& c : checks) {
        out += std::string(c.passed() ? "PASS " : "FAIL ") + c.id + " (" + std::to_string(c.trials) + " trials";
        if (!c.passed()) out += ", " + std::to_string(c.failure_count) + " failures";
        out += ")\n";
        for (const auto& f : c.failures)
            out += "    input: " + f.input + "\n    expected: " + f.expected + "\n    got: " + f.got + "\n";
        failed += c.passed() ? 0 : 1;
    }
    out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks passed\n";
    return out;
}

inline nlohmann::json report_json(const std::vector<TheoremCheck>& checks)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& f : c.failures) failures.push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
        arr.push_back({{"id", c.id},
                       {"status", c.passed() ? "pass" : "fail"},
                       {"trials", c.trials},
                       {"failureCount", c.failure_count},
                       {"failures", std::move(failures)}});
    }
    return {{"checks", std::move(arr)}};
}

} // namespace fracpow
