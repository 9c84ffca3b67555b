#pragma once

// The two fractional derivatives of power functions, their composition, and
// linear combinations.
//
//   d^s(a x^alpha) = a Gamma(alpha+1)/Gamma(alpha-s+1) x^(alpha-s)  +  constant terms
//
// First definition: constant terms  sum_{k<=-1} c_k x^(k-s) / Gamma(k-s+1).
// Second definition: constant terms sum_{k=-[s]}^{-1} c_k x^(k-s) / Gamma(k-[s]+1),
// with [s] the integer part of s truncated toward zero.

#include "fracpow/errors.hpp"
#include "fracpow/gamma.hpp"
#include "fracpow/power.hpp"
#include "fracpow/rational.hpp"

#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace fracpow {

/// Families larger than this are refused rather than materialized.
inline constexpr long long kMaxFamilySize = 10000;

/// [s]: integer part truncated toward zero.
inline Rational entire_part(const Rational& s) { return Rational(s.trunc()); }

struct Spawned {
    std::vector<ConstantTermSpec> specs;
    std::optional<TailSpec> tail;
};

/// Constant terms introduced by one application of order s.
inline Spawned spawn_family(const Rational& s, Definition def, int generation)
{
    Spawned out;
    const auto finite = [&](long long count, const Rational& gamma_shift) {
        if (count > kMaxFamilySize) throw Error("order " + s.str() + " needs too many constants");
        for (long long k = -1; k >= -count; --k)
            out.specs.push_back({k, Rational(k) - s, Rational(k) - gamma_shift + Rational(1), generation, Coeff(1)});
    };
    if (def == Definition::First) {
        if (s.is_integer()) {
            if (s.is_negative()) finite(static_cast<long long>(-s.num()), s);
        } else {
            out.tail = TailSpec{generation, s, -1};
        }
    } else if (s.is_negative()) {
        const BigInt t = -s.trunc();
        if (t > kMaxFamilySize) throw Error("order " + s.str() + " needs too many constants");
        finite(static_cast<long long>(t), entire_part(s));
    }
    return out;
}

namespace detail {

// A term followed from the step that created it. Its coefficient after the
// accumulated order R is origin * Gamma(e+1)/Gamma(e-R+1), the telescoped
// product of the per-step ratios; intermediate poles cancel in the limit.
struct Tracked {
    Coeff origin;
    Rational exponent;     // exponent when created
    Rational accumulated;  // order applied since
};

template <GammaKernel K>
RatioCoeff step_ratio(const Tracked& t, const Rational& next_order)
{
    const Rational from = t.exponent + Rational(1);
    return K::ratio(from, from - t.accumulated - next_order);
}

} // namespace detail

/// Successive application of the given orders. Each application introduces
/// a fresh generation of constants; earlier constant terms are differentiated
/// as ordinary power terms.
template <GammaKernel K = ExactKernel>
FracResult apply_chain(const PowerExpr& f, std::span<const Rational> orders, Definition def)
{
    std::vector<detail::Tracked> principal;
    for (const auto& t : f.terms()) principal.push_back({t.coeff, t.exponent, Rational(0)});

    struct TrackedSpec {
        ConstantTermSpec spec;
        detail::Tracked track;
    };
    std::vector<TrackedSpec> specs;
    std::vector<TailSpec> tails;
    Rational total(0);

    int generation = 0;
    for (const Rational& s : orders) {
        for (auto& p : principal) {
            if (detail::step_ratio<K>(p, s).undefined())
                throw UndefinedDerivative(s, p.exponent - p.accumulated);
            p.accumulated += s;
        }
        for (auto& ts : specs) {
            if (detail::step_ratio<K>(ts.track, s).undefined())
                throw UndefinedDerivative(s, ts.track.exponent - ts.track.accumulated);
            ts.track.accumulated += s;
        }
        for (auto& tail : tails) tail.shift += s;

        Spawned fresh = spawn_family(s, def, generation++);
        for (auto& spec : fresh.specs) specs.push_back({spec, {Coeff(1), spec.exponent, Rational(0)}});
        if (fresh.tail) tails.push_back(*fresh.tail);
        total += s;
    }

    FracResult r;
    r.order = total;
    r.definition = def;

    std::vector<PowerTerm> terms;
    for (const auto& p : principal) {
        const RatioCoeff rc = detail::step_ratio<K>({p.origin, p.exponent, Rational(0)}, p.accumulated);
        if (rc.undefined()) throw UndefinedDerivative(total, p.exponent);
        if (rc.zero()) continue;
        terms.push_back({p.origin * rc.value, p.exponent - p.accumulated});
    }
    r.principal = canonicalize(std::move(terms));

    std::vector<ConstantTermSpec> live;
    for (auto& ts : specs) {
        const RatioCoeff rc = detail::step_ratio<K>({ts.track.origin, ts.track.exponent, Rational(0)}, ts.track.accumulated);
        if (rc.undefined()) throw UndefinedDerivative(total, ts.track.exponent);
        if (rc.zero()) continue;
        ConstantTermSpec spec = ts.spec;
        spec.exponent = ts.track.exponent - ts.track.accumulated;
        spec.scale = rc.value;
        if (spec.live()) live.push_back(std::move(spec));
    }
    // A tail shifted by an integer S keeps only the terms with S - 1 < k <= -1.
    std::vector<TailSpec> open_tails;
    for (auto& t : tails) {
        if (!t.shift.is_integer()) {
            open_tails.push_back(std::move(t));
            continue;
        }
        for (long long k = -1; t.live_at(k); --k)
            live.push_back({k, t.exponent_at(k), t.gamma_arg_at(k), t.generation, Coeff(1)});
    }
    r.family = ConstantFamily(std::move(live), std::move(open_tails));
    return r;
}

template <GammaKernel K = ExactKernel>
FracResult derivative(const PowerExpr& f, const Rational& s, Definition def)
{
    const Rational orders[] = {s};
    return apply_chain<K>(f, orders, def);
}

template <GammaKernel K = ExactKernel>
FracResult derivative_def1(const PowerExpr& f, const Rational& s)
{
    return derivative<K>(f, s, Definition::First);
}

template <GammaKernel K = ExactKernel>
FracResult derivative_def2(const PowerExpr& f, const Rational& s)
{
    return derivative<K>(f, s, Definition::Second);
}

/// Derivative of sum_i a_i f_i, taken after combining the operands.
template <GammaKernel K = ExactKernel>
FracResult derivative_linear(std::span<const std::pair<Rational, PowerExpr>> fs, const Rational& s, Definition def)
{
    PowerExpr sum;
    for (const auto& [a, f] : fs) sum = sum + Coeff(a) * f;
    return derivative<K>(sum, s, def);
}

// ---------------------------------------------------------------------------

/// Difference between an n-fold chain and the single application of the
/// total order: the principal gap plus the exponents whose constant terms
/// appear on one side only (the P(x) of the composition rule).
struct Discrepancy {
    PowerExpr principal_gap;
    std::set<Rational> family_gap;

    bool zero() const { return principal_gap.empty() && family_gap.empty(); }

    std::set<Rational> support() const
    {
        std::set<Rational> out = family_gap;
        for (const auto& t : principal_gap.terms()) out.insert(t.exponent);
        return out;
    }
};

/// Exponents that are live in one family but not representable in the other.
inline std::set<Rational> family_mismatch(const ConstantFamily& a, const ConstantFamily& b)
{
    std::set<Rational> out;
    for (const auto& e : a.live_exponents())
        if (!b.contains_exponent(e)) out.insert(e);
    for (const auto& e : b.live_exponents())
        if (!a.contains_exponent(e)) out.insert(e);
    return out;
}

struct CompositionReport {
    FracResult chained;
    FracResult direct;
    Discrepancy discrepancy;
};

template <GammaKernel K = ExactKernel>
CompositionReport compose(const PowerExpr& f, const Rational& s, int n, Definition def)
{
    if (n < 1) throw std::invalid_argument("compose needs n >= 1");
    const std::vector<Rational> orders(static_cast<std::size_t>(n), s);
    CompositionReport rep;
    rep.chained = apply_chain<K>(f, orders, def);
    rep.direct = derivative<K>(f, s * Rational(n), def);
    rep.discrepancy.principal_gap = rep.chained.principal - rep.direct.principal;
    rep.discrepancy.family_gap = family_mismatch(rep.chained.family, rep.direct.family);
    return rep;
}

} // namespace fracpow
