#pragma once

// Real gamma function at exact rational arguments: exact factorial and
// half-integer paths, pole detection, and ratios of gammas with the
// simultaneous-pole limit resolved exactly.

#include "fracpow/coefficient.hpp"
#include "fracpow/lanczos.hpp"
#include "fracpow/rational.hpp"

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>
#include <variant>

namespace fracpow {

/// Positive integers above this take the numeric path (the exact factorial
/// would be thousands of digits long).
inline constexpr long long kExactFactorialLimit = 2000;

struct GammaFinite {
    double value;
};
struct GammaExactRational {
    Rational value;
};
/// coeff * sqrt(pi), with the numeric rendering alongside.
struct GammaExactRadical {
    Rational coeff;
    double value;
};
struct GammaPole {
    BigInt at;
};

using GammaValue = std::variant<GammaFinite, GammaExactRational, GammaExactRadical, GammaPole>;

inline bool is_pole(const GammaValue& v) { return std::holds_alternative<GammaPole>(v); }

inline double to_double(const GammaValue& v)
{
    struct {
        double operator()(const GammaFinite& f) const { return f.value; }
        double operator()(const GammaExactRational& r) const { return r.value.to_double(); }
        double operator()(const GammaExactRadical& r) const { return r.value; }
        double operator()(const GammaPole&) const { return std::numeric_limits<double>::infinity(); }
    } visitor;
    return std::visit(visitor, v);
}

/// Gamma(n + 1/2) / sqrt(pi) for any integer n (positive or negative).
inline Rational half_integer_gamma_factor(const BigInt& n)
{
    if (n >= 0) {
        const auto k = static_cast<unsigned long>(n);
        // (2k)! / (4^k k!)
        return Rational(factorial(2 * k), BigInt(BigInt(1) << (2 * k)) * factorial(k));
    }
    const auto k = static_cast<unsigned long>(-n);
    // Gamma(1/2 - k) = (-4)^k k! / (2k)!
    BigInt num = BigInt(BigInt(1) << (2 * k)) * factorial(k);
    if (k % 2 == 1) num = -num;
    return Rational(num, factorial(2 * k));
}

/// Numeric gamma at a rational, sin(pi z) reduced exactly. Never uses the
/// exact paths; the reference for consistency checks between paths.
inline double gamma_numeric(const Rational& z)
{
    if (z.is_nonpositive_integer()) return std::numeric_limits<double>::infinity();
    return GammaMonomial::gamma_value(z);
}

inline GammaValue gamma(const Rational& z)
{
    if (z.is_nonpositive_integer()) return GammaPole{z.num()};
    if (z.is_positive_integer() && z.num() <= kExactFactorialLimit)
        return GammaExactRational{Rational(factorial(static_cast<unsigned long>(z.num()) - 1))};
    if (z.is_half_integer() && boost::multiprecision::abs(z.num()) <= 2 * kExactFactorialLimit) {
        const Rational c = half_integer_gamma_factor(z.floor());
        return GammaExactRadical{c, c.to_double() * std::sqrt(std::numbers::pi)};
    }
    return GammaFinite{gamma_numeric(z)};
}

// ---------------------------------------------------------------------------

struct RatioExactRational {
    Rational value;
};
struct RatioExactRadical {
    Rational rational_part;
    int sqrt_pi_power;  // -1, 0 or 1
};
struct RatioNumeric {
    double value;
};
struct RatioZero {};
struct RatioUndefined {};

using GammaRatioValue = std::variant<RatioExactRational, RatioExactRadical, RatioNumeric, RatioZero, RatioUndefined>;

inline double to_double(const GammaRatioValue& v)
{
    struct {
        double operator()(const RatioExactRational& r) const { return r.value.to_double(); }
        double operator()(const RatioExactRadical& r) const
        {
            return r.rational_part.to_double() * std::pow(std::sqrt(std::numbers::pi), r.sqrt_pi_power);
        }
        double operator()(const RatioNumeric& r) const { return r.value; }
        double operator()(const RatioZero&) const { return 0.0; }
        double operator()(const RatioUndefined&) const { return std::numeric_limits<double>::quiet_NaN(); }
    } visitor;
    return std::visit(visitor, v);
}

/// Gamma(num)/Gamma(den) as an exact coefficient, or the reason it has none.
struct RatioCoeff {
    enum class Kind { Value, Zero, Undefined };
    Kind kind = Kind::Value;
    Coeff value;

    bool undefined() const { return kind == Kind::Undefined; }
    bool zero() const { return kind == Kind::Zero; }
};

inline RatioCoeff gamma_ratio_coeff(const Rational& num, const Rational& den)
{
    const bool num_pole = num.is_nonpositive_integer();
    const bool den_pole = den.is_nonpositive_integer();
    if (num_pole && den_pole) {
        // lim Gamma(num + e)/Gamma(den + e) as a finite product
        const BigInt m = num.num() - den.num();
        Rational p(1);
        if (m >= 0) {
            for (BigInt j = 0; j < m; ++j) p *= den + Rational(j);
            return {RatioCoeff::Kind::Value, Coeff(p)};
        }
        for (BigInt j = 0; j < -m; ++j) {
            const Rational factor = num + Rational(j);
            if (factor.is_zero()) return {RatioCoeff::Kind::Undefined, {}};
            p *= factor;
        }
        return {RatioCoeff::Kind::Value, Coeff(p.reciprocal())};
    }
    if (den_pole) return {RatioCoeff::Kind::Zero, {}};
    if (num_pole) return {RatioCoeff::Kind::Undefined, {}};
    if (const Rational d = num - den; d.is_integer() && fits_ll(d.num()) && boost::multiprecision::abs(d.num()) <= 4096) {
        const long long m = static_cast<long long>(d.num());
        Rational p(1);
        for (long long j = 0; j < (m < 0 ? -m : m); ++j) p *= (m < 0 ? num : den) + Rational(j);
        return {RatioCoeff::Kind::Value, Coeff(m < 0 ? p.reciprocal() : p)};
    }
    return {RatioCoeff::Kind::Value, Coeff::gamma(num) * Coeff::gamma(den).inverse()};
}

inline GammaRatioValue gamma_ratio(const Rational& num, const Rational& den)
{
    const RatioCoeff rc = gamma_ratio_coeff(num, den);
    if (rc.kind == RatioCoeff::Kind::Undefined) return RatioUndefined{};
    if (rc.kind == RatioCoeff::Kind::Zero) return RatioZero{};
    const Coeff& c = rc.value;
    if (c.is_rational()) return RatioExactRational{c.as_rational()};
    if (c.is_monomial()) {
        const auto& [m, r] = *c.terms().begin();
        const int p = m.sqrt_pi_power();
        if (m.is_radical() && (p == 1 || p == -1)) return RatioExactRadical{r, p};
    }
    return RatioNumeric{c.value()};
}

/// 1/Gamma(z); exactly zero at the poles.
inline GammaRatioValue reciprocal_gamma(const Rational& z) { return gamma_ratio(Rational(1), z); }

// ---------------------------------------------------------------------------

/// Source of the gamma-ratio coefficients used by the derivative operators.
template <class K>
concept GammaKernel = requires(const Rational& a, const Rational& b) {
    { K::ratio(a, b) } -> std::convertible_to<RatioCoeff>;
};

struct ExactKernel {
    static RatioCoeff ratio(const Rational& num, const Rational& den) { return gamma_ratio_coeff(num, den); }
};

} // namespace fracpow
