#pragma once

// Exact coefficient algebra for gamma-ratio products.
//
// A Coeff is a finite Q-linear combination of gamma monomials
//     r * prod_a Gamma(a)^e_a
// where every Gamma argument is reduced to its representative in (0, 1)
// through the recurrence Gamma(z + 1) = z Gamma(z). Gamma(1/2) is sqrt(pi).
// Under this normal form a telescoping product such as
//     Gamma(a+1)/Gamma(b+1) * Gamma(b+1)/Gamma(c+1)
// cancels structurally, so equality of coefficients is decided exactly.

#include "fracpow/lanczos.hpp"
#include "fracpow/rational.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace fracpow {

/// Arguments with |floor(a)| beyond this are kept unreduced.
inline constexpr long long kGammaReduceLimit = 1000;

/// Product of Gamma(a)^e over a finite set of arguments.
class GammaMonomial {
public:
    using Factors = std::map<Rational, int>;

    GammaMonomial() = default;

    static GammaMonomial gamma_of(const Rational& a, int power = 1)
    {
        GammaMonomial m;
        if (power != 0) m.factors_.emplace(a, power);
        return m;
    }

    const Factors& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    /// Power of Gamma(1/2), i.e. of sqrt(pi).
    int sqrt_pi_power() const
    {
        auto it = factors_.find(Rational(1, 2));
        return it == factors_.end() ? 0 : it->second;
    }

    /// True when the only factor (if any) is a power of sqrt(pi).
    bool is_radical() const { return factors_.empty() || (factors_.size() == 1 && sqrt_pi_power() != 0); }

    GammaMonomial inverse() const
    {
        GammaMonomial m;
        for (const auto& [a, e] : factors_) m.factors_.emplace(a, -e);
        return m;
    }

    friend GammaMonomial operator*(const GammaMonomial& x, const GammaMonomial& y)
    {
        GammaMonomial m = x;
        for (const auto& [a, e] : y.factors_) {
            auto [it, inserted] = m.factors_.emplace(a, e);
            if (!inserted) {
                it->second += e;
                if (it->second == 0) m.factors_.erase(it);
            }
        }
        return m;
    }

    /// log|value| and sign; all arguments are non-poles by construction.
    std::pair<double, int> log_abs_and_sign() const
    {
        double log_abs = 0.0;
        int sign = 1;
        for (const auto& [a, e] : factors_) {
            const auto [la, sa] = log_abs_gamma_signed(a);
            log_abs += static_cast<double>(e) * la;
            if (sa < 0 && (e % 2 != 0)) sign = -sign;
        }
        return {log_abs, sign};
    }

    double value() const
    {
        double v = 1.0;
        for (const auto& [a, e] : factors_) v *= std::pow(gamma_value(a), e);
        if (std::isfinite(v) && v != 0.0) return v;
        const auto [la, s] = log_abs_and_sign();
        return s * std::exp(la);
    }

    friend bool operator==(const GammaMonomial&, const GammaMonomial&) = default;
    friend auto operator<=>(const GammaMonomial& x, const GammaMonomial& y) { return x.factors_ <=> y.factors_; }

    /// Numeric Gamma at a non-pole rational, with sin(pi a) reduced exactly.
    static double gamma_value(const Rational& a)
    {
        const double x = a.to_double();
        if (x >= 0.5) return lanczos::gamma(x);
        return lanczos::gamma(x, sin_pi(a));
    }

    static std::pair<double, int> log_abs_gamma_signed(const Rational& a)
    {
        const double x = a.to_double();
        if (x >= 0.5) return {lanczos::log_abs_gamma(x), 1};
        const double s = sin_pi(a);
        // sign(Gamma(x)) = sign(sin(pi x)) for x < 1/2 by reflection
        return {lanczos::log_abs_gamma(x, s), s < 0 ? -1 : 1};
    }

    /// sin(pi a) using the exact fractional part of a.
    static double sin_pi(const Rational& a)
    {
        const BigInt fl = a.floor();
        const Rational f = a - Rational(fl);
        if (f.is_zero()) return 0.0;
        const Rational folded = f > Rational(1, 2) ? Rational(1) - f : f;
        const double s = std::sin(std::numbers::pi * folded.to_double());
        return (fl % 2 == 0) ? s : -s;
    }

private:
    Factors factors_;
};

/// Finite Q-linear combination of gamma monomials.
class Coeff {
public:
    using Terms = std::map<GammaMonomial, Rational>;

    Coeff() = default;
    Coeff(const Rational& r)  // NOLINT(google-explicit-constructor)
    {
        if (!r.is_zero()) terms_.emplace(GammaMonomial{}, r);
    }
    Coeff(long long v) : Coeff(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Coeff(const Rational& r, const GammaMonomial& m)
    {
        if (!r.is_zero()) terms_.emplace(m, r);
    }

    /// Gamma(a) as an exact coefficient; a must not be a non-positive integer.
    static Coeff gamma(const Rational& a)
    {
        if (a.is_nonpositive_integer()) throw std::domain_error("gamma pole at " + a.str());
        auto [r, m] = reduce(a);
        return Coeff(r, m);
    }

    /// sqrt(pi)^p
    static Coeff sqrt_pi(int p) { return Coeff(Rational(1), GammaMonomial::gamma_of(Rational(1, 2), p)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    Rational as_rational() const
    {
        if (terms_.empty()) return Rational(0);
        if (!is_rational()) throw std::logic_error("coefficient is not rational");
        return terms_.begin()->second;
    }

    double value() const
    {
        double v = 0.0;
        for (const auto& [m, r] : terms_) {
            const double mv = m.value();
            const double rv = r.to_double();
            double t = rv * mv;
            if (!std::isfinite(t) || (t == 0.0 && !r.is_zero())) {
                const auto [la, s] = m.log_abs_and_sign();
                t = r.sign() * s * std::exp(la + rational_log_abs(r));
            }
            v += t;
        }
        return v;
    }

    /// Inverse of a single-monomial coefficient.
    Coeff inverse() const
    {
        if (!is_monomial()) throw std::domain_error("inverse of a non-monomial coefficient");
        const auto& [m, r] = *terms_.begin();
        return Coeff(r.reciprocal(), m.inverse());
    }

    Coeff operator-() const
    {
        Coeff c;
        for (const auto& [m, r] : terms_) c.terms_.emplace(m, -r);
        return c;
    }

    friend Coeff operator+(const Coeff& a, const Coeff& b)
    {
        Coeff c = a;
        for (const auto& [m, r] : b.terms_) c.accumulate(m, r);
        return c;
    }
    friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
    friend Coeff operator*(const Coeff& a, const Coeff& b)
    {
        Coeff c;
        for (const auto& [ma, ra] : a.terms_)
            for (const auto& [mb, rb] : b.terms_) c.accumulate(ma * mb, ra * rb);
        return c;
    }
    friend Coeff operator*(const Coeff& a, const Rational& s)
    {
        if (s.is_zero()) return Coeff{};
        Coeff c;
        for (const auto& [m, r] : a.terms_) c.terms_.emplace(m, r * s);
        return c;
    }
    friend Coeff operator*(const Rational& s, const Coeff& a) { return a * s; }
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

    friend bool operator==(const Coeff&, const Coeff&) = default;

    /// Gamma(a) = r * Gamma(f) with f the reduced argument (none for integers).
    static std::pair<Rational, GammaMonomial> reduce(const Rational& a)
    {
        if (a.is_positive_integer()) {
            if (a.num() <= kGammaReduceLimit)
                return {Rational(factorial(static_cast<unsigned long>(a.num()) - 1)), GammaMonomial{}};
            return {Rational(1), GammaMonomial::gamma_of(a)};
        }
        const BigInt fl = a.floor();
        if (fl > kGammaReduceLimit || fl < -kGammaReduceLimit) return {Rational(1), GammaMonomial::gamma_of(a)};
        const Rational f = a - Rational(fl);
        const long long n = static_cast<long long>(fl);
        Rational r(1);
        if (n >= 0) {
            for (long long j = 0; j < n; ++j) r *= f + Rational(j);
        } else {
            // Gamma(a) = Gamma(f) / (a (a+1) ... (f-1))
            Rational p(1);
            for (long long j = 0; j < -n; ++j) p *= a + Rational(j);
            r = p.reciprocal();
        }
        return {r, GammaMonomial::gamma_of(f)};
    }

private:
    void accumulate(const GammaMonomial& m, const Rational& r)
    {
        if (r.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, r);
        if (!inserted) {
            it->second += r;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static double rational_log_abs(const Rational& r)
    {
        return detail::big_log_abs(r.num()) - detail::big_log_abs(r.den());
    }

    Terms terms_;
};

} // namespace fracpow
