#pragma once

// Double-precision real gamma. Lanczos sum with g = 607/128 and 15 terms
// (Godfrey's coefficient set), reflection for arguments below 1/2.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracpow::lanczos {

inline constexpr double g = 607.0 / 128.0;

inline constexpr std::array<double, 15> coefficients = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

inline double series(double x)
{
    double sum = 0.0;
    for (std::size_t i = coefficients.size() - 1; i > 0; --i) sum += coefficients[i] / (x + static_cast<double>(i));
    return sum + coefficients[0];
}

/// sin(pi x) with exact zeros at integers and reduced argument.
inline double sinpi(double x)
{
    double r = std::fmod(x, 2.0);  // (-2, 2)
    if (r < 0) r += 2.0;           // [0, 2)
    double sign = 1.0;
    if (r >= 1.0) {
        r -= 1.0;
        sign = -1.0;
    }
    if (r == 0.0) return 0.0;
    if (r > 0.5) r = 1.0 - r;
    return sign * std::sin(std::numbers::pi * r);
}

/// Gamma for x >= 1/2.
inline double gamma_upper(double x)
{
    const double tmp = x + g + 0.5;
    const double sum = series(x);
    if (x > 140.0) {
        // split the power so intermediate values stay finite
        const double half = std::pow(tmp, 0.5 * (x + 0.5));
        return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-tmp)) * (sum / x);
    }
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(tmp, x + 0.5) * std::exp(-tmp) * sum / x;
}

/// log Gamma for x >= 1/2.
inline double log_gamma_upper(double x)
{
    const double tmp = x + g + 0.5;
    return (x + 0.5) * std::log(tmp) - tmp + 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series(x) / x);
}

/// Gamma(x) for real x; +-inf at the poles. `sin_pi_x` may supply an exactly
/// reduced sin(pi x) for x < 1/2.
inline double gamma(double x, double sin_pi_x)
{
    if (x >= 0.5) return gamma_upper(x);
    if (sin_pi_x == 0.0) return std::numeric_limits<double>::infinity();
    return std::numbers::pi / (sin_pi_x * gamma_upper(1.0 - x));
}

inline double gamma(double x) { return gamma(x, x < 0.5 ? sinpi(x) : 1.0); }

/// log|Gamma(x)|; +inf at the poles.
inline double log_abs_gamma(double x, double sin_pi_x)
{
    if (x >= 0.5) return log_gamma_upper(x);
    if (sin_pi_x == 0.0) return std::numeric_limits<double>::infinity();
    return std::log(std::numbers::pi) - std::log(std::abs(sin_pi_x)) - log_gamma_upper(1.0 - x);
}

inline double log_abs_gamma(double x) { return log_abs_gamma(x, x < 0.5 ? sinpi(x) : 1.0); }

} // namespace fracpow::lanczos
