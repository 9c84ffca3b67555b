#pragma once

// Assignments of the arbitrary constants c_k (k <= -1) and the ratio test
// lim |k c_{k-1} / c_k| = 0 that makes an infinite constant series converge
// for every x > 0.

#include "fracpow/errors.hpp"
#include "fracpow/lanczos.hpp"
#include "fracpow/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace fracpow {

/// c_k = 0 outside the explicit entries.
struct NoTail {};
/// c_k = 1 / (|k|!)^2
struct InverseFactorialSquare {};
/// c_k = ratio^|k|
struct Geometric {
    double ratio;
};
/// c_k = values[|k| - 1], zero past the end.
struct TableTail {
    std::vector<double> values;
};

using TailRule = std::variant<NoTail, InverseFactorialSquare, Geometric, TableTail>;

/// |c_k| as a logarithm plus sign, so factorially small tails do not underflow.
struct CoeffValue {
    double log_abs = 0.0;
    int sign = 0;  // 0 means c_k == 0

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    static CoeffValue of(double v)
    {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v < 0 ? -1 : 1};
    }
};

class CoeffSequence {
public:
    CoeffSequence() = default;
    explicit CoeffSequence(TailRule tail) : tail_(std::move(tail)) { validate_tail(); }
    CoeffSequence(std::map<long long, double> explicit_values, TailRule tail = NoTail{})
        : explicit_(std::move(explicit_values)), tail_(std::move(tail))
    {
        for (const auto& [k, v] : explicit_) {
            if (k >= 0) throw std::invalid_argument("constant indices must be negative");
            if (!std::isfinite(v)) throw std::invalid_argument("constants must be finite");
        }
        validate_tail();
    }

    const std::map<long long, double>& explicit_values() const { return explicit_; }
    const TailRule& tail() const { return tail_; }

    CoeffValue at(long long k) const
    {
        if (auto it = explicit_.find(k); it != explicit_.end()) return CoeffValue::of(it->second);
        const long long n = -k;
        if (n <= 0) return {};
        struct {
            long long n;
            CoeffValue operator()(const NoTail&) const { return {}; }
            CoeffValue operator()(const InverseFactorialSquare&) const
            {
                return {-2.0 * lanczos::log_gamma_upper(static_cast<double>(n) + 1.0), 1};
            }
            CoeffValue operator()(const Geometric& g) const
            {
                if (g.ratio == 0.0) return {};
                return {static_cast<double>(n) * std::log(std::abs(g.ratio)), (g.ratio < 0 && n % 2 == 1) ? -1 : 1};
            }
            CoeffValue operator()(const TableTail& t) const
            {
                const auto idx = static_cast<std::size_t>(n - 1);
                return idx < t.values.size() ? CoeffValue::of(t.values[idx]) : CoeffValue{};
            }
        } visitor{n};
        return std::visit(visitor, tail_);
    }

    double value(long long k) const { return at(k).value(); }

    bool has_infinite_support() const
    {
        if (std::holds_alternative<InverseFactorialSquare>(tail_)) return true;
        if (const auto* g = std::get_if<Geometric>(&tail_)) return g->ratio != 0.0;
        return false;
    }

private:
    void validate_tail() const
    {
        if (const auto* g = std::get_if<Geometric>(&tail_); g && !std::isfinite(g->ratio))
            throw std::invalid_argument("geometric ratio must be finite");
        if (const auto* t = std::get_if<TableTail>(&tail_))
            for (double v : t->values)
                if (!std::isfinite(v)) throw std::invalid_argument("constants must be finite");
    }

    std::map<long long, double> explicit_;
    TailRule tail_ = NoTail{};
};

struct ConvergenceVerdict {
    bool passes = false;
    double estimated_limit = 0.0;
    std::pair<long long, long long> window{0, 0};  // (k_start, k_end)
    std::vector<double> estimates;                 // L_k for k = k_start down to k_end
};

inline constexpr double kConvergenceThreshold = 1e-6;
inline constexpr long long kDefaultConvergenceWindow = 200;

namespace detail {

// Neville extrapolation of the points (h_i, y_i) to h = 0.
inline double extrapolate_to_zero(std::vector<double> h, std::vector<double> y)
{
    const std::size_t n = y.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            y[i] = (h[i + level] * y[i] - h[i] * y[i + 1]) / (h[i + level] - h[i]);
    return y[0];
}

} // namespace detail

/// Estimates L_k = |k c_{k-1} / c_k| over k = -2 .. -window_end and
/// extrapolates the sequence in 1/|k| to |k| -> infinity. The order s does
/// not enter the criterion (|(k - s)/k| -> 1).
inline ConvergenceVerdict check_convergence(const CoeffSequence& seq, const Rational& /*s*/,
                                            long long window_end = kDefaultConvergenceWindow)
{
    ConvergenceVerdict verdict;
    if (!seq.has_infinite_support()) {
        verdict.passes = true;
        return verdict;
    }
    if (window_end < 16) throw std::invalid_argument("convergence window must reach k = -16");
    verdict.window = {-2, -window_end};
    for (long long n = 2; n <= window_end; ++n) {
        const long long k = -n;
        const CoeffValue ck = seq.at(k);
        const CoeffValue prev = seq.at(k - 1);
        if (ck.sign == 0) {
            if (prev.sign != 0) throw ZeroDenominatorInRatio(k);
            verdict.estimates.push_back(0.0);
            continue;
        }
        if (prev.sign == 0) {
            verdict.estimates.push_back(0.0);
            continue;
        }
        verdict.estimates.push_back(static_cast<double>(n) * std::exp(prev.log_abs - ck.log_abs));
    }

    const auto L = [&](long long n) { return verdict.estimates[static_cast<std::size_t>(n - 2)]; };
    bool decreasing = true;
    for (long long n = window_end / 2; n < window_end; ++n)
        if (!(L(n + 1) < L(n))) decreasing = false;

    std::vector<double> h;
    std::vector<double> y;
    for (long long n = window_end; n >= 2 && h.size() < 4; n /= 2) {
        h.push_back(1.0 / static_cast<double>(n));
        y.push_back(L(n));
    }
    const double limit = detail::extrapolate_to_zero(h, y);
    verdict.estimated_limit = std::isfinite(limit) ? std::abs(limit) : std::numeric_limits<double>::infinity();
    verdict.passes = decreasing && verdict.estimated_limit < kConvergenceThreshold;
    return verdict;
}

} // namespace fracpow
