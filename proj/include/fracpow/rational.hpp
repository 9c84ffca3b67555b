#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fracpow {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

// Correctly-rounded-enough conversion of a big integer to double; never throws,
// saturates to +-inf.
inline double big_to_double(const BigInt& v)
{
    if (v == 0) return 0.0;
    BigInt a = boost::multiprecision::abs(v);
    const auto bits = boost::multiprecision::msb(a) + 1;
    double r;
    if (bits <= 63) {
        r = static_cast<double>(static_cast<std::uint64_t>(a));
    } else {
        const auto shift = bits - 63;
        BigInt top = a >> shift;
        r = std::ldexp(static_cast<double>(static_cast<std::uint64_t>(top)), static_cast<int>(shift));
    }
    return v < 0 ? -r : r;
}

// log|v| for v != 0 without overflow.
inline double big_log_abs(const BigInt& v)
{
    BigInt a = boost::multiprecision::abs(v);
    const auto bits = boost::multiprecision::msb(a) + 1;
    if (bits <= 63) return std::log(static_cast<double>(static_cast<std::uint64_t>(a)));
    const auto shift = bits - 63;
    BigInt top = a >> shift;
    return std::log(static_cast<double>(static_cast<std::uint64_t>(top))) +
           static_cast<double>(shift) * std::log(2.0);
}

} // namespace detail

/// Exact rational number p/q, always in lowest terms with q > 0.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}                    // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)) {}            // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_nonpositive_integer() const { return den_ == 1 && num_ <= 0; }
    bool is_positive_integer() const { return den_ == 1 && num_ > 0; }
    bool is_half_integer() const { return den_ == 2; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    /// Largest integer <= *this.
    BigInt floor() const
    {
        BigInt q = num_ / den_;  // truncates toward zero
        if (num_ < 0 && q * den_ != num_) q -= 1;
        return q;
    }
    /// Integer part truncated toward zero.
    BigInt trunc() const { return num_ / den_; }
    /// *this - floor(*this), in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    Rational abs() const { return Rational(boost::multiprecision::abs(num_), den_); }
    Rational reciprocal() const
    {
        if (num_ == 0) throw std::domain_error("reciprocal of zero");
        return Rational(den_, num_);
    }

    double to_double() const
    {
        if (den_ == 1) return detail::big_to_double(num_);
        const auto nb = num_ == 0 ? 0u : boost::multiprecision::msb(boost::multiprecision::abs(num_)) + 1;
        const auto db = boost::multiprecision::msb(den_) + 1;
        if (nb <= 53 && db <= 53) return detail::big_to_double(num_) / detail::big_to_double(den_);
        // scale so the quotient keeps 64 significant bits
        const long long shift = static_cast<long long>(db) - static_cast<long long>(nb) + 64;
        BigInt scaled = shift >= 0 ? BigInt(num_ << static_cast<unsigned>(shift))
                                   : BigInt(num_ >> static_cast<unsigned>(-shift));
        BigInt q = scaled / den_;
        return std::ldexp(detail::big_to_double(q), static_cast<int>(-shift));
    }

    /// "p/q" or "p" when q == 1.
    std::string str() const
    {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }
    /// Always "p/q", the serialized form.
    std::string pq_str() const { return num_.str() + "/" + den_.str(); }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        if (a.den_ == b.den_) return Rational(a.num_ - b.num_, a.den_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0) throw std::domain_error("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const BigInt l = a.num_ * b.den_;
        const BigInt r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    struct raw_tag {};
    Rational(BigInt n, BigInt d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize()
    {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_ = 0;
    BigInt den_ = 1;
};

inline BigInt factorial(unsigned long n)
{
    BigInt r = 1;
    for (unsigned long i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Fits in a long long? Used where loop bounds derive from a rational.
inline bool fits_ll(const BigInt& v)
{
    return v >= BigInt(std::numeric_limits<long long>::min() / 2) &&
           v <= BigInt(std::numeric_limits<long long>::max() / 2);
}

} // namespace fracpow

template <>
struct std::hash<fracpow::Rational> {
    std::size_t operator()(const fracpow::Rational& r) const noexcept
    {
        return std::hash<std::string>{}(r.pq_str());
    }
};
