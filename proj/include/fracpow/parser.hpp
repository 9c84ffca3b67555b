#pragma once

// Input language for power expressions and orders.
//
//   expr     := sign? term (("+" | "-") term)*
//   term     := coeff? ("*"? "x" ("^" exponent)? ("/" uint)?)?     at least one of coeff, x
//   coeff    := uint ("." digits)? | uint "/" uint | "(" rational ")"
//   exponent := uint ("." digits)? | "(" rational ")"
//   rational := sign? uint ("." digits)? ("/" uint)?
//
// "-" may also be written as U+2212. Whitespace is ignored between tokens.

#include "fracpow/coefficient.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/power.hpp"
#include "fracpow/rational.hpp"

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace fracpow {

/// Largest numerator or denominator accepted in an exponent.
inline constexpr long long kMaxExponentPart = 1000000;

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    bool peek_digit() const { return !at_end() && s_[pos_] >= '0' && s_[pos_] <= '9'; }

    void skip_ws()
    {
        while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
    }

    bool eat(char c)
    {
        if (at_end() || s_[pos_] != c) return false;
        ++pos_;
        return true;
    }

    bool eat_minus()
    {
        if (eat('-')) return true;
        if (s_.substr(pos_, kUnicodeMinus.size()) == kUnicodeMinus) {
            pos_ += kUnicodeMinus.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& expected) const { fail_at(pos_, expected); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& expected) const
    {
        throw ParseError(at, expected, lexeme(at));
    }

    std::string lexeme(std::size_t at) const
    {
        if (at >= s_.size()) return {};
        const auto c = static_cast<unsigned char>(s_[at]);
        if (c >= 0x20 && c < 0x7f) return std::string(1, static_cast<char>(c));
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\x%02X", c);
        return buf;
    }

    BigInt uint(const char* what = "digit")
    {
        if (!peek_digit()) fail(what);
        const std::size_t start = pos_;
        while (peek_digit()) ++pos_;
        return digits_value(s_.substr(start, pos_ - start));
    }

    /// uint ("." digits)?, converted exactly.
    Rational decimal()
    {
        const BigInt whole = uint("number");
        if (peek() != '.') return Rational(whole);
        ++pos_;
        if (!peek_digit()) fail("digit after '.'");
        const std::size_t start = pos_;
        while (peek_digit()) ++pos_;
        const std::string frac(s_.substr(start, pos_ - start));
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return Rational(whole * scale + digits_value(frac), scale);
    }

    /// decimal, or uint "/" uint.
    Rational number()
    {
        const std::size_t start = pos_;
        Rational v = decimal();
        if (peek() == '/' && v.is_integer() && s_.substr(start, pos_ - start).find('.') == std::string_view::npos) {
            ++pos_;
            const std::size_t den_at = pos_;
            const BigInt den = uint("denominator");
            if (den == 0) fail_at(den_at, "nonzero denominator");
            v = Rational(v.num(), den);
        }
        return v;
    }

    Rational signed_number()
    {
        skip_ws();
        int sign = 1;
        if (eat('+')) {
        } else if (eat_minus()) {
            sign = -1;
        }
        skip_ws();
        const Rational v = number();
        return sign < 0 ? -v : v;
    }

    /// "(" rational ")"
    Rational parenthesized()
    {
        if (!eat('(')) fail("'('");
        const Rational v = signed_number();
        skip_ws();
        if (!eat(')')) fail("')'");
        return v;
    }

private:
    // cpp_int reads a leading 0 as an octal prefix
    static BigInt digits_value(std::string_view d)
    {
        const auto nz = d.find_first_not_of('0');
        return nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(d.substr(nz)));
    }

    static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
    std::string_view s_;
    std::size_t pos_ = 0;
};

inline Rational parse_exponent(Cursor& c)
{
    const std::size_t start = c.pos();
    Rational e;
    if (c.peek() == '(')
        e = c.parenthesized();
    else if (c.peek_digit())
        e = c.decimal();
    else
        c.fail("exponent");
    if (boost::multiprecision::abs(e.num()) > kMaxExponentPart || e.den() > kMaxExponentPart)
        c.fail_at(start, "exponent with numerator and denominator at most 10^6");
    return e;
}

inline PowerTerm parse_term(Cursor& c)
{
    c.skip_ws();
    Rational coeff(1);
    bool has_coeff = false;
    bool has_x = false;
    Rational exponent(0);

    if (c.peek_digit()) {
        coeff = c.number();
        has_coeff = true;
    } else if (c.peek() == '(') {
        coeff = c.parenthesized();
        has_coeff = true;
    }
    c.skip_ws();
    if (has_coeff && c.eat('*')) {
        c.skip_ws();
        if (c.peek() != 'x') c.fail("'x'");
    }
    if (c.eat('x')) {
        has_x = true;
        exponent = Rational(1);
        c.skip_ws();
        if (c.eat('^')) {
            c.skip_ws();
            exponent = parse_exponent(c);
        }
        c.skip_ws();
        if (c.eat('/')) {
            c.skip_ws();
            const std::size_t at = c.pos();
            const BigInt d = c.uint("divisor");
            if (d == 0) c.fail_at(at, "nonzero divisor");
            coeff = coeff / Rational(d);
        }
    }
    if (!has_coeff && !has_x) c.fail("term");
    return {Coeff(coeff), exponent};
}

} // namespace detail

inline PowerExpr parse_expr(std::string_view input)
{
    detail::Cursor c(input);
    std::vector<PowerTerm> terms;
    c.skip_ws();
    bool negative = false;
    if (c.eat('+')) {
    } else if (c.eat_minus()) {
        negative = true;
    }
    for (;;) {
        PowerTerm t = detail::parse_term(c);
        if (negative) t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        c.skip_ws();
        if (c.at_end()) break;
        if (c.eat('+'))
            negative = false;
        else if (c.eat_minus())
            negative = true;
        else
            c.fail("'+' or '-'");
    }
    return canonicalize(std::move(terms));
}

/// "n", "-n", "p/q", "-p/q", decimals, optionally parenthesized.
inline Rational parse_rational(std::string_view input)
{
    detail::Cursor c(input);
    c.skip_ws();
    Rational v;
    if (c.peek() == '(')
        v = c.parenthesized();
    else
        v = c.signed_number();
    c.skip_ws();
    if (!c.at_end()) c.fail("end of input");
    return v;
}

inline Rational parse_order(std::string_view input) { return parse_rational(input); }

} // namespace fracpow
