#pragma once

#include "fracpow/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracpow {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected, std::string found)
        : Error("parse error at offset " + std::to_string(position) + ": expected " + expected + ", found " +
                (found.empty() ? std::string("end of input") : "'" + found + "'")),
          position_(position), expected_(std::move(expected)), found_(std::move(found))
    {
    }

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    std::size_t position_;
    std::string expected_;
    std::string found_;
};

/// Gamma(alpha + 1) sits at a pole while Gamma(alpha - s + 1) does not.
class UndefinedDerivative : public Error {
public:
    UndefinedDerivative(Rational order, Rational exponent)
        : Error("derivative of order " + order.str() + " of x^(" + exponent.str() +
                ") is undefined (Gamma(" + (exponent + Rational(1)).str() + ") is a pole)"),
          order_(std::move(order)), exponent_(std::move(exponent))
    {
    }
    const Rational& order() const { return order_; }
    const Rational& exponent() const { return exponent_; }

private:
    Rational order_;
    Rational exponent_;
};

class DifferentOrder : public Error {
public:
    DifferentOrder() : Error("results differ in order or definition") {}
};

class NonConvergentAssignment : public Error {
public:
    explicit NonConvergentAssignment(double estimate)
        : Error("constant sequence fails the convergence criterion (limit estimate " + std::to_string(estimate) + ")"),
          estimate_(estimate)
    {
    }
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

class ZeroDenominatorInRatio : public Error {
public:
    explicit ZeroDenominatorInRatio(long long k)
        : Error("c_" + std::to_string(k) + " is zero while c_" + std::to_string(k - 1) +
                " is not; convergence ratio undefined"),
          k_(k)
    {
    }
    long long index() const { return k_; }

private:
    long long k_;
};

class PoleUndefined : public Error {
public:
    using Error::Error;
};

/// Antiderivative of x^-1 requested.
class LogarithmicCase : public Error {
public:
    explicit LogarithmicCase(Rational exponent)
        : Error("antiderivative of x^(" + exponent.str() + ") is logarithmic"), exponent_(std::move(exponent))
    {
    }
    const Rational& exponent() const { return exponent_; }

private:
    Rational exponent_;
};

} // namespace fracpow
