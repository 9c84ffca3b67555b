// Repeated application of a fractional order against the direct order.
#include <fracpow/fracpow.hpp>

#include <iostream>

int main()
{
    using namespace fracpow;

    const PowerExpr f = parse_expr("x^3");
    const CompositionReport half = compose(f, Rational(1, 2), 2, Definition::Second);
    std::cout << "d^(1/2) d^(1/2) x^3\n" << render_text(half) << "\n\n";

    const CompositionReport third = compose(parse_expr("x^2"), Rational(-1, 3), 3, Definition::Second);
    std::cout << "(d^(-1/3))^3 x^2\n" << render_text(third) << "\n";
}
